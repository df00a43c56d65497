#pragma once

#include "gpmap/genotype.hpp"
#include "gpmap/phenotype.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace gpmap {

inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

struct EnumerationSpec {
  ChromosomeParams params;
  /// Closed form: CGP prod_j |G| * r_j^2, LGP (|G| * c * (c+n)^2)^L. Saturates at UINT64_MAX.
  std::uint64_t predicted_space_size = 0;
};

EnumerationSpec make_enumeration_spec(const ChromosomeParams& params);

/// Bijection between [0, size) and the genotypes of a parameter set. Digits are the genotype
/// fields in order, the first gate's function being the most significant.
class GenotypeSpace {
public:
  explicit GenotypeSpace(const ChromosomeParams& params);

  std::uint64_t size() const noexcept { return size_; }
  Genotype decode(std::uint64_t index) const;
  void decode_into(std::uint64_t index, Genotype& g) const;
  std::uint64_t encode(const Genotype& g) const;

private:
  struct Digit {
    int lo;
    int radix;
  };

  ChromosomeParams params_;
  std::vector<Digit> digits_;
  std::uint64_t size_ = 1;
};

/// Streams every genotype once in index order. Throws ResourceError when the space exceeds `cap`.
void enumerate_space(const EnumerationSpec& spec, const std::function<void(const Genotype&)>& visit,
                     std::uint64_t cap = kDefaultEnumerationCap);

struct PhenotypeExact {
  Phenotype phenotype;
  std::uint64_t count = 0;
  /// Mean genotype robustness over the neutral set; empty for unrepresented phenotypes.
  std::optional<double> robustness;
  /// Distinct non-self phenotypes adjacent to the neutral set; empty for unrepresented phenotypes.
  std::optional<std::size_t> evolvability;
  /// Connected components of the neutral set under single mutations, when requested.
  std::optional<std::size_t> components;
  std::optional<std::uint64_t> largest_component;
};

struct ExactMapSummary {
  ChromosomeParams params;
  std::uint64_t space_size = 0;
  std::size_t neighbors_per_genotype = 0;
  /// One entry per phenotype, indexed by phenotype value (zero counts included).
  std::vector<PhenotypeExact> phenotypes;

  const PhenotypeExact& at(const Phenotype& p) const { return phenotypes.at(static_cast<std::size_t>(p.value())); }
};

struct SummaryOptions {
  bool components = false;
  std::uint64_t cap = kDefaultEnumerationCap;
  unsigned workers = 1;
};

/// Exact redundancy, robustness, evolvability and (optionally) neutral components for every
/// phenotype of a small space (n <= 4). Workers take contiguous index ranges; partial results
/// merge exactly.
ExactMapSummary exact_map_summary(const EnumerationSpec& spec, const SummaryOptions& options = {});

}  // namespace gpmap

#pragma once

#include "gpmap/evolution.hpp"
#include "gpmap/genotype.hpp"
#include "gpmap/phenotype.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace gpmap {

/// Samples are drawn in fixed-size chunks; chunk c always uses sub-stream c of the sampling domain.
inline constexpr std::uint64_t kSampleChunk = std::uint64_t{1} << 16;

/// Subset of chunks handled by one process: chunk c belongs to shard (c mod count).
struct Shard {
  std::uint64_t index = 0;
  std::uint64_t count = 1;
};

struct RedundancyTable {
  ChromosomeParams params;
  std::uint64_t seed = 0;
  std::uint64_t total_samples = 0;
  std::map<Phenotype, std::uint64_t> counts;

  std::uint64_t count(const Phenotype& p) const;
  /// Adds counts and totals. Throws ValidationError when parameters or seeds differ.
  void merge(const RedundancyTable& other);
};

/// Maps `n_samples` uniform random genotypes and counts phenotypes.
RedundancyTable sample_redundancy(const ChromosomeParams& params, std::uint64_t n_samples, std::uint64_t seed,
                                  unsigned workers = 1, Shard shard = {});

struct RankEntry {
  std::size_t rank = 0;
  Phenotype phenotype;
  std::uint64_t count = 0;
  double log10_redundancy = 0.0;
};

struct RankTable {
  std::vector<RankEntry> entries;
  /// Phenotypes never sampled; known exactly for n <= 5.
  std::optional<std::uint64_t> unrepresented;
};

/// Represented phenotypes by descending count, ties by ascending phenotype value.
RankTable rank_table(const RedundancyTable& table);

struct NeighborhoodSummary {
  std::size_t neighbors = 0;
  std::size_t neutral = 0;
  /// Distinct phenotypes among non-neutral neighbours.
  std::size_t distinct_other = 0;

  std::size_t non_neutral() const noexcept { return neighbors - neutral; }
  /// Non-neutral neighbours that repeat an already-seen phenotype.
  std::size_t duplicates() const noexcept { return non_neutral() - distinct_other; }
};

NeighborhoodSummary summarize_neighborhood(const Genotype& g, const GateSet& gates);

/// Fraction of the exact 1-neighbourhood that keeps the phenotype. Throws ValidationError with no mutable loci.
double genotype_robustness(const Genotype& g, const GateSet& gates);

/// Distinct phenotypes other than phenotype(g) in the exact 1-neighbourhood (plus one when
/// `include_self` and some neighbour is neutral).
std::size_t genotype_evolvability(const Genotype& g, const GateSet& gates, bool include_self = false);

enum class SourceKind { Evolution, Sampling };

std::string_view to_string(SourceKind kind) noexcept;
SourceKind parse_source_kind(std::string_view text);

/// How genotypes mapping to a phenotype are found.
struct SourceSpec {
  SourceKind kind = SourceKind::Evolution;
  /// Genotypes wanted.
  std::size_t k = 600;
  /// Evolution: step limit of each of the k epochal runs. Sampling: total random genotypes drawn.
  std::uint64_t budget = 200'000;
  /// Evolution only: neutral-walk steps taken after a run reaches the target. The first hit sits on
  /// the rim of the neutral network; drifting spreads the sample uniformly over its component.
  std::uint64_t neutral_steps = 10'000;
};

struct GenotypeSample {
  Phenotype target;
  SourceKind kind = SourceKind::Evolution;
  std::size_t requested = 0;
  std::vector<Genotype> genotypes;
  /// Mutation steps (evolution) or genotypes drawn (sampling).
  std::uint64_t work = 0;

  bool complete() const noexcept { return genotypes.size() >= requested; }
};

/// Evolution: k independent epochal runs toward `target`, keeping the final genotype of each
/// successful run after its neutral drift. Sampling: uniform draws filtered on `target` until k are found or the budget
/// is spent. Deterministic in `seed`, independent of `workers`.
GenotypeSample find_genotypes(const Phenotype& target, const ChromosomeParams& params, const SourceSpec& spec,
                              std::uint64_t seed, unsigned workers = 1);

template <typename T>
struct Estimate {
  T value{};
  std::size_t k_found = 0;
  std::size_t k_requested = 0;
  SourceKind source = SourceKind::Evolution;

  bool complete() const noexcept { return k_found >= k_requested; }
};

/// Mean genotype robustness; NaN for an empty list.
double mean_robustness(std::span<const Genotype> genotypes, const GateSet& gates);

/// Distinct phenotypes in the union of the genotypes' 1-neighbourhoods, excluding `focal`
/// unless `include_self`.
std::size_t neighborhood_union_size(std::span<const Genotype> genotypes, const GateSet& gates, const Phenotype& focal,
                                    bool include_self = false);

Estimate<double> robustness_estimate(const GenotypeSample& sample, const GateSet& gates);
Estimate<std::size_t> evolvability_estimate(const GenotypeSample& sample, const GateSet& gates, bool include_self = false);

/// Mean robustness over genotypes found for `p`. Throws PartialResultError when fewer than k are found.
Estimate<double> phenotype_robustness(const Phenotype& p, const ChromosomeParams& params, const SourceSpec& spec,
                                      std::uint64_t seed, unsigned workers = 1);

/// Size of the neighbourhood union over genotypes found for `p`. Throws PartialResultError when fewer than k are found.
Estimate<std::size_t> phenotype_evolvability(const Phenotype& p, const ChromosomeParams& params, const SourceSpec& spec,
                                             std::uint64_t seed, unsigned workers = 1, bool include_self = false);

/// Stable per-phenotype key used to derive sub-streams.
std::uint64_t phenotype_stream_key(const Phenotype& p) noexcept;

}  // namespace gpmap

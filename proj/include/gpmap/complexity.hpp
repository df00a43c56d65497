#pragma once

#include "gpmap/evaluate.hpp"
#include "gpmap/metrics.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gpmap {

/// Entropy in bits of the column distribution of the selected rows: each of the 2^n columns is
/// one state, p_i = multiplicity / 2^n. An empty selection has a single state and entropy 0.
double matrix_entropy(const GateStateMatrix& x, std::span<const std::size_t> rows);
/// Entropy of the whole matrix.
double matrix_entropy(const GateStateMatrix& x);

/// H(a) + H(b) - H(a u b). Throws ValidationError when `a` and `b` share a row.
double mutual_information(std::span<const std::size_t> a, std::span<const std::size_t> b, const GateStateMatrix& x);

/// Memoized entropies of row subsets of one matrix (at most 64 rows), keyed by bitmask.
class SubsetEntropyCache {
public:
  explicit SubsetEntropyCache(const GateStateMatrix& x);

  std::size_t row_count() const noexcept { return rows_; }
  double entropy(std::uint64_t mask);

private:
  double compute(std::uint64_t mask) const;

  std::size_t rows_ = 0;
  std::size_t columns_ = 0;
  /// Column c as an M-bit code, row i at bit i.
  std::vector<std::uint64_t> codes_;
  std::vector<double> dense_;
  std::vector<bool> known_;
};

/// Largest gate count for which every subset is enumerated.
inline constexpr std::size_t kExactTononiMaxGates = 24;

struct TononiOptions {
  /// CGP: rows of gates the output depends on; LGP: effective instructions.
  bool active_only = false;
  /// Above the exact bound, estimate each cardinality term from random subsets instead of failing.
  bool allow_sampling = false;
  std::size_t samples_per_k = 256;
  std::uint64_t seed = 0;
};

struct TononiResult {
  /// (1/2) * sum over k = 1..M of the per-k terms, in bits.
  double complexity = 0.0;
  /// per_k_terms[k-1]: mean over all k-row subsets S of MI(S; X - S).
  std::vector<double> per_k_terms;
  std::size_t gate_count = 0;
  /// True when the per-k means were estimated from sampled subsets.
  bool approximate = false;
};

/// Complexity of a gate-state matrix. A one-row matrix has complexity 0 (its complement is empty).
/// Throws ResourceError above kExactTononiMaxGates rows unless sampling is allowed.
TononiResult tononi_complexity(const GateStateMatrix& x, const TononiOptions& options = {});
TononiResult tononi_complexity(const Genotype& g, const GateSet& gates, const TononiOptions& options = {});

/// Mean circuit complexity over the given genotypes; NaN for an empty list.
double mean_tononi(std::span<const Genotype> genotypes, const GateSet& gates, const TononiOptions& options = {});

Estimate<double> tononi_estimate(const GenotypeSample& sample, const GateSet& gates, const TononiOptions& options = {});

/// Mean complexity over genotypes found for `p`. Throws PartialResultError when fewer than k are found.
Estimate<double> tononi_complexity_phenotype(const Phenotype& p, const ChromosomeParams& params, const SourceSpec& spec,
                                             std::uint64_t seed, unsigned workers = 1,
                                             const TononiOptions& options = {});

struct KolmogorovOptions {
  /// Random restarts per gate count once a space is too large to enumerate.
  int attempts = 20;
  /// Step limit of each restart.
  std::uint64_t step_budget = 200'000;
  /// Gate-count spaces up to this many genotypes are searched exhaustively.
  std::uint64_t exhaustive_limit = 100'000'000;
  /// Give up above this gate count.
  int max_gates = 12;
  /// CGP: use levels_back = m for an m-gate search (any previous node). When false the
  /// configured levels back is kept, clamped to m.
  bool unrestricted_levels_back = true;
  std::uint64_t seed = 0;
};

struct KolmogorovResult {
  int value = 0;
  /// True when every gate count below `value` was ruled out by exhaustive search.
  bool exact = false;
  int attempts_per_size = 0;
  std::uint64_t step_budget = 0;
  /// A `value`-gate circuit computing the phenotype.
  Genotype witness;
};

/// Minimum gate count of a circuit computing `p` under the representation of `params` (its gate
/// count is ignored). Throws NotFoundError when nothing is found up to max_gates.
KolmogorovResult kolmogorov_complexity(const Phenotype& p, const ChromosomeParams& params,
                                       const KolmogorovOptions& options = {});

/// Kolmogorov complexity of every n-input phenotype (n <= 4), indexed by phenotype value, sharing one
/// exhaustive enumeration per gate count. Entries stay empty when nothing is found up to max_gates.
std::vector<std::optional<KolmogorovResult>> kolmogorov_table(const ChromosomeParams& params,
                                                              const KolmogorovOptions& options = {},
                                                              unsigned workers = 1);

/// Number of genotypes with `gates` gates under the Kolmogorov search rules; saturates at UINT64_MAX.
std::uint64_t kolmogorov_space_size(const ChromosomeParams& params, int gates, bool unrestricted_levels_back);

}  // namespace gpmap

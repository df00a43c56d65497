#include "gpmap/complexity.hpp"

#include "gpmap/error.hpp"
#include "gpmap/parallel.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

namespace gpmap {

namespace {

// H = log2(N) - (1/N) * sum c log2 c over state multiplicities c.
template <typename It>
double entropy_of_sorted(It first, It last) {
  const auto total = static_cast<double>(std::distance(first, last));
  if (total == 0) return 0.0;
  double acc = 0.0;
  while (first != last) {
    auto run_end = std::find_if(first, last, [&](const auto& v) { return !(v == *first); });
    const auto c = static_cast<double>(std::distance(first, run_end));
    acc += c * std::log2(c);
    first = run_end;
  }
  return std::log2(total) - acc / total;
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

constexpr std::size_t kDenseCacheMaxRows = 20;

}  // namespace

double matrix_entropy(const GateStateMatrix& x, std::span<const std::size_t> rows) {
  if (rows.empty()) return 0.0;
  const std::size_t columns = x.column_count();
  const std::size_t words = (rows.size() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> keys(columns, std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = x.rows.at(rows[i]);
    for (std::size_t c = 0; c < columns; ++c) {
      if (row.test(c)) keys[c][i / 64] |= std::uint64_t{1} << (i % 64);
    }
  }
  std::sort(keys.begin(), keys.end());
  return entropy_of_sorted(keys.begin(), keys.end());
}

double matrix_entropy(const GateStateMatrix& x) {
  std::vector<std::size_t> all(x.gate_count());
  std::iota(all.begin(), all.end(), 0);
  return matrix_entropy(x, all);
}

double mutual_information(std::span<const std::size_t> a, std::span<const std::size_t> b, const GateStateMatrix& x) {
  std::vector<std::size_t> both(a.begin(), a.end());
  both.insert(both.end(), b.begin(), b.end());
  std::sort(both.begin(), both.end());
  if (std::adjacent_find(both.begin(), both.end()) != both.end()) {
    throw ValidationError("mutual information needs disjoint row sets");
  }
  return matrix_entropy(x, a) + matrix_entropy(x, b) - matrix_entropy(x, both);
}

SubsetEntropyCache::SubsetEntropyCache(const GateStateMatrix& x) : rows_(x.gate_count()), columns_(x.column_count()) {
  if (rows_ > 64) throw ResourceError("subset entropy cache supports at most 64 rows");
  codes_.assign(columns_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < columns_; ++c) {
      if (x.rows[r].test(c)) codes_[c] |= std::uint64_t{1} << r;
    }
  }
  if (rows_ <= kDenseCacheMaxRows) {
    dense_.assign(std::size_t{1} << rows_, 0.0);
    known_.assign(std::size_t{1} << rows_, false);
  }
}

double SubsetEntropyCache::entropy(std::uint64_t mask) {
  if (dense_.empty()) return compute(mask);
  const auto i = static_cast<std::size_t>(mask);
  if (!known_[i]) {
    dense_[i] = compute(mask);
    known_[i] = true;
  }
  return dense_[i];
}

double SubsetEntropyCache::compute(std::uint64_t mask) const {
  std::array<std::uint64_t, std::size_t{1} << kMaxInputs> states{};
  for (std::size_t c = 0; c < columns_; ++c) states[c] = codes_[c] & mask;
  std::sort(states.begin(), states.begin() + static_cast<std::ptrdiff_t>(columns_));
  return entropy_of_sorted(states.begin(), states.begin() + static_cast<std::ptrdiff_t>(columns_));
}

TononiResult tononi_complexity(const GateStateMatrix& x, const TononiOptions& options) {
  const std::size_t m = x.gate_count();
  TononiResult result;
  result.gate_count = m;
  result.per_k_terms.assign(m, 0.0);
  if (m <= 1) return result;

  if (m <= kExactTononiMaxGates) {
    SubsetEntropyCache cache(x);
    const std::uint64_t full = (std::uint64_t{1} << m) - 1;
    const double h_all = cache.entropy(full);
    std::vector<double> sums(m + 1, 0.0);
    for (std::uint64_t s = 1; s <= full; ++s) {
      const double mi = cache.entropy(s) + cache.entropy(full & ~s) - h_all;
      sums[static_cast<std::size_t>(std::popcount(s))] += mi;
    }
    for (std::size_t k = 1; k <= m; ++k) result.per_k_terms[k - 1] = sums[k] / binomial(m, k);
  } else {
    if (!options.allow_sampling) {
      throw ResourceError("Tononi complexity of " + std::to_string(m) + " gates exceeds the exact bound of " +
                          std::to_string(kExactTononiMaxGates) + "; enable subset sampling");
    }
    result.approximate = true;
    Rng rng{options.seed};
    std::vector<std::size_t> order(m);
    const double h_all = matrix_entropy(x);
    for (std::size_t k = 1; k < m; ++k) {
      double acc = 0.0;
      for (std::size_t s = 0; s < options.samples_per_k; ++s) {
        std::iota(order.begin(), order.end(), 0);
        for (std::size_t i = 0; i < k; ++i) {
          const auto j = static_cast<std::size_t>(uniform_int(rng, static_cast<int>(i), static_cast<int>(m - 1)));
          std::swap(order[i], order[j]);
        }
        const std::span<const std::size_t> part(order.data(), k);
        const std::span<const std::size_t> rest(order.data() + k, m - k);
        acc += matrix_entropy(x, part) + matrix_entropy(x, rest) - h_all;
      }
      result.per_k_terms[k - 1] = acc / static_cast<double>(options.samples_per_k);
    }
  }
  result.complexity = 0.5 * std::accumulate(result.per_k_terms.begin(), result.per_k_terms.end(), 0.0);
  return result;
}

TononiResult tononi_complexity(const Genotype& g, const GateSet& gates, const TononiOptions& options) {
  const auto eval = evaluate(g, gates);
  if (!options.active_only) return tononi_complexity(eval.states, options);
  const auto active = active_gates(g);
  return tononi_complexity(select_rows(eval.states, active), options);
}

double mean_tononi(std::span<const Genotype> genotypes, const GateSet& gates, const TononiOptions& options) {
  if (genotypes.empty()) return std::numeric_limits<double>::quiet_NaN();
  double sum = 0.0;
  for (const auto& g : genotypes) sum += tononi_complexity(g, gates, options).complexity;
  return sum / static_cast<double>(genotypes.size());
}

Estimate<double> tononi_estimate(const GenotypeSample& sample, const GateSet& gates, const TononiOptions& options) {
  return {mean_tononi(sample.genotypes, gates, options), sample.genotypes.size(), sample.requested, sample.kind};
}

Estimate<double> tononi_complexity_phenotype(const Phenotype& p, const ChromosomeParams& params, const SourceSpec& spec,
                                             std::uint64_t seed, unsigned workers, const TononiOptions& options) {
  const auto sample = find_genotypes(p, params, spec, seed, workers);
  if (!sample.complete()) {
    throw PartialResultError("Tononi complexity: found " + std::to_string(sample.genotypes.size()) + " of " +
                                 std::to_string(sample.requested) + " genotypes for " + p.to_hex(),
                             sample.genotypes.size(), sample.requested);
  }
  return tononi_estimate(sample, params.gate_set, options);
}

}  // namespace gpmap

#pragma once

#include "gpmap/evaluate.hpp"
#include "gpmap/genotype.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace gpmap::test_support {

// Entropy straight from column strings; shares nothing with the library's cache.
inline double column_entropy(const GateStateMatrix& x, const std::vector<std::size_t>& rows) {
  std::map<std::vector<bool>, int> states;
  const std::size_t cols = x.column_count();
  for (std::size_t c = 0; c < cols; ++c) {
    std::vector<bool> s;
    for (auto r : rows) s.push_back(x.rows[r].test(c));
    ++states[s];
  }
  double h = 0.0;
  for (const auto& [s, count] : states) {
    const double p = static_cast<double>(count) / static_cast<double>(cols);
    h -= p * std::log2(p);
  }
  return h;
}

inline double subset_mi(const GateStateMatrix& x, const std::vector<std::size_t>& part) {
  std::vector<std::size_t> rest, all(x.gate_count());
  std::iota(all.begin(), all.end(), std::size_t{0});
  for (auto r : all) {
    if (std::find(part.begin(), part.end(), r) == part.end()) rest.push_back(r);
  }
  return column_entropy(x, part) + column_entropy(x, rest) - column_entropy(x, all);
}

template <typename F>
void for_each_subset(std::size_t m, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Sum over k = 1..M/2 of the mean bipartition MI; for even M the k = M/2 term counts every
// bipartition twice, so it is halved.
inline double tononi_left_form(const GateStateMatrix& x) {
  const std::size_t m = x.gate_count();
  double total = 0.0;
  for (std::size_t k = 1; k <= m / 2; ++k) {
    double sum = 0.0;
    std::size_t n = 0;
    for_each_subset(m, k, [&](const std::vector<std::size_t>& s) {
      sum += subset_mi(x, s);
      ++n;
    });
    const double term = sum / static_cast<double>(n);
    total += (2 * k == m) ? term / 2.0 : term;
  }
  return total;
}

// One instruction per gate into a fresh register, then a copy of the output gate into register 1.
inline LgpGenotype translate_to_lgp(const CgpGenotype& g) {
  const int gates = static_cast<int>(g.nodes.size());
  LgpGenotype l;
  l.n_inputs = g.n_inputs;
  l.n_calc_registers = gates + 1;
  auto reg = [&](int node) { return node <= g.n_inputs ? l.n_calc_registers + node : node - g.n_inputs + 1; };
  for (int j = 0; j < gates; ++j) {
    const auto& node = g.nodes[static_cast<std::size_t>(j)];
    l.instructions.push_back({node.function, j + 2, reg(node.in1), reg(node.in2)});
  }
  l.instructions.push_back({Gate::Or, 1, gates + 1, gates + 1});
  return l;
}

// Pearson chi-square goodness of fit at the 99% level. Categories with zero probability must be empty.
inline bool chi_square_fits(const std::vector<double>& observed, const std::vector<double>& probabilities,
                            double* statistic = nullptr) {
  const double total = std::accumulate(observed.begin(), observed.end(), 0.0);
  double chi2 = 0.0;
  int df = -1;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (probabilities[i] == 0.0) {
      if (observed[i] != 0.0) return false;
      continue;
    }
    const double e = total * probabilities[i];
    chi2 += (observed[i] - e) * (observed[i] - e) / e;
    ++df;
  }
  if (statistic) *statistic = chi2;
  if (df < 1) return true;
  const boost::math::chi_squared dist(df);
  return chi2 <= boost::math::quantile(dist, 0.99);
}

}  // namespace gpmap::test_support

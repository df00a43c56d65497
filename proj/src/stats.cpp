#include "gpmap/stats.hpp"

#include "gpmap/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gpmap {

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("correlation columns differ in length");
  if (x.size() < 3) throw ValidationError("correlation needs at least 3 points");
}

}  // namespace

double mean(std::span<const double> v) {
  if (v.empty()) return std::nan("");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw ValidationError("correlation undefined for a constant column");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

Correlation correlate(std::span<const double> x, std::span<const double> y) {
  return {pearson(x, y), spearman(x, y), x.size()};
}

Histogram histogram(std::span<const double> values, std::size_t bins, double lo, double hi) {
  if (values.empty()) throw ValidationError("histogram of an empty column");
  if (bins == 0) throw ValidationError("histogram needs at least one bin");
  Histogram h{lo, hi, std::vector<double>(bins), std::vector<double>(bins, 0.0)};
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) h.centers[b] = lo + (static_cast<double>(b) + 0.5) * width;
  for (double v : values) {
    std::size_t b = 0;
    if (width > 0.0) {
      const double pos = std::floor((v - lo) / width);
      b = pos <= 0.0 ? 0 : std::min(bins - 1, static_cast<std::size_t>(pos));
    }
    h.density[b] += 1.0;
  }
  for (auto& d : h.density) d /= static_cast<double>(values.size());
  return h;
}

Histogram histogram(std::span<const double> values, std::size_t bins) {
  if (values.empty()) throw ValidationError("histogram of an empty column");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return histogram(values, bins, *lo, *hi);
}

DingleFit dingle_fit(std::span<const double> kolmogorov, std::span<const double> frequency) {
  if (kolmogorov.size() != frequency.size()) throw ValidationError("fit columns differ in length");
  std::vector<double> k, logp;
  for (std::size_t i = 0; i < frequency.size(); ++i) {
    if (frequency[i] > 0.0) {
      k.push_back(kolmogorov[i]);
      logp.push_back(std::log2(frequency[i]));
    }
  }
  if (k.size() < 3) throw ValidationError("fit needs at least 3 represented points");
  const double mk = mean(k);
  const double mp = mean(logp);
  double skp = 0.0, skk = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    skp += (k[i] - mk) * (logp[i] - mp);
    skk += (k[i] - mk) * (k[i] - mk);
  }
  if (skk == 0.0) throw ValidationError("fit undefined for constant complexity");
  DingleFit fit;
  fit.slope = skp / skk;
  fit.intercept = mp - fit.slope * mk;
  fit.spearman = spearman(logp, k);
  fit.n_points = k.size();
  return fit;
}

}  // namespace gpmap

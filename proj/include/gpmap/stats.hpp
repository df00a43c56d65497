#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gpmap {

/// Throws ValidationError when fewer than 3 points, lengths differ, or either column is constant.
double pearson(std::span<const double> x, std::span<const double> y);
/// Pearson over tie-averaged ranks.
double spearman(std::span<const double> x, std::span<const double> y);

/// 1-based ranks; tied values share their mean rank.
std::vector<double> average_ranks(std::span<const double> v);

struct Correlation {
  double pearson = 0.0;
  double spearman = 0.0;
  std::size_t n = 0;
};

Correlation correlate(std::span<const double> x, std::span<const double> y);

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> centers;
  /// Fraction of the values in each bin; sums to 1.
  std::vector<double> density;
};

/// Equal-width bins over [min, max], the last bin closed. A constant column puts everything in
/// the first bin. Throws ValidationError for an empty column or zero bins.
Histogram histogram(std::span<const double> values, std::size_t bins);
/// Same, over a fixed range (values outside are clamped into the end bins).
Histogram histogram(std::span<const double> values, std::size_t bins, double lo, double hi);

double mean(std::span<const double> v);

/// Least-squares fit log2 P = slope * K + intercept over points with P > 0.
struct DingleFit {
  double slope = 0.0;
  double intercept = 0.0;
  double spearman = 0.0;
  std::size_t n_points = 0;
};

/// `frequency` holds sampled frequencies (counts or fractions); zeros are dropped.
DingleFit dingle_fit(std::span<const double> kolmogorov, std::span<const double> frequency);

}  // namespace gpmap

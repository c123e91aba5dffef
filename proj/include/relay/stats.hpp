#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace relay::stats {

/// Pairwise summation in index order; deterministic for a given input sequence.
double pairwise_sum(std::span<const double> values);

double mean(std::span<const double> values);
/// Unbiased (n - 1) sample variance, two-pass.
double variance(std::span<const double> values);
double skewness(std::span<const double> values);
/// Excess kurtosis (normal = 0), population moments.
double excess_kurtosis(std::span<const double> values);

/// Two-sample Kolmogorov-Smirnov distance sup_x |F_a(x) - F_b(x)|.
double ks_distance(std::span<const double> a, std::span<const double> b);

struct Histogram {
  double origin = 0.0;
  double bin_width = 0.1;
  std::vector<std::size_t> counts;

  double bin_lo(std::size_t i) const noexcept { return origin + bin_width * static_cast<double>(i); }
  double bin_hi(std::size_t i) const noexcept { return bin_lo(i + 1); }
};

/// Fixed-width histogram on a grid aligned to integer multiples of bin_width that
/// covers [lo, hi]. All samples must lie inside.
Histogram histogram(std::span<const double> samples, double lo, double hi, double bin_width);

}  // namespace relay::stats

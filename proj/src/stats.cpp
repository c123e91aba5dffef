#include "relay/stats.hpp"

#include <algorithm>
#include <cmath>

#include "relay/error.hpp"

namespace relay::stats {

namespace {

constexpr std::size_t kPairwiseBlock = 64;

void require_nonempty(std::span<const double> values, const char* what) {
  if (values.empty()) throw ParameterError(std::string(what) + ": empty sample");
}

double central_moment(std::span<const double> values, double centre, int order) {
  std::vector<double> powered(values.size());
  std::transform(values.begin(), values.end(), powered.begin(),
                 [&](double v) { return std::pow(v - centre, order); });
  return pairwise_sum(powered) / static_cast<double>(values.size());
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= kPairwiseBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double mean(std::span<const double> values) {
  require_nonempty(values, "mean");
  return pairwise_sum(values) / static_cast<double>(values.size());
}

double variance(std::span<const double> values) {
  if (values.size() < 2) throw ParameterError("variance: need at least two samples");
  const double mu = mean(values);
  return central_moment(values, mu, 2) * static_cast<double>(values.size()) /
         static_cast<double>(values.size() - 1);
}

double skewness(std::span<const double> values) {
  require_nonempty(values, "skewness");
  const double mu = mean(values);
  const double m2 = central_moment(values, mu, 2);
  if (m2 == 0.0) return 0.0;
  return central_moment(values, mu, 3) / std::pow(m2, 1.5);
}

double excess_kurtosis(std::span<const double> values) {
  require_nonempty(values, "excess_kurtosis");
  const double mu = mean(values);
  const double m2 = central_moment(values, mu, 2);
  if (m2 == 0.0) return 0.0;
  return central_moment(values, mu, 4) / (m2 * m2) - 3.0;
}

double ks_distance(std::span<const double> a, std::span<const double> b) {
  require_nonempty(a, "ks_distance");
  require_nonempty(b, "ks_distance");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());

  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double worst = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] <= x) ++i;
    while (j < sb.size() && sb[j] <= x) ++j;
    worst = std::max(worst, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return worst;
}

Histogram histogram(std::span<const double> samples, double lo, double hi, double bin_width) {
  if (!(bin_width > 0.0)) throw ParameterError("histogram: bin width must be positive");
  if (!(hi >= lo)) throw ParameterError("histogram: hi < lo");
  Histogram h;
  h.bin_width = bin_width;
  h.origin = std::floor(lo / bin_width) * bin_width;
  const auto n_bins = static_cast<std::size_t>(std::floor((hi - h.origin) / bin_width)) + 1;
  h.counts.assign(n_bins, 0);
  for (double v : samples) {
    if (!(v >= lo && v <= hi)) throw ParameterError("histogram: sample outside [lo, hi]");
    auto idx = static_cast<std::size_t>(std::floor((v - h.origin) / bin_width));
    h.counts[std::min(idx, n_bins - 1)] += 1;
  }
  return h;
}

}  // namespace relay::stats

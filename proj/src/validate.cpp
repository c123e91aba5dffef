#include "relay/validate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "relay/kernels.hpp"
#include "relay/outage.hpp"
#include "relay/stats.hpp"
#include "relay/wishart_analytics.hpp"

namespace relay {

namespace {

constexpr double kSandwichSlack = 1e-9;

// Q(x) by composite Simpson over [x, 12]; the tail past 12 is below 1e-32.
double q_by_simpson(double x) {
  constexpr int kIntervals = 20'000;
  const double a = x;
  const double b = std::max(12.0, x + 1.0);
  const double h = (b - a) / kIntervals;
  auto pdf = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi); };
  double s = pdf(a) + pdf(b);
  for (int i = 1; i < kIntervals; ++i) s += pdf(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return s * h / 3.0;
}

CheckResult check_q_function(const std::function<double(double)>& q) {
  double worst = 0.0;
  double worst_x = 0.0;
  for (double x : {-8.0, -3.0, -1.0, 0.0, 0.5, 1.0, 1.6449, 3.0, 5.0, 8.0}) {
    const double err = std::abs(q(x) - q_by_simpson(x));
    if (err > worst) {
      worst = err;
      worst_x = x;
    }
  }
  constexpr double kThreshold = 1e-10;
  return {"q-function", worst, kThreshold, worst <= kThreshold,
          fmt::format("max |Q - simpson| at x = {}", worst_x)};
}

CheckResult check_sandwich(std::uint64_t seed, std::size_t n) {
  std::size_t violations = 0;
  double worst = 0.0;
  const double pairs[][2] = {{10.0, 1.0}, {1.0, 10.0}, {100.0, 0.1}};
  for (std::size_t p = 0; p < std::size(pairs); ++p) {
    const double eta = pairs[p][0];
    const double rho = pairs[p][1];
    for (std::size_t i = 0; i < n; ++i) {
      StreamRng rng(seed, streams::id(streams::Purpose::Validation, p), i);
      const ComplexMat w = receive_gram(sample_channel(2, 2, rng));
      const ComplexMat w_rsi = receive_gram(sample_channel(2, 2, rng));
      const double exact =
          log2det_cholesky(ComplexMat::Identity(2, 2) + eta * w + rho * w_rsi);
      const auto b = fiedler_bounds(hermitian_spectrum(w_rsi), hermitian_spectrum(w), eta, rho);
      const double excess = std::max(b.lower - exact, exact - b.upper);
      worst = std::max(worst, excess);
      if (excess > kSandwichSlack) ++violations;
    }
  }
  return {"sandwich-bound", static_cast<double>(violations), 0.0, violations == 0,
          fmt::format("{} pairs x 3 (eta, rho) settings, worst excess {:.3e} bits", n, worst)};
}

CheckResult check_normalization() {
  double worst = 0.0;
  for (int m = 1; m <= 8; ++m) {
    for (int p = m; p <= 12; ++p) {
      worst = std::max(worst, std::abs(density_normalization({m, p}) - 1.0));
    }
  }
  constexpr double kThreshold = 1e-6;
  return {"density-normalization", worst, kThreshold, worst <= kThreshold,
          "max |integral - 1| over m <= 8, p <= 12"};
}

CheckResult check_siso(std::uint64_t seed, std::size_t n) {
  constexpr double kSnr = 100.0;
  NetworkConfig cfg{{HopConfig::from_db(1, 1, 20.0)}, DuplexMode::HalfDuplex};
  std::vector<double> rates;
  for (int i = 1; i <= 10; ++i) rates.push_back(0.5 * i);
  const auto min_mi = kernels::parallel::network_min_mi(cfg.hops, cfg.mode, n, seed);
  const auto curve = outage_curve_from_min_mi(min_mi, rates);

  double worst_z = 0.0;
  for (const auto& pt : curve.points) {
    const double exact = -std::expm1(-(std::exp2(2.0 * pt.rate) - 1.0) / kSnr);
    const double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(n));
    const double z = se > 0.0 ? std::abs(pt.probability - exact) / se : 0.0;
    worst_z = std::max(worst_z, z);
  }
  return {"siso-rayleigh-oracle", worst_z, 3.0, worst_z <= 3.0,
          fmt::format("max |MC - closed form| in binomial SEs over 10 rates, n = {}", n)};
}

CheckResult check_quadrature_vs_mc(std::uint64_t seed, std::size_t n) {
  double worst_ratio = 0.0;
  std::string where;
  std::uint64_t stream = 100;
  for (int m : {1, 2, 4}) {
    for (int p : {m, m + 2}) {
      for (double scale : {1.0, 10.0, 100.0}) {
        const auto hop = HopConfig::from_linear(p, m, scale, 0.0, 1);
        const auto samples = kernels::parallel::hop_samples(
            hop, DuplexMode::FullDuplex, kernels::SampleKind::Exact, n, seed,
            streams::id(streams::Purpose::Validation, stream++));
        const auto mc = HopMoments::from_samples(samples);
        const double quad = expected_logdet({m, p}, scale);
        const double allowed = std::max(0.01 * std::abs(quad), 3.0 * mc.std_error_mean);
        const double ratio = std::abs(mc.mean - quad) / allowed;
        if (ratio > worst_ratio) {
          worst_ratio = ratio;
          where = fmt::format("m={} p={} scale={}", m, p, scale);
        }
      }
    }
  }
  return {"quadrature-vs-mc", worst_ratio, 1.0, worst_ratio <= 1.0,
          fmt::format("max |MC - quadrature| / max(1%, 3 SE), worst at {}", where)};
}

CheckResult check_moments(std::uint64_t seed, std::size_t n) {
  const auto hop = HopConfig::from_db(2, 2, 20.0);
  const auto m = estimate_hop_moments(hop, DuplexMode::FullDuplex, n, seed);
  const double quad = expected_logdet({2, 2}, hop.eta());
  const double z = std::abs(m.mean - quad) / m.std_error_mean;
  return {"moments-vs-quadrature", z, 3.0, z <= 3.0,
          fmt::format("2x2 FD without RSI at 20 dB: mean {:.6f} vs {:.6f} bits", m.mean, quad)};
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
  const auto& q = options.q_function ? options.q_function
                                     : std::function<double(double)>(q_function);
  const std::size_t n = options.samples;
  std::vector<CheckResult> results;
  results.push_back(check_q_function(q));
  results.push_back(check_sandwich(options.seed, n));
  results.push_back(check_normalization());
  results.push_back(check_siso(options.seed, n));
  results.push_back(check_quadrature_vs_mc(options.seed, std::max<std::size_t>(n / 5, 1000)));
  results.push_back(check_moments(options.seed, n));
  return results;
}

}  // namespace relay

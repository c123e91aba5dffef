#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "relay/error.hpp"
#include "relay/outage.hpp"

using namespace relay;

namespace {

// Upper normal tail by composite Simpson on [x, 12].
double q_simpson(double x) {
  constexpr int n = 20'000;
  const double h = (12.0 - x) / n;
  auto pdf = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi); };
  double s = pdf(x) + pdf(12.0);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * pdf(x + i * h);
  return s * h / 3.0;
}

// Closed-form outage of a half-duplex SISO Rayleigh hop: Pr{0.5 log2(1 + snr |h|^2) < R}.
double siso_hd_outage(double snr, double rate) {
  return -std::expm1(-(std::exp2(2.0 * rate) - 1.0) / snr);
}

NetworkConfig siso_hd_chain(std::vector<double> snr_db) {
  NetworkConfig cfg;
  cfg.mode = DuplexMode::HalfDuplex;
  for (double s : snr_db) cfg.hops.push_back(HopConfig::from_db(1, 1, s));
  return cfg;
}

HopMoments moments(double mean, double variance) {
  HopMoments m;
  m.mean = mean;
  m.variance = variance;
  return m;
}

}  // namespace

TEST_SUITE("outage") {

TEST_CASE("q_function examples") {
  CHECK(q_function(0.0) == 0.5);
  CHECK(std::abs(q_function(-8.0) - 1.0) < 1e-12);
  CHECK(q_function(8.0) < 1e-14);
  CHECK(std::abs(q_function(1.6449) - q_simpson(1.6449)) < 1e-10);
  for (double x : {-3.0, -0.7, 0.3, 2.5, 5.0}) {
    CHECK(std::abs(q_function(x) - q_simpson(x)) < 1e-10);
    CHECK(q_function(x) + q_function(-x) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("hop_outage examples") {
  CHECK(hop_outage(moments(6.0, 2.0), 6.0).probability == doctest::Approx(0.5));
  // Rate one standard deviation above the mean: Pr{I < R} = Phi(1).
  CHECK(hop_outage(moments(4.0, 1.0), 5.0).probability ==
        doctest::Approx(0.8413447460685429).epsilon(1e-12));
  CHECK(hop_outage(moments(4.0, 1.0), 3.0).probability ==
        doctest::Approx(0.15865525393145707).epsilon(1e-12));

  const auto below = hop_outage(moments(3.0, 0.0), 2.0);
  CHECK(below.degenerate);
  CHECK(below.probability == 0.0);
  CHECK(hop_outage(moments(3.0, 0.0), 3.5).probability == 1.0);
  CHECK_FALSE(hop_outage(moments(3.0, 0.1), 3.5).degenerate);
}

TEST_CASE("network_outage_analytical combines hops as independent failures") {
  auto cfg = siso_hd_chain({20.0, 20.0, 20.0});
  // Each hop has outage 0.1 at R = 0 when mean / sigma = Q^{-1}(0.1).
  const double z = 1.2815515655446004;
  const std::vector<HopMoments> m(3, moments(z, 1.0));
  CHECK(network_outage_analytical(cfg, m, 0.0) ==
        doctest::Approx(1.0 - 0.9 * 0.9 * 0.9).epsilon(1e-9));

  auto one = siso_hd_chain({20.0});
  const std::vector<HopMoments> m1{moments(5.0, 4.0)};
  CHECK(network_outage_analytical(one, m1, 6.0) == hop_outage(m1[0], 6.0).probability);

  CHECK_THROWS_AS(network_outage_analytical(cfg, m1, 1.0), ShapeError);
}

TEST_CASE("network_outage_analytical at the median of identical hops") {
  // With K + 1 identical hops, the network outage is 1/2 where each hop's success is 0.5^{1/3}.
  auto cfg = siso_hd_chain({20.0, 20.0, 20.0});
  const std::vector<HopMoments> m(3, moments(7.0, 2.25));
  const double p_hop = 1.0 - std::pow(0.5, 1.0 / 3.0);
  // Bisection on the library Q for the rate with hop outage p_hop.
  double lo = 0.0;
  double hi = 14.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (hop_outage(m[0], mid).probability < p_hop ? lo : hi) = mid;
  }
  CHECK(network_outage_analytical(cfg, m, lo) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("network_outage_montecarlo limits") {
  const auto cfg = siso_hd_chain({20.0, 20.0});
  CHECK(network_outage_montecarlo(cfg, 0.0, 2'000, 1).probability == 0.0);
  CHECK(network_outage_montecarlo(cfg, 1000.0, 2'000, 1).probability == 1.0);
  CHECK_THROWS_AS(network_outage_montecarlo(cfg, 1.0, 999, 1), ParameterError);
}

TEST_CASE("Monte Carlo matches the SISO Rayleigh closed form") {
  const auto cfg = siso_hd_chain({20.0});
  for (double r : {0.5, 1.5, 2.5, 3.5}) {
    CAPTURE(r);
    const auto est = network_outage_montecarlo(cfg, r, 100'000, 2);
    const double truth = siso_hd_outage(100.0, r);
    const double se = std::sqrt(truth * (1.0 - truth) / 100'000.0);
    CHECK(std::abs(est.probability - truth) <= 3.0 * se);
  }
}

TEST_CASE("Monte Carlo over a SISO chain matches the product of closed-form hops") {
  const auto cfg = siso_hd_chain({20.0, 15.0, 25.0});
  for (double r : {1.0, 2.0, 3.0}) {
    CAPTURE(r);
    double success = 1.0;
    for (double s : {20.0, 15.0, 25.0}) success *= 1.0 - siso_hd_outage(std::pow(10.0, s / 10.0), r);
    const double truth = 1.0 - success;
    const auto est = network_outage_montecarlo(cfg, r, 100'000, 3);
    const double se = std::sqrt(truth * (1.0 - truth) / 100'000.0);
    CHECK(std::abs(est.probability - truth) <= 3.0 * se);
  }
}

TEST_CASE("property: Monte Carlo is unbiased across seeds") {
  const auto cfg = siso_hd_chain({20.0});
  const double r = 2.0;
  const double truth = siso_hd_outage(100.0, r);
  constexpr int seeds = 40;
  constexpr std::size_t n = 5'000;
  double total = 0.0;
  for (int s = 0; s < seeds; ++s) {
    total += network_outage_montecarlo(cfg, r, n, 100 + static_cast<std::uint64_t>(s)).probability;
  }
  const double se = std::sqrt(truth * (1.0 - truth) / (seeds * static_cast<double>(n)));
  CHECK(std::abs(total / seeds - truth) <= 3.0 * se);
}

TEST_CASE("RSI-free full duplex outage at R equals half duplex outage at R / 2") {
  NetworkConfig fd;
  fd.mode = DuplexMode::FullDuplex;
  fd.hops = {HopConfig::from_db(2, 2, 20.0)};
  NetworkConfig hd = fd;
  hd.mode = DuplexMode::HalfDuplex;
  const auto grid = make_rate_grid(0.0, 12.0, 0.5);
  std::vector<double> half(grid);
  for (double& r : half) r *= 0.5;
  const SamplingParams sp{1'000, 20'000, 7};
  const auto a = build_outage_curve(fd, grid, OutageMethod::MonteCarlo, sp);
  const auto b = build_outage_curve(hd, half, OutageMethod::MonteCarlo, sp);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::abs(a.points[i].probability - b.points[i].probability) <= 1.0 / 20'000.0);
  }
}

TEST_CASE("property: outage curves are monotone in rate and bounded") {
  NetworkConfig cfg;
  cfg.mode = DuplexMode::FullDuplex;
  cfg.hops = {HopConfig::from_db(2, 2, 20.0, 10.0, 2), HopConfig::from_db(2, 2, 20.0)};
  const auto grid = make_rate_grid(0.0, 14.0, 0.25);
  const SamplingParams sp{5'000, 5'000, 11};
  for (auto method : {OutageMethod::Analytical, OutageMethod::MonteCarlo}) {
    const auto curve = build_outage_curve(cfg, grid, method, sp);
    CHECK(curve.method == method);
    REQUIRE(curve.points.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(curve.points[i].probability >= 0.0);
      CHECK(curve.points[i].probability <= 1.0);
      if (i > 0) CHECK(curve.points[i].probability >= curve.points[i - 1].probability);
    }
  }
}

TEST_CASE("outage_curve_from_min_mi counts strictly-below realizations") {
  const std::vector<double> mi{1.0, 2.0, 2.0, 3.0};
  const std::vector<double> rates{0.5, 2.0, 2.5, 4.0};
  const auto c = outage_curve_from_min_mi(mi, rates);
  CHECK(c.points[0].probability == 0.0);
  CHECK(c.points[1].probability == 0.25);
  CHECK(c.points[2].probability == 0.75);
  CHECK(c.points[3].probability == 1.0);
  CHECK(c.points[1].std_error == doctest::Approx(std::sqrt(0.25 * 0.75 / 4.0)));

  const std::vector<double> bad{1.0, 1.0};
  CHECK_THROWS_AS(outage_curve_from_min_mi(mi, bad), ParameterError);
}

TEST_CASE("make_rate_grid") {
  const auto g = make_rate_grid(0.0, 14.0, 0.25);
  CHECK(g.size() == 57);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 14.0);
  CHECK(make_rate_grid(0.0, 1.0, 0.3).size() == 4);
  CHECK(make_rate_grid(2.0, 2.0, 1.0).size() == 1);
  CHECK_THROWS_AS(make_rate_grid(-1.0, 2.0, 0.5), ParameterError);
  CHECK_THROWS_AS(make_rate_grid(0.0, 2.0, 0.0), ParameterError);
  CHECK_THROWS_AS(make_rate_grid(3.0, 2.0, 0.5), ParameterError);
}

TEST_CASE("NetworkConfig validation") {
  NetworkConfig cfg;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);

  cfg.hops = {HopConfig::from_db(2, 2, 20.0, 8.0, 3), HopConfig::from_db(2, 2, 20.0)};
  CHECK_THROWS_AS(cfg.validate(), ParameterError);

  cfg.hops = {HopConfig::from_db(2, 2, 20.0, 8.0, 2), HopConfig::from_db(2, 2, 20.0, 8.0, 2)};
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  CHECK_NOTHROW(cfg.validate(true));

  cfg.mode = DuplexMode::HalfDuplex;
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("build_outage_curve rejects too few realizations") {
  const auto cfg = siso_hd_chain({20.0});
  const std::vector<double> grid{1.0};
  CHECK_THROWS_AS(build_outage_curve(cfg, grid, OutageMethod::MonteCarlo, {1'000, 500, 1}),
                  ParameterError);
}

}

#include "relay/outage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "relay/error.hpp"
#include "relay/kernels.hpp"

namespace relay {

namespace {

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

void require_rates(std::span<const double> rates) {
  if (rates.empty()) throw ParameterError("rate grid is empty");
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (!std::isfinite(rates[i])) throw ParameterError("rate grid contains a non-finite value");
    if (i > 0 && !(rates[i] > rates[i - 1])) {
      throw ParameterError("rate grid must be strictly ascending");
    }
  }
}

}  // namespace

void NetworkConfig::validate(bool allow_final_rsi) const {
  if (hops.empty()) throw ParameterError("network needs at least one hop");
  for (std::size_t k = 0; k + 1 < hops.size(); ++k) {
    if (hops[k].has_rsi() && hops[k].rsi_tx_antennas() != hops[k + 1].tx_antennas()) {
      throw ParameterError(fmt::format(
          "hop {}: rsi_tx_antennas ({}) must equal tx_antennas of hop {} ({})", k + 1,
          hops[k].rsi_tx_antennas(), k + 2, hops[k + 1].tx_antennas()));
    }
  }
  if (!allow_final_rsi && mode == DuplexMode::FullDuplex && hops.back().has_rsi()) {
    throw ParameterError(fmt::format(
        "hop {} ends at the destination and cannot carry RSI unless allow_final_rsi is set",
        hops.size()));
  }
}

std::string_view to_string(OutageMethod method) noexcept {
  return method == OutageMethod::Analytical ? "analytical" : "montecarlo";
}

double q_function(double x) noexcept { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

HopOutage hop_outage(const HopMoments& moments, double rate) {
  if (!(moments.variance > 0.0)) {
    return {rate < moments.mean ? 0.0 : 1.0, true};
  }
  // Pr{I < R} = Q((mean - R) / sigma); evaluated directly to keep the lower tail accurate.
  const double z = (moments.mean - rate) / std::sqrt(moments.variance);
  return {clamp_probability(q_function(z)), false};
}

double network_outage_analytical(const NetworkConfig& cfg, std::span<const HopMoments> moments,
                                 double rate) {
  if (moments.size() != cfg.hops.size()) {
    throw ShapeError(fmt::format("expected {} hop moments, got {}", cfg.hops.size(),
                                 moments.size()));
  }
  double success = 1.0;
  for (const auto& m : moments) success *= 1.0 - hop_outage(m, rate).probability;
  return clamp_probability(1.0 - success);
}

std::vector<HopMoments> estimate_network_moments(const NetworkConfig& cfg, std::size_t n_samples,
                                                 std::uint64_t seed) {
  std::vector<HopMoments> out;
  out.reserve(cfg.hops.size());
  for (std::size_t k = 0; k < cfg.hops.size(); ++k) {
    out.push_back(estimate_hop_moments(cfg.hops[k], cfg.mode, n_samples, seed, k));
  }
  return out;
}

MonteCarloEstimate network_outage_montecarlo(const NetworkConfig& cfg, double rate,
                                             std::size_t n_realizations, std::uint64_t seed) {
  if (n_realizations < kMinRealizations) {
    throw ParameterError(fmt::format("n_realizations must be >= {} (got {})", kMinRealizations,
                                     n_realizations));
  }
  const auto min_mi = kernels::parallel::network_min_mi(cfg.hops, cfg.mode, n_realizations, seed);
  const std::vector<double> grid{rate};
  const auto curve = outage_curve_from_min_mi(min_mi, grid);
  return {curve.points.front().probability, curve.points.front().std_error};
}

OutageCurve outage_curve_from_min_mi(std::span<const double> min_mi, std::span<const double> rates) {
  require_rates(rates);
  if (min_mi.empty()) throw ParameterError("no realizations");
  std::vector<double> sorted(min_mi.begin(), min_mi.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());

  OutageCurve curve{OutageMethod::MonteCarlo, {}};
  curve.points.reserve(rates.size());
  for (double r : rates) {
    // Outage when the weakest hop is strictly below the rate.
    const auto below = std::lower_bound(sorted.begin(), sorted.end(), r) - sorted.begin();
    const double p = static_cast<double>(below) / n;
    curve.points.push_back({r, p, std::sqrt(p * (1.0 - p) / n)});
  }
  return curve;
}

OutageCurve outage_curve_from_moments(const NetworkConfig& cfg, std::span<const HopMoments> moments,
                                      std::span<const double> rates) {
  require_rates(rates);
  OutageCurve curve{OutageMethod::Analytical, {}};
  curve.points.reserve(rates.size());
  for (double r : rates) curve.points.push_back({r, network_outage_analytical(cfg, moments, r), 0.0});
  return curve;
}

OutageCurve build_outage_curve(const NetworkConfig& cfg, std::span<const double> rates,
                               OutageMethod method, const SamplingParams& sampling) {
  require_rates(rates);
  if (method == OutageMethod::Analytical) {
    const auto moments = estimate_network_moments(cfg, sampling.n_moment_samples, sampling.seed);
    return outage_curve_from_moments(cfg, moments, rates);
  }
  if (sampling.n_mc_realizations < kMinRealizations) {
    throw ParameterError(fmt::format("n_realizations must be >= {} (got {})", kMinRealizations,
                                     sampling.n_mc_realizations));
  }
  const auto min_mi = kernels::parallel::network_min_mi(cfg.hops, cfg.mode,
                                                        sampling.n_mc_realizations, sampling.seed);
  return outage_curve_from_min_mi(min_mi, rates);
}

std::vector<double> make_rate_grid(double start, double stop, double step) {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
    throw ParameterError("rate grid bounds must be finite");
  }
  if (start < 0.0) throw ParameterError("rate grid start must be >= 0");
  if (!(step > 0.0)) throw ParameterError("rate grid step must be > 0");
  if (stop < start) throw ParameterError("rate grid stop must be >= start");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = start + step * static_cast<double>(i);
  return grid;
}

}  // namespace relay

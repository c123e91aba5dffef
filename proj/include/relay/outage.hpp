#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "relay/mutual_info.hpp"

namespace relay {

/// Source -> K relays -> destination: K + 1 hops, hop k received at T_k.
struct NetworkConfig {
  std::vector<HopConfig> hops;
  DuplexMode mode = DuplexMode::FullDuplex;

  /// Throws ParameterError when the chain is empty, when hop k's interfering
  /// transmitter does not match hop k+1's transmitter, or when the final hop has RSI
  /// and `allow_final_rsi` is false (the destination only receives).
  void validate(bool allow_final_rsi = false) const;
};

enum class OutageMethod { Analytical, MonteCarlo };

std::string_view to_string(OutageMethod method) noexcept;

struct OutagePoint {
  double rate = 0.0;         // bits/s/Hz
  double probability = 0.0;  // in [0, 1]
  double std_error = 0.0;    // binomial SE; 0 for the analytical method
};

struct OutageCurve {
  OutageMethod method = OutageMethod::Analytical;
  std::vector<OutagePoint> points;
};

struct SamplingParams {
  std::size_t n_moment_samples = 10'000;
  std::size_t n_mc_realizations = 10'000;
  std::uint64_t seed = 1;
};

/// Minimum realization count accepted by the Monte Carlo estimator.
inline constexpr std::size_t kMinRealizations = 1000;

/// Upper standard-normal tail, 0.5 erfc(x / sqrt 2).
double q_function(double x) noexcept;

struct HopOutage {
  double probability = 0.0;
  bool degenerate = false;  // zero variance: step function at the mean
};

/// Pr{I < R} under the Gaussian approximation: Q((mean - R) / sigma) = 1 - Q((R - mean) / sigma).
HopOutage hop_outage(const HopMoments& moments, double rate);

/// 1 - prod_k (1 - hop_outage_k(R)) over every hop of the chain.
double network_outage_analytical(const NetworkConfig& cfg, std::span<const HopMoments> moments,
                                 double rate);

/// Per-hop Gaussian moments, hop k on stream (seed, id(Moments, k)).
std::vector<HopMoments> estimate_network_moments(const NetworkConfig& cfg, std::size_t n_samples,
                                                 std::uint64_t seed);

struct MonteCarloEstimate {
  double probability = 0.0;
  double std_error = 0.0;
};

/// Fraction of realizations whose weakest hop (exact MI) falls below `rate`.
MonteCarloEstimate network_outage_montecarlo(const NetworkConfig& cfg, double rate,
                                             std::size_t n_realizations, std::uint64_t seed);

/// Empirical outage over a rate grid from precomputed per-realization minimum MI.
/// Every grid point shares the same realizations, so the curve is exactly monotone.
OutageCurve outage_curve_from_min_mi(std::span<const double> min_mi, std::span<const double> rates);

OutageCurve outage_curve_from_moments(const NetworkConfig& cfg, std::span<const HopMoments> moments,
                                      std::span<const double> rates);

/// Sweep driver. Analytical: moments estimated once per hop and reused over the grid.
/// Monte Carlo: one batch of realizations scored against every grid rate.
OutageCurve build_outage_curve(const NetworkConfig& cfg, std::span<const double> rates,
                               OutageMethod method, const SamplingParams& sampling);

/// start, start + step, ... up to stop (inclusive, 1e-9 step slack).
std::vector<double> make_rate_grid(double start, double stop, double step);

}  // namespace relay

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "relay/outage.hpp"
#include "relay/scenario.hpp"
#include "relay/stats.hpp"

namespace relay {

/// Shortest round-trip decimal form ("%.17g" trimmed); CSV numbers use this.
std::string format_number(double value);

struct OutageRun {
  std::vector<HopMoments> moments;
  OutageCurve analytical;
  OutageCurve montecarlo;

  /// max_R |analytical(R) - montecarlo(R)|.
  double max_abs_gap() const;
};

OutageRun run_outage(const Scenario& scenario);

/// `#` header block (run parameters, per-hop linear powers and moments) followed by
/// rate,analytical_outage,mc_outage,mc_std_error rows.
std::string outage_csv(const Scenario& scenario, const OutageRun& run);

/// gnuplot script plotting the two curves of `csv_filename` on a log scale.
std::string outage_gnuplot(const Scenario& scenario, const std::string& csv_filename);

struct DistributionRun {
  EtaRho pair;
  std::size_t n_samples = 0;
  double ks_distance = 0.0;            // exact vs midpoint log-det
  double exact_skewness = 0.0;         // of log2 det(I + eta W + rho Wb)
  double exact_excess_kurtosis = 0.0;
  double approx_mi_skewness = 0.0;     // of midpoint - Lambda
  double approx_mi_excess_kurtosis = 0.0;
  stats::Histogram exact;
  stats::Histogram midpoint;
};

/// Runs one study per (eta, rho) pair in the scenario (or the hop's own pair).
/// Pair i draws from stream (seed, streams::id(Distribution, i)).
std::vector<DistributionRun> run_distribution(const Scenario& scenario);
DistributionRun run_distribution_pair(const HopConfig& hop, std::size_t n_samples, double bin_width,
                                      std::uint64_t seed, std::uint64_t pair_index);

std::string distribution_csv(const Scenario& scenario, const DistributionRun& run);

}  // namespace relay

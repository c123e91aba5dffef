#include "relay/report.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include <fmt/format.h>

#include "relay/error.hpp"
#include "relay/kernels.hpp"

namespace relay {

namespace {

void append_hops(std::string& out, const Scenario& sc) {
  for (std::size_t k = 0; k < sc.network.hops.size(); ++k) {
    const auto& hop = sc.network.hops[k];
    fmt::format_to(std::back_inserter(out),
                   "# hop {}: tx_antennas={} rx_antennas={} snr_db={} eta={} rsi_snr_db={} "
                   "rsi_tx_antennas={} rho={}\n",
                   k + 1, hop.tx_antennas(), hop.rx_antennas(), format_number(hop.snr_db()),
                   format_number(hop.eta()),
                   hop.rsi_snr_db() ? format_number(*hop.rsi_snr_db()) : std::string("none"),
                   hop.rsi_tx_antennas(), format_number(hop.rho()));
  }
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw SolverError(fmt::format("non-finite {} in result", what));
}

}  // namespace

std::string format_number(double value) { return fmt::format("{}", value); }

double OutageRun::max_abs_gap() const {
  double gap = 0.0;
  for (std::size_t i = 0; i < analytical.points.size() && i < montecarlo.points.size(); ++i) {
    gap = std::max(gap, std::abs(analytical.points[i].probability -
                                 montecarlo.points[i].probability));
  }
  return gap;
}

OutageRun run_outage(const Scenario& scenario) {
  const auto rates = scenario.rates.grid();
  OutageRun run;
  run.moments = estimate_network_moments(scenario.network, scenario.sampling.n_moment_samples,
                                         scenario.sampling.seed);
  run.analytical = outage_curve_from_moments(scenario.network, run.moments, rates);
  run.montecarlo =
      build_outage_curve(scenario.network, rates, OutageMethod::MonteCarlo, scenario.sampling);
  for (const auto& m : run.moments) {
    require_finite(m.mean, "hop mean");
    require_finite(m.variance, "hop variance");
  }
  return run;
}

std::string outage_csv(const Scenario& scenario, const OutageRun& run) {
  std::string out;
  auto it = std::back_inserter(out);
  fmt::format_to(it, "# relay-outage {} outage\n", RELAY_OUTAGE_VERSION);
  fmt::format_to(it, "# scenario = {}\n", scenario.name);
  fmt::format_to(it, "# mode = {}\n", to_string(scenario.network.mode));
  fmt::format_to(it, "# hops = {}\n", scenario.network.hops.size());
  fmt::format_to(it, "# allow_final_rsi = {}\n", scenario.allow_final_rsi);
  fmt::format_to(it, "# seed = {}\n", scenario.sampling.seed);
  fmt::format_to(it, "# moment_samples = {}\n", scenario.sampling.n_moment_samples);
  fmt::format_to(it, "# mc_realizations = {}\n", scenario.sampling.n_mc_realizations);
  fmt::format_to(it, "# rates = {}:{}:{}\n", format_number(scenario.rates.start),
                 format_number(scenario.rates.step), format_number(scenario.rates.stop));
  append_hops(out, scenario);
  for (std::size_t k = 0; k < run.moments.size(); ++k) {
    const auto& m = run.moments[k];
    fmt::format_to(it, "# hop {} moments: mean={} variance={} std_error_mean={}\n", k + 1,
                   format_number(m.mean), format_number(m.variance),
                   format_number(m.std_error_mean));
  }
  fmt::format_to(it, "# max_abs_gap = {}\n", format_number(run.max_abs_gap()));
  out += "rate,analytical_outage,mc_outage,mc_std_error\n";

  if (run.analytical.points.size() != run.montecarlo.points.size()) {
    throw ShapeError("analytical and Monte Carlo curves differ in length");
  }
  for (std::size_t i = 0; i < run.analytical.points.size(); ++i) {
    const auto& a = run.analytical.points[i];
    const auto& m = run.montecarlo.points[i];
    require_finite(a.probability, "analytical outage");
    require_finite(m.probability, "Monte Carlo outage");
    fmt::format_to(it, "{},{},{},{}\n", format_number(a.rate), format_number(a.probability),
                   format_number(m.probability), format_number(m.std_error));
  }
  return out;
}

std::string outage_gnuplot(const Scenario& scenario, const std::string& csv_filename) {
  return fmt::format(
      "# gnuplot script for {0}\n"
      "set datafile separator ','\n"
      "set datafile commentschars '#'\n"
      "set logscale y\n"
      "set yrange [1e-4:1]\n"
      "set xlabel 'Rate R (bits/s/Hz)'\n"
      "set ylabel 'Outage probability'\n"
      "set key left top\n"
      "set title '{0} ({1})'\n"
      "plot '{2}' every ::1 using 1:2 with lines title 'analytical', \\\n"
      "     '{2}' every ::1 using 1:3 with points pt 7 title 'Monte Carlo'\n",
      scenario.name, to_string(scenario.network.mode), csv_filename);
}

DistributionRun run_distribution_pair(const HopConfig& hop, std::size_t n_samples, double bin_width,
                                      std::uint64_t seed, std::uint64_t pair_index) {
  const auto samples = kernels::parallel::logdet_samples(
      hop, n_samples, seed, streams::id(streams::Purpose::Distribution, pair_index));

  std::vector<double> exact(samples.size());
  std::vector<double> midpoint(samples.size());
  std::vector<double> approx_mi(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    exact[i] = samples[i].exact;
    midpoint[i] = samples[i].midpoint;
    approx_mi[i] = samples[i].midpoint - samples[i].lambda;
  }

  DistributionRun run;
  run.pair = {hop.eta(), hop.rho()};
  run.n_samples = n_samples;
  run.ks_distance = stats::ks_distance(exact, midpoint);
  run.exact_skewness = stats::skewness(exact);
  run.exact_excess_kurtosis = stats::excess_kurtosis(exact);
  run.approx_mi_skewness = stats::skewness(approx_mi);
  run.approx_mi_excess_kurtosis = stats::excess_kurtosis(approx_mi);

  const auto [emin, emax] = std::minmax_element(exact.begin(), exact.end());
  const auto [mmin, mmax] = std::minmax_element(midpoint.begin(), midpoint.end());
  const double lo = std::min(*emin, *mmin);
  const double hi = std::max(*emax, *mmax);
  run.exact = stats::histogram(exact, lo, hi, bin_width);
  run.midpoint = stats::histogram(midpoint, lo, hi, bin_width);
  return run;
}

std::vector<DistributionRun> run_distribution(const Scenario& scenario) {
  const auto& spec = scenario.distribution;
  if (spec.hop < 1 || spec.hop > scenario.network.hops.size()) {
    throw ParameterError(fmt::format("distribution hop {} out of range", spec.hop));
  }
  const HopConfig& base = scenario.network.hops[spec.hop - 1];
  std::vector<HopConfig> hops;
  if (spec.pairs.empty()) {
    hops.push_back(base);
  } else {
    for (const auto& p : spec.pairs) {
      hops.push_back(HopConfig::from_linear(base.tx_antennas(), base.rx_antennas(), p.eta, p.rho,
                                            base.rsi_tx_antennas()));
    }
  }
  std::vector<DistributionRun> runs;
  for (std::size_t i = 0; i < hops.size(); ++i) {
    runs.push_back(run_distribution_pair(hops[i], spec.samples, spec.bin_width,
                                         scenario.sampling.seed, i));
  }
  return runs;
}

std::string distribution_csv(const Scenario& scenario, const DistributionRun& run) {
  std::string out;
  auto it = std::back_inserter(out);
  const auto& hop = scenario.network.hops[scenario.distribution.hop - 1];
  fmt::format_to(it, "# relay-outage {} distribution\n", RELAY_OUTAGE_VERSION);
  fmt::format_to(it, "# scenario = {}\n", scenario.name);
  fmt::format_to(it, "# seed = {}\n", scenario.sampling.seed);
  fmt::format_to(it, "# hop = {} (tx_antennas={} rx_antennas={} rsi_tx_antennas={})\n",
                 scenario.distribution.hop, hop.tx_antennas(), hop.rx_antennas(),
                 hop.rsi_tx_antennas());
  fmt::format_to(it, "# eta = {}\n", format_number(run.pair.eta));
  fmt::format_to(it, "# rho = {}\n", format_number(run.pair.rho));
  fmt::format_to(it, "# samples = {}\n", run.n_samples);
  fmt::format_to(it, "# bin_width = {}\n", format_number(run.exact.bin_width));
  fmt::format_to(it, "# ks_distance = {}\n", format_number(run.ks_distance));
  fmt::format_to(it, "# exact_skewness = {}\n", format_number(run.exact_skewness));
  fmt::format_to(it, "# exact_excess_kurtosis = {}\n", format_number(run.exact_excess_kurtosis));
  fmt::format_to(it, "# approx_mi_skewness = {}\n", format_number(run.approx_mi_skewness));
  fmt::format_to(it, "# approx_mi_excess_kurtosis = {}\n",
                 format_number(run.approx_mi_excess_kurtosis));
  out += "bin_lo,bin_hi,exact_frequency,midpoint_frequency\n";
  const double n = static_cast<double>(run.n_samples);
  for (std::size_t i = 0; i < run.exact.counts.size(); ++i) {
    fmt::format_to(it, "{},{},{},{}\n", format_number(run.exact.bin_lo(i)),
                   format_number(run.exact.bin_hi(i)),
                   format_number(static_cast<double>(run.exact.counts[i]) / n),
                   format_number(static_cast<double>(run.midpoint.counts[i]) / n));
  }
  return out;
}

}  // namespace relay

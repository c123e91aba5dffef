// relay-outage: outage sweeps, distribution studies and the validation suite.
//
//   relay-outage outage       --preset chain3-fd-rsi5 --out results/
//   relay-outage distribution --preset midpoint-2x2 --out results/
//   relay-outage validate
//
// Exit codes: 0 success, 1 validation failure, 2 usage or scenario error,
// 3 numerical or output failure. Diagnostics are single lines prefixed with
// "relay-outage: error[<kind>]:".

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "relay/error.hpp"
#include "relay/outage.hpp"
#include "relay/parallel.hpp"
#include "relay/presets.hpp"
#include "relay/report.hpp"
#include "relay/scenario.hpp"
#include "relay/validate.hpp"

namespace {

constexpr int kExitValidationFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct ScenarioSource {
  std::string scenario_path;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> realizations;
  std::string out_dir;
};

struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void print_error(std::string_view kind, std::string_view message) {
  std::cerr << fmt::format("relay-outage: error[{}]: {}\n", kind, message);
}

relay::Scenario resolve_scenario(const ScenarioSource& src) {
  if (src.scenario_path.empty() == src.preset.empty()) {
    throw relay::ParseError("<command line>", 0, "", "give exactly one of --scenario or --preset");
  }
  return src.preset.empty() ? relay::load_scenario(src.scenario_path)
                            : relay::load_preset(src.preset);
}

std::filesystem::path output_dir(const relay::Scenario& sc, const ScenarioSource& src) {
  const std::filesystem::path dir =
      src.out_dir.empty() ? sc.output_dir : std::filesystem::path(src.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw OutputError(fmt::format("cannot create {}: {}", dir.string(), ec.message()));
  return dir;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << contents;
  if (!out) throw OutputError(fmt::format("cannot write {}", path.string()));
}

int cmd_outage(const ScenarioSource& src, bool gnuplot) {
  relay::Scenario sc = resolve_scenario(src);
  if (src.seed) sc.sampling.seed = *src.seed;
  if (src.samples) sc.sampling.n_moment_samples = *src.samples;
  if (src.realizations) sc.sampling.n_mc_realizations = *src.realizations;

  const auto dir = output_dir(sc, src);
  const auto run = relay::run_outage(sc);
  const std::string csv_name = sc.name + "_outage.csv";
  write_file(dir / csv_name, relay::outage_csv(sc, run));
  if (gnuplot) write_file(dir / (sc.name + "_outage.gp"), relay::outage_gnuplot(sc, csv_name));

  std::cout << fmt::format("{}: max |analytical - montecarlo| = {:.6g} over {} rates -> {}\n",
                           sc.name, run.max_abs_gap(), run.analytical.points.size(),
                           (dir / csv_name).string());
  return 0;
}

int cmd_distribution(const ScenarioSource& src, std::optional<double> bin_width) {
  relay::Scenario sc = resolve_scenario(src);
  if (src.seed) sc.sampling.seed = *src.seed;
  if (src.samples) sc.distribution.samples = *src.samples;
  if (bin_width) {
    if (!(*bin_width > 0.0)) throw relay::ParameterError("--bin-width must be > 0");
    sc.distribution.bin_width = *bin_width;
  }
  if (sc.distribution.samples < relay::kMinMomentSamples) {
    throw relay::ParameterError(
        fmt::format("--samples must be >= {}", relay::kMinMomentSamples));
  }

  const auto dir = output_dir(sc, src);
  const auto runs = relay::run_distribution(sc);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    const std::string name = fmt::format("{}_distribution_{}.csv", sc.name, i + 1);
    write_file(dir / name, relay::distribution_csv(sc, r));
    std::cout << fmt::format(
        "{}: eta={:.6g} rho={:.6g} ks={:.6g} exact_skewness={:.6g} approx_mi_skewness={:.6g} "
        "-> {}\n",
        sc.name, r.pair.eta, r.pair.rho, r.ks_distance, r.exact_skewness, r.approx_mi_skewness,
        (dir / name).string());
  }
  return 0;
}

int cmd_validate(std::uint64_t seed, std::size_t samples, const std::string& fault) {
  relay::ValidationOptions opts;
  opts.seed = seed;
  opts.samples = samples;
  if (fault == "q-function") {
    opts.q_function = [](double x) { return relay::q_function(x) + 1e-3; };
  } else if (!fault.empty()) {
    throw relay::ParseError("<command line>", 0, "inject-fault", "unknown fault '" + fault + "'");
  }

  const auto start = std::chrono::steady_clock::now();
  const auto results = relay::run_validation(opts);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::string failed;
  for (const auto& r : results) {
    std::cout << fmt::format("[{}] {:<24} measured={:<12.6g} threshold={:<10.6g} {}\n",
                             r.passed ? "PASS" : "FAIL", r.name, r.measured, r.threshold, r.detail);
    if (!r.passed) failed += (failed.empty() ? "" : ", ") + r.name;
  }
  std::cout << fmt::format("total runtime {:.2f} s\n", seconds);
  if (!failed.empty()) {
    print_error("validate", "failed checks: " + failed);
    return kExitValidationFailed;
  }
  return 0;
}

void add_scenario_options(CLI::App* cmd, ScenarioSource& src, const char* samples_help) {
  cmd->add_option("--scenario", src.scenario_path, "Scenario file");
  cmd->add_option("--preset", src.preset, "Built-in scenario name (see list-presets)");
  cmd->add_option("--seed", src.seed, "Random seed (overrides the scenario)");
  cmd->add_option("--samples", src.samples, samples_help);
  cmd->add_option("--out", src.out_dir, "Output directory (overrides the scenario)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Outage probability of multi-hop full/half-duplex MIMO relay networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(RELAY_OUTAGE_VERSION));

  ScenarioSource outage_src;
  bool gnuplot = false;
  auto* outage = app.add_subcommand("outage", "Analytical and Monte Carlo outage curves (CSV)");
  add_scenario_options(outage, outage_src, "Samples per hop for the moment estimates");
  outage->add_option("--realizations", outage_src.realizations, "Monte Carlo network realizations");
  outage->add_flag("--gnuplot", gnuplot, "Also write a gnuplot script next to the CSV");

  ScenarioSource dist_src;
  std::optional<double> bin_width;
  auto* distribution =
      app.add_subcommand("distribution", "Exact vs midpoint log-det histograms (CSV)");
  add_scenario_options(distribution, dist_src, "Samples per (eta, rho) pair");
  distribution->add_option("--bin-width", bin_width, "Histogram bin width in bits");

  std::uint64_t validate_seed = 1;
  std::size_t validate_samples = 100'000;
  std::string fault;
  auto* validate = app.add_subcommand("validate", "Run the numerical validation suite");
  validate->add_option("--seed", validate_seed, "Random seed");
  validate->add_option("--samples", validate_samples, "Monte Carlo samples per check")
      ->check(CLI::Range(std::size_t{1000}, std::size_t{100'000'000}));
  validate->add_option("--inject-fault", fault)->group("");  // hidden negative control

  auto* list = app.add_subcommand("list-presets", "Print the built-in scenario names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return kExitUsage;
  }

  relay::configure_threads_from_env();

  try {
    if (outage->parsed()) return cmd_outage(outage_src, gnuplot);
    if (distribution->parsed()) return cmd_distribution(dist_src, bin_width);
    if (validate->parsed()) return cmd_validate(validate_seed, validate_samples, fault);
    if (list->parsed()) {
      for (auto name : relay::preset_names()) std::cout << name << '\n';
      return 0;
    }
  } catch (const relay::ParseError& e) {
    print_error("parse", e.what());
    return kExitUsage;
  } catch (const relay::ParameterError& e) {
    print_error("parameter", e.what());
    return kExitUsage;
  } catch (const OutputError& e) {
    print_error("output", e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    print_error("numeric", e.what());
    return kExitNumeric;
  }
  return kExitUsage;
}

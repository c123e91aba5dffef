#pragma once

// Plain-text scenario files.
//
//   # comment                       ('#' or ';' to end of line)
//   [scenario]   name = chain3-fd-rsi5
//   [network]    mode = fd|hd, hops = <count>, allow_final_rsi = true|false
//   [hop.*]      defaults applied to every hop
//   [hop.<k>]    per-hop overrides, k = 1 .. hops
//                tx_antennas, rx_antennas, snr_db, rsi_snr_db (dB or `none`),
//                rsi_tx_antennas (defaults to tx_antennas of hop k+1)
//   [rates]      start, stop, step                      (bits/s/Hz)
//   [sampling]   moment_samples, mc_realizations, seed
//   [output]     directory
//   [distribution]
//                hop, pairs = eta:rho[, eta:rho ...], bin_width, samples
//
// Unknown sections or keys, duplicates, and malformed values raise ParseError
// carrying the source name, line, and field.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "relay/outage.hpp"

namespace relay {

struct RateGridSpec {
  double start = 0.0;
  double stop = 14.0;
  double step = 0.25;

  std::vector<double> grid() const { return make_rate_grid(start, stop, step); }
};

struct EtaRho {
  double eta = 1.0;
  double rho = 0.0;
};

struct DistributionSpec {
  std::size_t hop = 1;        // 1-based
  std::vector<EtaRho> pairs;  // empty: use the hop's own (eta, rho)
  double bin_width = 0.1;     // bits
  std::size_t samples = 100'000;
};

struct Scenario {
  std::string name = "scenario";
  NetworkConfig network;
  bool allow_final_rsi = false;
  RateGridSpec rates;
  SamplingParams sampling;
  std::filesystem::path output_dir = ".";
  DistributionSpec distribution;
};

Scenario parse_scenario(std::string_view text, const std::string& source = "<scenario>");

/// Reads and parses a scenario file. Unreadable files raise ParseError with line 0.
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace relay

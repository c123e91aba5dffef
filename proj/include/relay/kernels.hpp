#pragma once

// Monte Carlo sampling kernels.
//
// Each kernel fills a vector whose i-th entry depends only on (seed, stream, i).
// `serial` is the reference loop; `parallel` distributes the same per-sample work
// with OpenMP. Both must produce bit-identical vectors; tests/test_kernels.cpp
// holds them to that and bench/ compares their throughput.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "relay/mutual_info.hpp"

namespace relay::kernels {

enum class SampleKind {
  Approximate,  // midpoint/Fiedler form, what the moments are built from
  Exact,        // exact log-det form, what the outage simulation uses
};

/// Paired per-sample log-det statistics for one (eta, rho) pair.
struct LogdetSample {
  double exact = 0.0;     // log2 det(I + eta W + rho Wb)
  double midpoint = 0.0;  // (L_b + U_b) / 2
  double lambda = 0.0;    // sum log2(1 + rho alpha_i)
};

// Per-sample evaluation; the loops below only decide which indices run where.

/// Mutual information of one hop for sample `index`. Draw order inside the stream:
/// H (rx x tx, row-major), then Hb (rx x rsi_tx) when the hop has RSI in FD mode.
double hop_sample(const HopConfig& hop, DuplexMode mode, SampleKind kind, std::uint64_t seed,
                  std::uint64_t stream, std::uint64_t index);

LogdetSample logdet_sample(const HopConfig& hop, std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t index);

/// min_k I_k over the hops of one network realization (exact MI). Hop k draws from
/// stream (seed, streams::id(MonteCarlo, k), index).
double network_min_mi_sample(std::span<const HopConfig> hops, DuplexMode mode, std::uint64_t seed,
                             std::uint64_t index);

namespace serial {

std::vector<double> hop_samples(const HopConfig& hop, DuplexMode mode, SampleKind kind,
                                std::size_t n, std::uint64_t seed, std::uint64_t stream);
std::vector<LogdetSample> logdet_samples(const HopConfig& hop, std::size_t n, std::uint64_t seed,
                                         std::uint64_t stream);
std::vector<double> network_min_mi(std::span<const HopConfig> hops, DuplexMode mode, std::size_t n,
                                   std::uint64_t seed);

}  // namespace serial

namespace parallel {

std::vector<double> hop_samples(const HopConfig& hop, DuplexMode mode, SampleKind kind,
                                std::size_t n, std::uint64_t seed, std::uint64_t stream);
std::vector<LogdetSample> logdet_samples(const HopConfig& hop, std::size_t n, std::uint64_t seed,
                                         std::uint64_t stream);
std::vector<double> network_min_mi(std::span<const HopConfig> hops, DuplexMode mode, std::size_t n,
                                   std::uint64_t seed);

}  // namespace parallel

}  // namespace relay::kernels

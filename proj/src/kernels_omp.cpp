#include <cstdint>
#include <exception>
#include <mutex>

#include <omp.h>

#include "relay/kernels.hpp"

namespace relay::kernels::parallel {

namespace {

// Runs body(i) for i in [0, n) across the OpenMP team. The first exception thrown
// by any iteration is rethrown on the calling thread once the loop finishes.
template <class Body>
void for_each_index(std::size_t n, Body&& body) {
  std::exception_ptr failure;
  std::once_flag captured;
  const auto count = static_cast<std::int64_t>(n);

#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::call_once(captured, [&] { failure = std::current_exception(); });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<double> hop_samples(const HopConfig& hop, DuplexMode mode, SampleKind kind,
                                std::size_t n, std::uint64_t seed, std::uint64_t stream) {
  std::vector<double> out(n);
  for_each_index(n, [&](std::size_t i) { out[i] = hop_sample(hop, mode, kind, seed, stream, i); });
  return out;
}

std::vector<LogdetSample> logdet_samples(const HopConfig& hop, std::size_t n, std::uint64_t seed,
                                         std::uint64_t stream) {
  std::vector<LogdetSample> out(n);
  for_each_index(n, [&](std::size_t i) { out[i] = logdet_sample(hop, seed, stream, i); });
  return out;
}

std::vector<double> network_min_mi(std::span<const HopConfig> hops, DuplexMode mode, std::size_t n,
                                   std::uint64_t seed) {
  std::vector<double> out(n);
  for_each_index(n, [&](std::size_t i) { out[i] = network_min_mi_sample(hops, mode, seed, i); });
  return out;
}

}  // namespace relay::kernels::parallel

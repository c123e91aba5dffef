#include <algorithm>
#include <limits>

#include "relay/kernels.hpp"
#include "relay/wishart_analytics.hpp"

namespace relay::kernels {

double hop_sample(const HopConfig& hop, DuplexMode mode, SampleKind kind, std::uint64_t seed,
                  std::uint64_t stream, std::uint64_t index) {
  StreamRng rng(seed, stream, index);
  const ComplexMat w = receive_gram(sample_channel(hop.rx_antennas(), hop.tx_antennas(), rng));

  if (mode == DuplexMode::HalfDuplex) return mi_hd_exact(w, hop.eta());

  if (!hop.has_rsi()) {
    const ComplexMat zero = ComplexMat::Zero(w.rows(), w.cols());
    if (kind == SampleKind::Exact) return mi_fd_exact(w, zero, hop.eta(), 0.0);
    return mi_fd_approx(Spectrum::zeros(static_cast<std::size_t>(w.rows())),
                        hermitian_spectrum(w), hop.eta(), 0.0);
  }

  const ComplexMat w_rsi =
      receive_gram(sample_channel(hop.rx_antennas(), hop.rsi_tx_antennas(), rng));
  if (kind == SampleKind::Exact) return mi_fd_exact(w, w_rsi, hop.eta(), hop.rho());
  return mi_fd_approx(hermitian_spectrum(w_rsi), hermitian_spectrum(w), hop.eta(), hop.rho());
}

LogdetSample logdet_sample(const HopConfig& hop, std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t index) {
  StreamRng rng(seed, stream, index);
  const ComplexMat w = receive_gram(sample_channel(hop.rx_antennas(), hop.tx_antennas(), rng));
  const ComplexMat w_rsi =
      receive_gram(sample_channel(hop.rx_antennas(), hop.rsi_tx_antennas(), rng));

  const ComplexMat sum = ComplexMat::Identity(w.rows(), w.cols()) + hop.eta() * w +
                         hop.rho() * w_rsi;
  const Spectrum alpha = hermitian_spectrum(w_rsi);
  const Spectrum beta = hermitian_spectrum(w);
  return {log2det_cholesky(sum), midpoint_logdet(alpha, beta, hop.eta(), hop.rho()),
          logdet_from_spectrum(alpha, hop.rho())};
}

double network_min_mi_sample(std::span<const HopConfig> hops, DuplexMode mode, std::uint64_t seed,
                             std::uint64_t index) {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < hops.size(); ++k) {
    worst = std::min(worst, hop_sample(hops[k], mode, SampleKind::Exact, seed,
                                       streams::id(streams::Purpose::MonteCarlo, k), index));
  }
  return worst;
}

namespace serial {

std::vector<double> hop_samples(const HopConfig& hop, DuplexMode mode, SampleKind kind,
                                std::size_t n, std::uint64_t seed, std::uint64_t stream) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = hop_sample(hop, mode, kind, seed, stream, i);
  return out;
}

std::vector<LogdetSample> logdet_samples(const HopConfig& hop, std::size_t n, std::uint64_t seed,
                                         std::uint64_t stream) {
  std::vector<LogdetSample> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = logdet_sample(hop, seed, stream, i);
  return out;
}

std::vector<double> network_min_mi(std::span<const HopConfig> hops, DuplexMode mode, std::size_t n,
                                   std::uint64_t seed) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = network_min_mi_sample(hops, mode, seed, i);
  return out;
}

}  // namespace serial

}  // namespace relay::kernels

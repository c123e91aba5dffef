#include "relay/mutual_info.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>
#include <fmt/format.h>

#include "relay/error.hpp"
#include "relay/kernels.hpp"
#include "relay/stats.hpp"
#include "relay/wishart_analytics.hpp"

namespace relay {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

void require_power(double value, const char* name) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw DomainError(fmt::format("{} must be finite and >= 0 (got {})", name, value));
  }
}

void require_same_square(const ComplexMat& a, const ComplexMat& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw ShapeError(fmt::format("expected equal square matrices (got {}x{} and {}x{})", a.rows(),
                                 a.cols(), b.rows(), b.cols()));
  }
}

void require_pairable(const Spectrum& alpha, const Spectrum& beta) {
  if (alpha.size() != beta.size() || alpha.size() == 0) {
    throw ShapeError(fmt::format("spectra must have equal non-zero length (got {} and {})",
                                 alpha.size(), beta.size()));
  }
}

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

}  // namespace

std::string_view to_string(DuplexMode mode) noexcept {
  return mode == DuplexMode::FullDuplex ? "fd" : "hd";
}

HopConfig HopConfig::from_db(int tx_antennas, int rx_antennas, double snr_db,
                             std::optional<double> rsi_snr_db, int rsi_tx_antennas) {
  if (!std::isfinite(snr_db)) throw ParameterError("snr_db must be finite");
  if (rsi_snr_db && !std::isfinite(*rsi_snr_db)) throw ParameterError("rsi_snr_db must be finite");
  HopConfig hop = from_linear(tx_antennas, rx_antennas, db_to_linear(snr_db) / tx_antennas,
                              rsi_snr_db ? db_to_linear(*rsi_snr_db) / rsi_tx_antennas : 0.0,
                              rsi_tx_antennas);
  hop.snr_db_ = snr_db;
  hop.rsi_snr_db_ = rsi_snr_db;
  return hop;
}

HopConfig HopConfig::from_linear(int tx_antennas, int rx_antennas, double eta, double rho,
                                 int rsi_tx_antennas) {
  if (tx_antennas < 1 || rx_antennas < 1 || rsi_tx_antennas < 1) {
    throw ParameterError(fmt::format("antenna counts must be >= 1 (tx={}, rx={}, rsi_tx={})",
                                     tx_antennas, rx_antennas, rsi_tx_antennas));
  }
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw ParameterError(fmt::format("eta must be finite and > 0 (got {})", eta));
  }
  if (!(rho >= 0.0) || !std::isfinite(rho)) {
    throw ParameterError(fmt::format("rho must be finite and >= 0 (got {})", rho));
  }
  HopConfig hop;
  hop.tx_ = tx_antennas;
  hop.rx_ = rx_antennas;
  hop.rsi_tx_ = rsi_tx_antennas;
  hop.eta_ = eta;
  hop.rho_ = rho;
  hop.snr_db_ = 10.0 * std::log10(eta * tx_antennas);
  if (rho > 0.0) hop.rsi_snr_db_ = 10.0 * std::log10(rho * rsi_tx_antennas);
  return hop;
}

HopMoments HopMoments::from_samples(std::span<const double> samples) {
  if (samples.size() < 2) throw ParameterError("HopMoments needs at least two samples");
  HopMoments m;
  m.n_samples = samples.size();
  m.mean = stats::mean(samples);
  m.variance = stats::variance(samples);
  m.std_error_mean = std::sqrt(m.variance / static_cast<double>(m.n_samples));
  return m;
}

double log2det_cholesky(const ComplexMat& a) {
  Eigen::LLT<ComplexMat> llt(a);
  if (llt.info() != Eigen::Success) throw SolverError("log2det: matrix is not positive definite");
  double total = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) total += std::log2(llt.matrixLLT()(i, i).real());
  return 2.0 * total;
}

double log2det_eigen(const ComplexMat& a) {
  const Spectrum s = hermitian_spectrum(a);
  double total = 0.0;
  for (double v : s.values()) {
    if (!(v > 0.0)) throw SolverError("log2det: matrix is singular");
    total += std::log2(v);
  }
  return total;
}

double mi_fd_exact(const ComplexMat& w, const ComplexMat& w_rsi, double eta, double rho) {
  require_same_square(w, w_rsi);
  require_power(eta, "eta");
  require_power(rho, "rho");
  const ComplexMat interference =
      ComplexMat::Identity(w.rows(), w.cols()) + rho * w_rsi;
  const ComplexMat total = interference + eta * w;
  return std::max(0.0, log2det_cholesky(total) - log2det_cholesky(interference));
}

double mi_hd_exact(const ComplexMat& w, double eta) {
  if (w.rows() != w.cols()) throw ShapeError("mi_hd_exact: W must be square");
  require_power(eta, "eta");
  const ComplexMat total = ComplexMat::Identity(w.rows(), w.cols()) + eta * w;
  return kHalfDuplexPrefactor * std::max(0.0, log2det_cholesky(total));
}

FiedlerBounds fiedler_bounds(const Spectrum& alpha, const Spectrum& beta, double eta, double rho) {
  require_pairable(alpha, beta);
  require_power(eta, "eta");
  require_power(rho, "rho");
  const std::size_t m = alpha.size();
  FiedlerBounds b;
  for (std::size_t i = 0; i < m; ++i) {
    b.lower += log2_1p(rho * alpha[i] + eta * beta[i]);
    b.upper += log2_1p(rho * alpha[i] + eta * beta[m - 1 - i]);
  }
  // Rounding can flip the order when the pairings coincide.
  if (b.upper < b.lower) std::swap(b.lower, b.upper);
  return b;
}

double midpoint_logdet(const Spectrum& alpha, const Spectrum& beta, double eta, double rho) {
  const FiedlerBounds b = fiedler_bounds(alpha, beta, eta, rho);
  return 0.5 * (b.lower + b.upper);
}

double mi_fd_approx(const Spectrum& alpha, const Spectrum& beta, double eta, double rho) {
  return midpoint_logdet(alpha, beta, eta, rho) - logdet_from_spectrum(alpha, rho);
}

HopMoments estimate_hop_moments(const HopConfig& hop, DuplexMode mode, std::size_t n_samples,
                                std::uint64_t seed, std::uint64_t hop_index) {
  if (n_samples < kMinMomentSamples) {
    throw ParameterError(fmt::format("estimate_hop_moments: n_samples must be >= {} (got {})",
                                     kMinMomentSamples, n_samples));
  }
  const auto samples = kernels::parallel::hop_samples(
      hop, mode, kernels::SampleKind::Approximate, n_samples, seed,
      streams::id(streams::Purpose::Moments, hop_index));
  return HopMoments::from_samples(samples);
}

}  // namespace relay

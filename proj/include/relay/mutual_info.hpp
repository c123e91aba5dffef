#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "relay/randmat.hpp"

namespace relay {

enum class DuplexMode { FullDuplex, HalfDuplex };

std::string_view to_string(DuplexMode mode) noexcept;

/// Time-sharing prefactor applied to half-duplex mutual information (two phases per hop).
inline constexpr double kHalfDuplexPrefactor = 0.5;

/// One hop T_{k-1} -> T_k. dB values are converted to linear per-antenna powers once,
/// at construction:  eta = 10^{snr_db/10} / tx,  rho = 10^{rsi_snr_db/10} / rsi_tx.
class HopConfig {
 public:
  /// Throws ParameterError on antenna counts < 1 or non-finite dB values.
  static HopConfig from_db(int tx_antennas, int rx_antennas, double snr_db,
                           std::optional<double> rsi_snr_db = std::nullopt,
                           int rsi_tx_antennas = 1);

  /// Linear powers given directly (used for distribution studies). rho = 0 means no RSI.
  static HopConfig from_linear(int tx_antennas, int rx_antennas, double eta, double rho,
                               int rsi_tx_antennas);

  int tx_antennas() const noexcept { return tx_; }
  int rx_antennas() const noexcept { return rx_; }
  int rsi_tx_antennas() const noexcept { return rsi_tx_; }
  double snr_db() const noexcept { return snr_db_; }
  const std::optional<double>& rsi_snr_db() const noexcept { return rsi_snr_db_; }
  bool has_rsi() const noexcept { return rho_ > 0.0; }

  double eta() const noexcept { return eta_; }
  double rho() const noexcept { return rho_; }

  friend bool operator==(const HopConfig&, const HopConfig&) = default;

 private:
  HopConfig() = default;

  int tx_ = 1;
  int rx_ = 1;
  int rsi_tx_ = 1;
  double snr_db_ = 0.0;
  std::optional<double> rsi_snr_db_;
  double eta_ = 1.0;
  double rho_ = 0.0;
};

/// Gaussian-approximation moments of one hop's mutual information, in bits.
struct HopMoments {
  double mean = 0.0;
  double variance = 0.0;
  std::size_t n_samples = 0;
  double std_error_mean = 0.0;

  /// Sample mean and unbiased variance with order-independent (pairwise) summation.
  static HopMoments from_samples(std::span<const double> samples);
};

struct FiedlerBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// log2 det(A) for Hermitian positive definite A via Cholesky. SolverError if A is not PD.
double log2det_cholesky(const ComplexMat& a);
/// log2 det(A) via the Hermitian eigenvalues of A.
double log2det_eigen(const ComplexMat& a);

/// log2 det(I + rho Wb + eta W) - log2 det(I + rho Wb), clamped at 0.
double mi_fd_exact(const ComplexMat& w, const ComplexMat& w_rsi, double eta, double rho);

/// kHalfDuplexPrefactor * log2 det(I + eta W).
double mi_hd_exact(const ComplexMat& w, double eta);

/// Same-rank pairing (lower) and opposite-rank pairing (upper) of the eigenvalues of
/// rho Wb (alpha) and eta W (beta) around log2 det(I + rho Wb + eta W).
FiedlerBounds fiedler_bounds(const Spectrum& alpha, const Spectrum& beta, double eta, double rho);

/// (lower + upper) / 2.
double midpoint_logdet(const Spectrum& alpha, const Spectrum& beta, double eta, double rho);

/// midpoint_logdet - sum log2(1 + rho alpha_i). Not clamped: may dip below zero.
double mi_fd_approx(const Spectrum& alpha, const Spectrum& beta, double eta, double rho);

/// Minimum sample count accepted by estimate_hop_moments.
inline constexpr std::size_t kMinMomentSamples = 100;

/// Monte Carlo (mu_k, sigma_k^2): mi_fd_approx per sample for full duplex,
/// mi_hd_exact for half duplex. Sample i of hop `hop_index` uses stream
/// (seed, streams::id(Moments, hop_index), i). Runs on the OpenMP kernel; the
/// result does not depend on the thread count.
HopMoments estimate_hop_moments(const HopConfig& hop, DuplexMode mode, std::size_t n_samples,
                                std::uint64_t seed, std::uint64_t hop_index = 0);

}  // namespace relay

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "relay/rng.hpp"

namespace relay {

/// Dense complex matrix; carries channel gains H and their Gram forms.
using ComplexMat = Eigen::MatrixXcd;

/// Shape of an uncorrelated central Wishart matrix: order m, degrees of freedom p.
struct WishartParams {
  int m = 1;
  int p = 1;

  int d() const noexcept { return p - m; }

  /// m = min, p = max of the two antenna counts. Throws DimensionError on counts < 1.
  static WishartParams from_antennas(int a, int b);
  /// Validates p >= m >= 1.
  static WishartParams make(int m, int p);

  friend bool operator==(const WishartParams&, const WishartParams&) = default;
};

/// Relative tolerance (scaled by the largest eigenvalue magnitude, floor 1) below
/// which negative eigenvalues of a Gram matrix are treated as rounding noise.
inline constexpr double kPsdRelTolerance = 1e-8;
/// Relative asymmetry ||W - W^H||_F / max(1, ||W||_F) accepted as Hermitian.
inline constexpr double kHermitianRelTolerance = 1e-10;

double psd_tolerance(double largest_magnitude) noexcept;

/// Eigenvalues in descending order, non-negative.
class Spectrum {
 public:
  Spectrum() = default;
  /// Throws ShapeError if not descending, DomainError if a value is below -psd_tolerance
  /// or not finite. Small negatives are clamped to zero.
  explicit Spectrum(std::vector<double> values);

  static Spectrum zeros(std::size_t n) { return Spectrum(std::vector<double>(n, 0.0)); }

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  double sum() const noexcept;

 private:
  std::vector<double> values_;
};

/// rows x cols matrix of i.i.d. CN(0, 1) entries drawn from `rng`.
ComplexMat sample_channel(Eigen::Index rows, Eigen::Index cols, StreamRng& rng);

struct WishartSample {
  ComplexMat gram;
  WishartParams params;
};

/// H H^H when rows <= cols, else H^H H: the min(rows, cols)-order Gram form.
WishartSample wishart_from_channel(const ComplexMat& h);

/// H H^H regardless of shape (receiver side, N x N). Its spectrum is the Wishart
/// spectrum padded with zeros up to N.
ComplexMat receive_gram(const ComplexMat& h);

/// Real eigenvalues of a Hermitian PSD matrix, descending, clamped at zero.
Spectrum hermitian_spectrum(const ComplexMat& w);

}  // namespace relay

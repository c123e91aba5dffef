#pragma once

#include <span>
#include <vector>

#include "relay/randmat.hpp"

namespace relay {

/// Generalized Laguerre polynomial L_order^d(x) by three-term recurrence.
/// Throws DomainError for x < 0 or negative order/d.
double laguerre(int order, int d, double x);

/// Orthonormal Laguerre functions of the complex Wishart (Laguerre unitary) ensemble
///
///   phi_i(x) = sqrt(i! / (i + d)!) L_i^d(x) x^{d/2} e^{-x/2},   i = 0 .. max_order-1
///
/// and the reproducing kernel K(x, y) = sum_{i<m} phi_i(x) phi_i(y), whose diagonal
/// K(x, x) / m is the single-eigenvalue marginal density.
class LaguerreBasis {
 public:
  explicit LaguerreBasis(WishartParams params) : LaguerreBasis(params, params.m) {}
  LaguerreBasis(WishartParams params, int max_order);

  const WishartParams& params() const noexcept { return params_; }
  int max_order() const noexcept { return max_order_; }

  double phi(int i, double x) const;
  double kernel(double x, double y) const;
  double marginal_density(double lambda) const;
  /// Joint density of the unordered eigenvalues, det[K(x_i, x_j)] / m!.
  double joint_density(std::span<const double> eigenvalues) const;

 private:
  WishartParams params_;
  int max_order_;
  std::vector<double> norms_;  // sqrt(i! / (i + d)!)
};

/// (1/m) sum_{i<m} [i!/(i+d)!] (L_i^d(lambda))^2 lambda^d e^{-lambda}. DomainError if lambda < 0.
double marginal_eigen_density(WishartParams params, double lambda);

/// Upper integration limit: first integer past p + m where e^{-x} x^{p+m} < 1e-12.
double integration_cutoff(WishartParams params);

/// Absolute tolerance (bits) demanded of expected_logdet.
inline constexpr double kQuadratureAbsTolerance = 1e-6;

/// Quadrature of the marginal density over [0, cutoff]; 1 up to quadrature error.
double density_normalization(WishartParams params);

/// E[log2 det(I + scale W)] = m * int_0^inf log2(1 + scale x) f(x) dx.
/// Throws DomainError for negative scale, SolverError if the quadrature error
/// estimate exceeds kQuadratureAbsTolerance.
double expected_logdet(WishartParams params, double scale);

/// sum_i log2(1 + scale * values[i]).
double logdet_from_spectrum(const Spectrum& spectrum, double scale);

}  // namespace relay

#include "relay/wishart_analytics.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/LU>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "relay/error.hpp"

namespace relay {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kCutoffWeight = 1e-12;
constexpr unsigned kMaxDepth = 20;

// Integrate over [0, cutoff] split at the bulk of the density so the adaptive
// rule does not waste depth on the flat tail.
template <class F>
double integrate(F&& f, double cutoff, double* error_out) {
  double total = 0.0;
  double total_error = 0.0;
  double lo = 0.0;
  for (double hi : {1.0, cutoff / 4.0, cutoff}) {
    if (hi <= lo) continue;
    double err = 0.0;
    total += gauss_kronrod<double, 61>::integrate(f, lo, hi, kMaxDepth, 1e-13, &err);
    total_error += err;
    lo = hi;
  }
  if (error_out != nullptr) *error_out = total_error;
  return total;
}

}  // namespace

double laguerre(int order, int d, double x) {
  if (order < 0 || d < 0) throw DomainError("laguerre: order and d must be non-negative");
  if (!(x >= 0.0)) throw DomainError(fmt::format("laguerre: x must be >= 0 (got {})", x));
  double prev = 1.0;
  if (order == 0) return prev;
  double curr = 1.0 + d - x;
  for (int k = 1; k < order; ++k) {
    const double next = ((2.0 * k + 1.0 + d - x) * curr - (k + d) * prev) / (k + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

LaguerreBasis::LaguerreBasis(WishartParams params, int max_order)
    : params_(WishartParams::make(params.m, params.p)), max_order_(max_order) {
  if (max_order_ < params_.m) {
    throw ParameterError(fmt::format("LaguerreBasis: max_order {} < m {}", max_order_, params_.m));
  }
  norms_.reserve(max_order_);
  for (int i = 0; i < max_order_; ++i) {
    norms_.push_back(std::exp(0.5 * (std::lgamma(i + 1.0) - std::lgamma(i + params_.d() + 1.0))));
  }
}

double LaguerreBasis::phi(int i, double x) const {
  if (i < 0 || i >= max_order_) throw ParameterError("LaguerreBasis::phi: index out of range");
  if (!(x >= 0.0)) throw DomainError(fmt::format("LaguerreBasis::phi: x must be >= 0 (got {})", x));
  const int d = params_.d();
  // x^{d/2} e^{-x/2} in log space; 0^0 = 1.
  const double envelope = (d == 0) ? std::exp(-0.5 * x)
                          : (x == 0.0 ? 0.0 : std::exp(0.5 * (d * std::log(x) - x)));
  return norms_[i] * laguerre(i, d, x) * envelope;
}

double LaguerreBasis::kernel(double x, double y) const {
  double k = 0.0;
  for (int i = 0; i < params_.m; ++i) k += phi(i, x) * phi(i, y);
  return k;
}

double LaguerreBasis::marginal_density(double lambda) const {
  if (!(lambda >= 0.0)) {
    throw DomainError(fmt::format("marginal density: lambda must be >= 0 (got {})", lambda));
  }
  return kernel(lambda, lambda) / params_.m;
}

double LaguerreBasis::joint_density(std::span<const double> eigenvalues) const {
  const int m = params_.m;
  if (static_cast<int>(eigenvalues.size()) != m) {
    throw ShapeError(fmt::format("joint_density: expected {} eigenvalues, got {}", m,
                                 eigenvalues.size()));
  }
  Eigen::MatrixXd k(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) k(i, j) = kernel(eigenvalues[i], eigenvalues[j]);
  }
  return k.determinant() / std::tgamma(m + 1.0);
}

double marginal_eigen_density(WishartParams params, double lambda) {
  return LaguerreBasis(params).marginal_density(lambda);
}

double integration_cutoff(WishartParams params) {
  const auto checked = WishartParams::make(params.m, params.p);
  const double power = checked.p + checked.m;
  const double log_threshold = std::log(kCutoffWeight);
  double x = std::ceil(power) + 1.0;
  while (power * std::log(x) - x >= log_threshold) x += 1.0;
  return x;
}

double density_normalization(WishartParams params) {
  const LaguerreBasis basis(params);
  return integrate([&](double x) { return basis.marginal_density(x); },
                   integration_cutoff(params), nullptr);
}

double expected_logdet(WishartParams params, double scale) {
  if (!(scale >= 0.0)) {
    throw DomainError(fmt::format("expected_logdet: scale must be >= 0 (got {})", scale));
  }
  const LaguerreBasis basis(params);
  if (scale == 0.0) return 0.0;

  double error = 0.0;
  const double integral = integrate(
      [&](double x) { return std::log1p(scale * x) / std::numbers::ln2 * basis.marginal_density(x); },
      integration_cutoff(params), &error);
  const double value = basis.params().m * integral;
  if (basis.params().m * error > kQuadratureAbsTolerance) {
    throw SolverError(fmt::format("expected_logdet: quadrature error {:.3e} exceeds {:.1e}",
                                  basis.params().m * error, kQuadratureAbsTolerance));
  }
  return value;
}

double logdet_from_spectrum(const Spectrum& spectrum, double scale) {
  if (!(scale >= 0.0)) {
    throw DomainError(fmt::format("logdet_from_spectrum: scale must be >= 0 (got {})", scale));
  }
  double total = 0.0;
  for (double v : spectrum.values()) total += std::log1p(scale * v);
  return total / std::numbers::ln2;
}

}  // namespace relay

#include "relay/randmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "relay/error.hpp"

namespace relay {

namespace {

void require_finite(const ComplexMat& a, const char* what) {
  if (!a.allFinite()) throw DomainError(fmt::format("{}: matrix has non-finite entries", what));
}

}  // namespace

WishartParams WishartParams::from_antennas(int a, int b) {
  if (a < 1 || b < 1) {
    throw DimensionError(fmt::format("antenna counts must be >= 1 (got {}, {})", a, b));
  }
  return {std::min(a, b), std::max(a, b)};
}

WishartParams WishartParams::make(int m, int p) {
  if (m < 1 || p < m) {
    throw DimensionError(fmt::format("Wishart parameters need p >= m >= 1 (got m={}, p={})", m, p));
  }
  return {m, p};
}

double psd_tolerance(double largest_magnitude) noexcept {
  return kPsdRelTolerance * std::max(1.0, largest_magnitude);
}

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
  double largest = 0.0;
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("spectrum contains a non-finite value");
    largest = std::max(largest, std::abs(v));
  }
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (values_[i] > values_[i - 1]) throw ShapeError("spectrum must be in descending order");
  }
  const double eps = psd_tolerance(largest);
  for (double& v : values_) {
    if (v < -eps) {
      throw DomainError(fmt::format("eigenvalue {} below PSD tolerance -{}", v, eps));
    }
    if (v < 0.0) v = 0.0;
  }
}

double Spectrum::sum() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

ComplexMat sample_channel(Eigen::Index rows, Eigen::Index cols, StreamRng& rng) {
  if (rows < 1 || cols < 1) {
    throw DimensionError(fmt::format("channel dimensions must be >= 1 (got {}x{})", rows, cols));
  }
  ComplexMat h(rows, cols);
  // Row-major draw order is part of the stream contract.
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) h(i, j) = rng.complex_gaussian();
  }
  return h;
}

WishartSample wishart_from_channel(const ComplexMat& h) {
  if (h.rows() < 1 || h.cols() < 1) throw DimensionError("empty channel matrix");
  require_finite(h, "wishart_from_channel");
  const auto params = WishartParams::from_antennas(static_cast<int>(h.rows()),
                                                   static_cast<int>(h.cols()));
  if (h.rows() <= h.cols()) return {h * h.adjoint(), params};
  return {h.adjoint() * h, params};
}

ComplexMat receive_gram(const ComplexMat& h) {
  if (h.rows() < 1 || h.cols() < 1) throw DimensionError("empty channel matrix");
  return h * h.adjoint();
}

Spectrum hermitian_spectrum(const ComplexMat& w) {
  if (w.rows() < 1 || w.rows() != w.cols()) {
    throw ShapeError(fmt::format("hermitian_spectrum needs a square matrix (got {}x{})",
                                 w.rows(), w.cols()));
  }
  require_finite(w, "hermitian_spectrum");
  const double asym = (w - w.adjoint()).norm();
  if (asym > kHermitianRelTolerance * std::max(1.0, w.norm())) {
    throw ShapeError(fmt::format("matrix is not Hermitian (asymmetry {:.3e})", asym));
  }

  Eigen::SelfAdjointEigenSolver<ComplexMat> solver(w, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw SolverError("Hermitian eigensolver did not converge");

  const auto& ascending = solver.eigenvalues();
  std::vector<double> values(ascending.size());
  std::reverse_copy(ascending.begin(), ascending.end(), values.begin());
  return Spectrum(std::move(values));
}

}  // namespace relay

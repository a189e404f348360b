#include "augustin/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "augustin/error.hpp"

namespace augustin {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InvalidOrder: return "InvalidOrder";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::DegenerateTrace: return "DegenerateTrace";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

namespace {

void require_square_finite(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::InvalidInput, "Hermitian matrix must be square and non-empty");
  }
  if (!m.allFinite()) throw Error(ErrorKind::InvalidInput, "non-finite matrix entry");
}

bool is_integer(double r) { return std::floor(r) == r; }

}  // namespace

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  require_square_finite(m);
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianMatrix::HermitianMatrix(const RealMatrix& m)
    : HermitianMatrix(ComplexMatrix(m.cast<std::complex<double>>())) {}

HermitianMatrix HermitianMatrix::identity(Eigen::Index d) {
  return HermitianMatrix(ComplexMatrix::Identity(d, d), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& diag) {
  if (!diag.allFinite()) throw Error(ErrorKind::InvalidInput, "non-finite diagonal entry");
  ComplexMatrix m = ComplexMatrix::Zero(diag.size(), diag.size());
  m.diagonal() = diag.cast<std::complex<double>>();
  return HermitianMatrix(std::move(m), Trusted{});
}

bool HermitianMatrix::is_diagonal(double tol) const {
  for (Eigen::Index j = 0; j < dim(); ++j) {
    for (Eigen::Index i = 0; i < dim(); ++i) {
      if (i != j && std::abs(m_(i, j)) > tol) return false;
    }
  }
  return true;
}

HermitianMatrix HermitianMatrix::scaled(double s) const {
  return HermitianMatrix(ComplexMatrix(m_ * s), Trusted{});
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::InvalidInput, "dimension mismatch in sum");
  return HermitianMatrix(ComplexMatrix(a.m_ + b.m_), HermitianMatrix::Trusted{});
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::InvalidInput, "dimension mismatch in difference");
  return HermitianMatrix(ComplexMatrix(a.m_ - b.m_), HermitianMatrix::Trusted{});
}

double Spectrum::floor() const {
  return kEigFloorRelative * values.cwiseAbs().maxCoeff();
}

HermitianMatrix Spectrum::reconstruct() const { return from_mapped(values); }

HermitianMatrix Spectrum::from_mapped(const RealVector& mapped) const {
  ComplexMatrix m = vectors * mapped.cast<std::complex<double>>().asDiagonal() * vectors.adjoint();
  return HermitianMatrix(m);
}

Spectrum hermitian_eig(const HermitianMatrix& q) {
  if (!q.matrix().allFinite()) throw Error(ErrorKind::InvalidInput, "non-finite matrix entry");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(q.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::InvalidInput, "eigendecomposition did not converge");
  }
  // Eigen sorts ascending; flip to non-increasing.
  Spectrum s;
  s.values = solver.eigenvalues().reverse();
  s.vectors = solver.eigenvectors().rowwise().reverse();
  return s;
}

RealVector hermitian_eigenvalues(const HermitianMatrix& q) {
  if (!q.matrix().allFinite()) throw Error(ErrorKind::InvalidInput, "non-finite matrix entry");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(q.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::InvalidInput, "eigendecomposition did not converge");
  }
  return solver.eigenvalues().reverse();
}

HermitianMatrix matrix_power(const Spectrum& s, double r) {
  if (!std::isfinite(r)) throw Error(ErrorKind::InvalidInput, "non-finite exponent");
  if (r == 0.0) return HermitianMatrix::identity(s.dim());
  const bool integral_nonneg = r > 0.0 && is_integer(r);
  if (!integral_nonneg && s.smallest() < s.floor()) {
    std::ostringstream msg;
    msg << "power " << r << " of a matrix with eigenvalue " << s.smallest() << " below floor "
        << s.floor();
    throw Error(ErrorKind::SingularMatrix, msg.str());
  }
  return s.apply([r](double x) { return std::pow(x, r); });
}

HermitianMatrix matrix_power(const HermitianMatrix& q, double r) {
  if (r == 1.0) return q;
  if (r == 0.0) return HermitianMatrix::identity(q.dim());
  return matrix_power(hermitian_eig(q), r);
}

HermitianMatrix psd_power(const Spectrum& s, double r) {
  if (!std::isfinite(r)) throw Error(ErrorKind::InvalidInput, "non-finite exponent");
  const double floor = s.floor();
  if (s.smallest() < -std::max(floor, 1e-10)) {
    throw Error(ErrorKind::InvalidInput, "psd_power of a matrix with a negative eigenvalue");
  }
  return s.apply([r, floor](double x) { return x <= floor ? 0.0 : std::pow(x, r); });
}

HermitianMatrix psd_power(const HermitianMatrix& q, double r) {
  return psd_power(hermitian_eig(q), r);
}

HermitianMatrix matrix_log(const HermitianMatrix& q) {
  const Spectrum s = hermitian_eig(q);
  if (s.smallest() < s.floor()) throw Error(ErrorKind::SingularMatrix, "log of a singular matrix");
  return s.apply([](double x) { return std::log(x); });
}

HermitianMatrix matrix_exp(const HermitianMatrix& q) {
  return hermitian_eig(q).apply([](double x) { return std::exp(x); });
}

double trace_product(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::InvalidInput, "dimension mismatch in trace");
  // Tr[AB] = sum_ij A_ij B_ji.
  return (a.matrix().array() * b.matrix().transpose().array()).sum().real();
}

PositiveVector::PositiveVector(RealVector v) : v_(std::move(v)) {
  if (v_.size() == 0) throw Error(ErrorKind::InvalidInput, "empty positive vector");
  for (Eigen::Index i = 0; i < v_.size(); ++i) {
    if (!(v_(i) > 0.0) || !std::isfinite(v_(i))) {
      throw Error(ErrorKind::InvalidInput, "positive vector entry must be finite and > 0");
    }
  }
}

double thompson_metric_psd(const HermitianMatrix& u, const HermitianMatrix& v) {
  if (u.dim() != v.dim()) throw Error(ErrorKind::InvalidInput, "dimension mismatch in metric");
  const Spectrum sv = hermitian_eig(v);
  if (sv.smallest() < sv.floor() || sv.smallest() <= 0.0) {
    throw Error(ErrorKind::SingularMatrix, "Thompson metric needs positive definite V");
  }
  const RealVector lu = hermitian_eigenvalues(u);
  if (lu(lu.size() - 1) < kEigFloorRelative * lu.cwiseAbs().maxCoeff() ||
      lu(lu.size() - 1) <= 0.0) {
    throw Error(ErrorKind::SingularMatrix, "Thompson metric needs positive definite U");
  }
  const HermitianMatrix v_inv_sqrt = matrix_power(sv, -0.5);
  const HermitianMatrix w(ComplexMatrix(v_inv_sqrt.matrix() * u.matrix() * v_inv_sqrt.matrix()));
  const RealVector lw = hermitian_eigenvalues(w);
  return std::max({std::log(lw(0)), -std::log(lw(lw.size() - 1)), 0.0});
}

double thompson_metric_vec(const RealVector& u, const RealVector& v) {
  if (u.size() != v.size()) throw Error(ErrorKind::InvalidInput, "dimension mismatch in metric");
  double d = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (!(u(i) > 0.0) || !(v(i) > 0.0)) {
      throw Error(ErrorKind::InvalidInput, "Thompson metric needs strictly positive vectors");
    }
    d = std::max(d, std::abs(std::log(u(i) / v(i))));
  }
  return d;
}

double thompson_metric_vec(const PositiveVector& u, const PositiveVector& v) {
  return thompson_metric_vec(u.values(), v.values());
}

DensityMatrix::DensityMatrix(HermitianMatrix q) : q_(std::move(q)) {
  if (std::abs(q_.trace() - 1.0) > kTol) {
    throw Error(ErrorKind::InvalidInput, "density matrix trace must be 1");
  }
  const RealVector lambda = hermitian_eigenvalues(q_);
  if (lambda(lambda.size() - 1) < -kTol) {
    throw Error(ErrorKind::InvalidInput, "density matrix must be positive semi-definite");
  }
}

DensityMatrix DensityMatrix::normalized(const HermitianMatrix& q) {
  const double tr = q.trace();
  if (!(tr > 0.0) || !std::isfinite(tr)) {
    throw Error(ErrorKind::NonFinite, "cannot normalize a matrix with non-positive trace");
  }
  return DensityMatrix(q.scaled(1.0 / tr));
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index d) {
  return DensityMatrix(HermitianMatrix::identity(d).scaled(1.0 / static_cast<double>(d)));
}

DensityMatrix DensityMatrix::diagonal(const RealVector& probabilities) {
  return DensityMatrix(HermitianMatrix::diagonal(probabilities));
}

double GaussianSource::uniform() {
  // 53 random bits, shifted off zero.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double GaussianSource::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

DensityMatrix random_density_matrix(GaussianSource& source, Eigen::Index d) {
  if (d < 1) throw Error(ErrorKind::InvalidInput, "dimension must be >= 1");
  ComplexMatrix g(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      const double re = source.normal();
      const double im = source.normal();
      g(i, j) = {re, im};
    }
  }
  return DensityMatrix::normalized(HermitianMatrix(ComplexMatrix(g * g.adjoint())));
}

DensityMatrix random_density_matrix(std::uint64_t seed, Eigen::Index d) {
  GaussianSource source(seed);
  return random_density_matrix(source, d);
}

HermitianMatrix random_positive_definite(GaussianSource& source, Eigen::Index d, double spread) {
  ComplexMatrix g(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      const double re = source.normal();
      const double im = source.normal();
      g(i, j) = {re, im};
    }
  }
  const ComplexMatrix unitary = Eigen::HouseholderQR<ComplexMatrix>(g).householderQ();
  RealVector lambda(d);
  for (Eigen::Index i = 0; i < d; ++i) lambda(i) = std::exp(spread * source.normal());
  return HermitianMatrix(
      ComplexMatrix(unitary * lambda.cast<std::complex<double>>().asDiagonal() * unitary.adjoint()));
}

RealVector random_simplex_point(GaussianSource& source, Eigen::Index d, double spread) {
  RealVector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = std::exp(spread * source.normal());
  return v / v.sum();
}

}  // namespace augustin

#pragma once

// Hermitian matrix primitives on the positive-definite cone.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>

namespace augustin {

using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Eigenvalues below kEigFloorRelative * max|lambda| are treated as zero.
inline constexpr double kEigFloorRelative = 1e-12;

/// Square complex matrix equal to its conjugate transpose. Every constructor
/// replaces the input by (Q + Q*)/2.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& m);
  explicit HermitianMatrix(const RealMatrix& m);

  static HermitianMatrix identity(Eigen::Index d);
  static HermitianMatrix diagonal(const RealVector& diag);

  Eigen::Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  std::complex<double> operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  double trace() const { return m_.diagonal().real().sum(); }
  bool is_diagonal(double tol = 0.0) const;
  RealVector real_diagonal() const { return m_.diagonal().real(); }

  HermitianMatrix scaled(double s) const;
  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);

 private:
  struct Trusted {};
  HermitianMatrix(ComplexMatrix m, Trusted) : m_(std::move(m)) {}
  friend struct Spectrum;

  ComplexMatrix m_;
};

/// Eigendecomposition with eigenvalues sorted non-increasing; eigenvectors are
/// the columns of `vectors`.
struct Spectrum {
  RealVector values;
  ComplexMatrix vectors;

  Eigen::Index dim() const { return values.size(); }
  double largest() const { return values(0); }
  double smallest() const { return values(values.size() - 1); }
  /// kEigFloorRelative times the largest eigenvalue magnitude.
  double floor() const;

  HermitianMatrix reconstruct() const;

  /// f(Q) = sum_i f(lambda_i) u_i u_i*.
  template <typename F>
  HermitianMatrix apply(F&& f) const {
    RealVector mapped(values.size());
    for (Eigen::Index i = 0; i < values.size(); ++i) mapped(i) = f(values(i));
    return from_mapped(mapped);
  }

  HermitianMatrix from_mapped(const RealVector& mapped) const;
};

/// Throws Error{InvalidInput} on non-finite entries.
Spectrum hermitian_eig(const HermitianMatrix& q);
/// Eigenvalues only, non-increasing.
RealVector hermitian_eigenvalues(const HermitianMatrix& q);

/// Q^r. Throws Error{SingularMatrix} when r is negative or fractional and an
/// eigenvalue lies below the floor.
HermitianMatrix matrix_power(const HermitianMatrix& q, double r);
HermitianMatrix matrix_power(const Spectrum& s, double r);

/// Support-restricted power of a PSD matrix: eigenvalues at or below the floor
/// map to zero for every r (so negative r gives a pseudo-inverse power).
HermitianMatrix psd_power(const HermitianMatrix& q, double r);
HermitianMatrix psd_power(const Spectrum& s, double r);

HermitianMatrix matrix_log(const HermitianMatrix& q);
HermitianMatrix matrix_exp(const HermitianMatrix& q);

/// Re Tr[AB].
double trace_product(const HermitianMatrix& a, const HermitianMatrix& b);

/// Vector with strictly positive entries.
class PositiveVector {
 public:
  PositiveVector() = default;
  explicit PositiveVector(RealVector v);

  Eigen::Index size() const { return v_.size(); }
  double operator[](Eigen::Index i) const { return v_(i); }
  const RealVector& values() const { return v_; }
  double sum() const { return v_.sum(); }

 private:
  RealVector v_;
};

/// max(log lambda_max(W), -log lambda_min(W)) with W = V^{-1/2} U V^{-1/2}.
/// Throws Error{SingularMatrix} if either argument is not positive definite.
double thompson_metric_psd(const HermitianMatrix& u, const HermitianMatrix& v);
/// max_i |log(u[i] / v[i])|.
double thompson_metric_vec(const PositiveVector& u, const PositiveVector& v);
double thompson_metric_vec(const RealVector& u, const RealVector& v);

/// Hermitian PSD matrix with unit trace.
class DensityMatrix {
 public:
  static constexpr double kTol = 1e-10;

  DensityMatrix() = default;
  /// Validates PSD (min eigenvalue >= -kTol) and |Tr - 1| <= kTol.
  explicit DensityMatrix(HermitianMatrix q);

  /// q / Tr[q]; q must be PSD with positive trace.
  static DensityMatrix normalized(const HermitianMatrix& q);
  static DensityMatrix maximally_mixed(Eigen::Index d);
  static DensityMatrix diagonal(const RealVector& probabilities);

  Eigen::Index dim() const { return q_.dim(); }
  const HermitianMatrix& hermitian() const { return q_; }
  operator const HermitianMatrix&() const { return q_; }  // NOLINT

 private:
  HermitianMatrix q_;
};

/// Standard normal source: mt19937_64 words turned into 53-bit uniforms, then
/// Box-Muller. Unlike std::normal_distribution the output stream is fixed
/// across standard libraries.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // in (0, 1)
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Ginibre state: G G* / Tr[G G*] with G having independent standard complex
/// Gaussian entries drawn from GaussianSource(seed).
DensityMatrix random_density_matrix(std::uint64_t seed, Eigen::Index d);
DensityMatrix random_density_matrix(GaussianSource& source, Eigen::Index d);

/// Random positive-definite matrix (not trace normalized) for property tests:
/// U diag(exp(s)) U* with spectrum log-spread `spread`.
HermitianMatrix random_positive_definite(GaussianSource& source, Eigen::Index d,
                                         double spread = 2.0);

/// Random point in the interior of the probability simplex (normalized
/// exponentials of Gaussians).
RealVector random_simplex_point(GaussianSource& source, Eigen::Index d, double spread = 1.0);

}  // namespace augustin

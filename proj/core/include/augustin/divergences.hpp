#pragma once

// Petz-Renyi divergence and the weighted Augustin objectives (quantum and
// commuting).

#include <vector>

#include "augustin/extended_real.hpp"
#include "augustin/linalg.hpp"

namespace augustin {

/// Renyi order alpha in (0,1) U (1,inf).
class Order {
 public:
  /// Throws Error{InvalidOrder} outside (0,1) U (1,inf).
  explicit Order(double alpha);

  double value() const { return alpha_; }
  /// 1 - alpha, the exponent applied to iterates.
  double complement() const { return 1.0 - alpha_; }
  /// |1 - 1/alpha|, the contraction factor of the fixed-point operator.
  double contraction_factor() const;
  /// alpha in (1/2,1) U (1,inf), where the fixed-point rate is proved.
  bool has_convergence_guarantee() const { return alpha_ > 0.5; }

 private:
  double alpha_;
};

/// States A_j, simplex weights w and order alpha. Caches A_j^alpha.
class AugustinProblem {
 public:
  static constexpr double kWeightTol = 1e-12;

  AugustinProblem(std::vector<DensityMatrix> states, RealVector weights, Order order);

  /// Operator-level experiments on PSD data that is not trace normalized.
  static AugustinProblem with_unnormalized_states(std::vector<HermitianMatrix> states,
                                                  RealVector weights, Order order);

  /// Same states and order with new weights; reuses the cached powers.
  AugustinProblem reweighted(RealVector weights) const;

  std::size_t size() const { return states_.size(); }
  Eigen::Index dim() const { return states_.front().dim(); }
  Order order() const { return order_; }
  double alpha() const { return order_.value(); }
  const RealVector& weights() const { return weights_; }
  const std::vector<HermitianMatrix>& states() const { return states_; }
  /// A_j^alpha.
  const std::vector<HermitianMatrix>& powered_states() const { return powered_; }

 private:
  struct PsdTag {};
  AugustinProblem(std::vector<HermitianMatrix> states, RealVector weights, Order order, PsdTag);

  std::vector<HermitianMatrix> states_;
  std::vector<HermitianMatrix> powered_;
  RealVector weights_;
  Order order_;
};

/// Commuting specialization: probability vectors a_j (rows of `points`).
class ClassicalAugustinProblem {
 public:
  ClassicalAugustinProblem(RealMatrix points, RealVector weights, Order order);

  std::size_t size() const { return static_cast<std::size_t>(points_.rows()); }
  Eigen::Index dim() const { return points_.cols(); }
  Order order() const { return order_; }
  double alpha() const { return order_.value(); }
  const RealVector& weights() const { return weights_; }
  /// n x d, row j is a_j.
  const RealMatrix& points() const { return points_; }
  /// Row j is a_j^alpha.
  const RealMatrix& powered_points() const { return powered_; }

  /// Same data as diagonal density matrices.
  AugustinProblem embedded() const;

 private:
  RealMatrix points_;
  RealMatrix powered_;
  RealVector weights_;
  Order order_;
};

/// (1/(alpha-1)) log Tr[A^alpha Q^{1-alpha}], +inf where the kernel of Q makes
/// the expression undefined. Q may have any positive trace.
ExtendedReal petz_renyi_divergence(const HermitianMatrix& a, const HermitianMatrix& q, Order order);

/// Commuting case: (1/(alpha-1)) log <a^alpha, q^{1-alpha}>.
ExtendedReal classical_renyi_divergence(const RealVector& a, const RealVector& q, Order order);

/// F(Q) = sum_j w[j] D_alpha(A_j || Q), summed in ascending j.
ExtendedReal objective_F(const AugustinProblem& p, const HermitianMatrix& q);

/// Per-state divergences D_alpha(A_j || Q).
std::vector<ExtendedReal> state_divergences(const AugustinProblem& p, const HermitianMatrix& q);

/// f(q) = sum_j w[j] (1/(alpha-1)) log <a_j^alpha, q^{1-alpha}>.
ExtendedReal objective_f(const ClassicalAugustinProblem& p, const RealVector& q);

/// Objective from precomputed traces t_j = Tr[A_j^alpha Q^{1-alpha}] of a
/// positive-definite Q. Non-positive t_j are clamped to `clamp_floor` and
/// flagged degenerate.
ExtendedReal objective_from_traces(const RealVector& weights, Order order, const RealVector& traces,
                                   double clamp_floor);

}  // namespace augustin

#pragma once

// Petz capacity of order a in (1/2, 1) by entropic mirror descent over input
// weights, with the fixed-point solver as an inexact gradient oracle.

#include <functional>
#include <ostream>
#include <vector>

#include "augustin/augustin.hpp"

namespace augustin {

class CapacityProblem {
 public:
  /// Throws Error{InvalidOrder} unless 1/2 < a < 1.
  CapacityProblem(std::vector<DensityMatrix> states, Order order);

  std::size_t size() const { return base_.size(); }
  Eigen::Index dim() const { return base_.dim(); }
  Order order() const { return base_.order(); }
  const std::vector<HermitianMatrix>& states() const { return base_.states(); }

  /// The Augustin problem with input weights w (cached powers reused).
  AugustinProblem at(const RealVector& w) const { return base_.reweighted(w); }

 private:
  AugustinProblem base_;
};

/// Inner step count T with (2 / (1-a)) * k^T * d0 <= eps, k = |1 - 1/a|.
int inner_iterations(Order order, double d0, double eps);

struct OracleResult {
  double g_hat = 0.0;           // -sum_j w[j] D_a(A_j || Q)
  RealVector grad_hat;          // -D_a(A_j || Q)
  int inner_iters = 0;
  double initial_bound = 0.0;   // d0 >= d_T(Q*^{1-a}, Q_1^{1-a})
  DensityMatrix mean;           // Q = Q_{T+1} / Tr[Q_{T+1}]
};

/// Runs the fixed-point iteration from I/d for inner_iterations(...) steps and
/// evaluates g and its gradient at the normalized iterate. Each gradient entry
/// is then within eps of the exact value.
OracleResult approx_oracle(const CapacityProblem& p, const RealVector& w, double eps);

struct CapacityState {
  int step = 1;
  RealVector w;
  double g_hat = 0.0;
  RealVector grad_hat;
  double inner_eps = 0.0;
  int inner_iters = 0;
};

/// w * exp(-grad) / <w, exp(-grad)>, evaluated after removing the largest
/// exponent so that a constant shift of grad changes nothing.
RealVector mirror_update(const RealVector& w, const RealVector& grad);

CapacityState make_capacity_state(const CapacityProblem& p, RealVector w, double eps);

/// One outer step; the new state's oracle is queried with accuracy eps.
CapacityState emd_capacity_step(const CapacityProblem& p, const CapacityState& s, double eps);
CapacityState emd_capacity_step(const CapacityProblem& p, const CapacityState& s);

using EpsilonSchedule = std::function<double(int step)>;
EpsilonSchedule constant_epsilon(double eps = 1e-9);

struct CapacityRow {
  int step = 0;
  double g_hat = 0.0;
  double gap_certificate = 0.0;  // log(n) / (step - 1); inf at step 1
  int inner_iters = 0;
  double wall_time_ms = 0.0;
};

struct CapacityReport {
  double capacity = 0.0;  // -g_hat(w_{T+1})
  std::vector<CapacityState> states;  // w_1 .. w_{T+1}
  std::vector<CapacityRow> rows;
  double certificate = 0.0;           // log(n) / T
  double inexactness_budget = 0.0;    // 2 * sum_t eps_t

  /// Columns: step,g_hat,gap_certificate,inner_iters,wall_time_ms.
  void write_csv(std::ostream& out, bool record_timing = true) const;
};

/// T outer steps from w_1 = 1/n.
CapacityReport solve_capacity(const CapacityProblem& p, int outer_steps,
                              const EpsilonSchedule& schedule = constant_epsilon(),
                              bool record_timing = true);

}  // namespace augustin

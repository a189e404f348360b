#pragma once

// Fixed-point iteration for the Petz-Augustin mean and its baselines.
//
// The operator T_F(U) = (sum_j w[j] A_j^a / Tr[A_j^a U])^{(1-a)/a} is a
// |1 - 1/a| contraction in the Thompson metric for a in (1/2,1) U (1,inf).
// Iterates are Q_{t+1} = T_F(Q_t^{1-a})^{1/(1-a)}; Q_t is carried without
// normalization and Q_t / Tr[Q_t] is reported.

#include <optional>
#include <vector>

#include "augustin/divergences.hpp"
#include "augustin/trace.hpp"

namespace augustin {

/// T_F(U) for positive-definite U. Throws Error{DegenerateTrace} when some
/// Tr[A_j^a U] falls below the floor.
HermitianMatrix apply_T_F(const AugustinProblem& p, const HermitianMatrix& u);

/// T_F(Q^{1-a})^{1/(1-a)} = (sum_j w[j] A_j^a / Tr[A_j^a Q^{1-a}])^{1/a}.
HermitianMatrix apply_step_map(const AugustinProblem& p, const HermitianMatrix& q);

struct IterateState {
  int step = 1;
  HermitianMatrix q;            // Q_t, not normalized
  HermitianMatrix q_power;      // Q_t^{1-a}
  RealVector power_traces;      // Tr[A_j^a Q_t^{1-a}]
  DensityMatrix q_normalized;   // Q_t / Tr[Q_t]
  ExtendedReal f_value;         // F(Q_t / Tr[Q_t])
  double trace = 0.0;
};

IterateState make_initial_state(const AugustinProblem& p, const HermitianMatrix& q1);

/// One application of the iteration; a single eigendecomposition yields both
/// Q_{t+1} and Q_{t+1}^{1-a}.
IterateState petz_augustin_step(const AugustinProblem& p, const IterateState& s);

enum class StopReason { MaxIter, FixedPointResidual, NonFinite };
const char* to_string(StopReason r);

enum class Renormalize {
  /// Rescale the carried iterate to unit trace only when a <= 1/2, where the
  /// unnormalized scale diverges geometrically. The normalized sequence is the
  /// same either way.
  Auto,
  Never,
  Always,
};

struct SolveOptions {
  int max_iter = 200;
  double residual_tol = 1e-10;
  Renormalize renormalize = Renormalize::Auto;
  bool record_timing = true;
};

struct SolveReport {
  IterationTrace trace;
  DensityMatrix final_state;
  HermitianMatrix final_unnormalized;
  bool converged = false;
  StopReason stop_reason = StopReason::MaxIter;
  /// False for a <= 1/2: no convergence guarantee.
  bool convergence_guaranteed = true;
  int degenerate_evaluations = 0;
  int steps = 0;
};

/// Runs until d_T(Q_{t+1}^{1-a}, Q_t^{1-a}) <= residual_tol or max_iter steps.
/// With a reference density matrix R, dist_to_reference is
/// d_T(R^{1-a}, (Q_t/Tr[Q_t])^{1-a}).
SolveReport solve_petz_augustin(const AugustinProblem& p, const DensityMatrix& q1,
                                const SolveOptions& options = {},
                                const std::optional<DensityMatrix>& reference = std::nullopt);

// ---- commuting case ----

PositiveVector apply_T_f(const ClassicalAugustinProblem& p, const PositiveVector& u);
RealVector apply_step_map(const ClassicalAugustinProblem& p, const RealVector& q);

struct ClassicalIterateState {
  int step = 1;
  RealVector q;
  RealVector q_power;
  RealVector power_traces;
  RealVector q_normalized;
  ExtendedReal f_value;
  double trace = 0.0;
};

ClassicalIterateState make_initial_state(const ClassicalAugustinProblem& p, const RealVector& q1);
ClassicalIterateState classical_augustin_step(const ClassicalAugustinProblem& p,
                                              const ClassicalIterateState& s);

struct ClassicalSolveReport {
  IterationTrace trace;
  RealVector final_state;
  RealVector final_unnormalized;
  bool converged = false;
  StopReason stop_reason = StopReason::MaxIter;
  bool convergence_guaranteed = true;
  int steps = 0;
};

ClassicalSolveReport solve_classical_augustin(
    const ClassicalAugustinProblem& p, const RealVector& q1, const SolveOptions& options = {},
    const std::optional<RealVector>& reference = std::nullopt);

// ---- dual iteration ----

/// mu(v) = (sum_j w[j] exp((1-a) v[j]) A_j^a)^{1/a}.
HermitianMatrix dual_mean(const AugustinProblem& p, const RealVector& v);

struct DualState {
  RealVector v;
  HermitianMatrix mu;
};

DualState make_dual_state(const AugustinProblem& p, RealVector v);
/// v_{t+1}[j] = D_a(A_j || mu(v_t)).
DualState cheng_dual_step(const AugustinProblem& p, const DualState& s);

/// H(v) = ((1-a)/a) sum_j w[j] v[j] - log Tr[mu(v)].
double dual_objective_H(const AugustinProblem& p, const RealVector& v);

// ---- baselines ----

/// grad f(q)[i] = -sum_j w[j] a_j[i]^a q[i]^{-a} / <a_j^a, q^{1-a}>.
RealVector classical_gradient(const ClassicalAugustinProblem& p, const RealVector& q);

/// Gradient of F at a positive-definite Q (Daleckii-Krein divided differences
/// of x -> x^{1-a}).
HermitianMatrix objective_gradient(const AugustinProblem& p, const HermitianMatrix& q);

/// Classical Augustin iteration q <- q * (-grad f(q)).
RealVector augustin_classical_baseline_step(const ClassicalAugustinProblem& p, const RealVector& q);

/// Entropic mirror step with Polyak step size
/// eta = max(f(q) - f_target, 0) / ||grad f(q)||_inf^2.
RealVector emd_polyak_step(const ClassicalAugustinProblem& p, const RealVector& q, double f_target);
DensityMatrix emd_polyak_step(const AugustinProblem& p, const DensityMatrix& q, double f_target);

struct PolyakOptions {
  int iterations = 1000;
  /// Target level is best-so-far minus `gap`; the gap is halved after
  /// `patience` steps without improvement.
  double initial_gap = 0.1;
  int patience = 10;
};

template <typename Iterate>
struct PolyakResult {
  Iterate best;
  double best_value = 0.0;
  int best_step = 0;
  std::vector<double> values;  // objective at every iterate, starting point included
};

PolyakResult<RealVector> solve_emd_polyak(const ClassicalAugustinProblem& p, const RealVector& q1,
                                          const PolyakOptions& options = {});
PolyakResult<DensityMatrix> solve_emd_polyak(const AugustinProblem& p, const DensityMatrix& q1,
                                             const PolyakOptions& options = {});

}  // namespace augustin

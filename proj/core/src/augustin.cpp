#include "augustin/augustin.hpp"

#include <chrono>
#include <cmath>

#include "augustin/error.hpp"
#include "augustin/parallel.hpp"

namespace augustin {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

RealVector powered_traces(const AugustinProblem& p, const HermitianMatrix& u) {
  RealVector t(static_cast<Eigen::Index>(p.size()));
  parallel_for(p.size(), [&](std::size_t j) {
    t(static_cast<Eigen::Index>(j)) = trace_product(p.powered_states()[j], u);
  });
  return t;
}

/// Tr[A_j^a U] must stay above kEigFloorRelative * Tr[A_j^a] * ||U||_F.
void check_traces(const AugustinProblem& p, const RealVector& t, double u_scale) {
  for (Eigen::Index j = 0; j < t.size(); ++j) {
    const double floor =
        kEigFloorRelative * p.powered_states()[static_cast<std::size_t>(j)].trace() * u_scale;
    if (!std::isfinite(t(j)) || t(j) <= floor) {
      throw Error(ErrorKind::DegenerateTrace,
                  "Tr[A_j^a U] = " + format_number(t(j)) + " for state " + std::to_string(j));
    }
  }
}

/// sum_j w[j] A_j^a / t_j.
HermitianMatrix weighted_sum(const AugustinProblem& p, const RealVector& t) {
  const Eigen::Index d = p.dim();
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (std::size_t j = 0; j < p.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    m += (p.weights()(jj) / t(jj)) * p.powered_states()[j].matrix();
  }
  return HermitianMatrix(m);
}

DensityMatrix normalized_state(const HermitianMatrix& q) {
  const double tr = q.trace();
  if (!(tr > 0.0) || !std::isfinite(tr)) {
    throw Error(ErrorKind::NonFinite, "iterate trace is " + format_number(tr));
  }
  return DensityMatrix::normalized(q);
}

/// F(Q / c) from traces of Q^{1-a}: (Q/c)^{1-a} = c^{a-1} Q^{1-a}.
ExtendedReal normalized_objective(const AugustinProblem& p, const RealVector& traces, double c) {
  const double scale = std::pow(c, p.alpha() - 1.0);
  return objective_from_traces(p.weights(), p.order(), traces * scale, kEigFloorRelative);
}

bool want_renormalize(Renormalize policy, Order order) {
  switch (policy) {
    case Renormalize::Always: return true;
    case Renormalize::Never: return false;
    case Renormalize::Auto: return !order.has_convergence_guarantee();
  }
  return false;
}

}  // namespace

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::MaxIter: return "MaxIter";
    case StopReason::FixedPointResidual: return "FixedPointResidual";
    case StopReason::NonFinite: return "NonFinite";
  }
  return "Unknown";
}

HermitianMatrix apply_T_F(const AugustinProblem& p, const HermitianMatrix& u) {
  if (u.dim() != p.dim()) throw Error(ErrorKind::InvalidInput, "dimension mismatch");
  const RealVector t = powered_traces(p, u);
  check_traces(p, t, u.matrix().norm());
  return matrix_power(weighted_sum(p, t), (1.0 - p.alpha()) / p.alpha());
}

HermitianMatrix apply_step_map(const AugustinProblem& p, const HermitianMatrix& q) {
  if (q.dim() != p.dim()) throw Error(ErrorKind::InvalidInput, "dimension mismatch");
  const HermitianMatrix u = matrix_power(q, p.order().complement());
  const RealVector t = powered_traces(p, u);
  check_traces(p, t, u.matrix().norm());
  return matrix_power(weighted_sum(p, t), 1.0 / p.alpha());
}

IterateState make_initial_state(const AugustinProblem& p, const HermitianMatrix& q1) {
  if (q1.dim() != p.dim()) throw Error(ErrorKind::InvalidInput, "dimension mismatch");
  IterateState s;
  s.step = 1;
  s.q = q1;
  s.q_power = matrix_power(q1, p.order().complement());
  s.power_traces = powered_traces(p, s.q_power);
  s.trace = q1.trace();
  s.q_normalized = normalized_state(q1);
  s.f_value = normalized_objective(p, s.power_traces, s.trace);
  return s;
}

IterateState petz_augustin_step(const AugustinProblem& p, const IterateState& s) {
  check_traces(p, s.power_traces, s.q_power.matrix().norm());
  const Spectrum sum = hermitian_eig(weighted_sum(p, s.power_traces));
  if (!(sum.smallest() > 0.0)) {
    throw Error(ErrorKind::SingularMatrix, "weighted sum of A_j^a lost positive definiteness");
  }
  const double alpha = p.alpha();
  IterateState next;
  next.step = s.step + 1;
  next.q = sum.apply([alpha](double x) { return std::pow(x, 1.0 / alpha); });
  next.q_power = sum.apply([alpha](double x) { return std::pow(x, (1.0 - alpha) / alpha); });
  next.power_traces = powered_traces(p, next.q_power);
  next.trace = next.q.trace();
  next.q_normalized = normalized_state(next.q);
  next.f_value = normalized_objective(p, next.power_traces, next.trace);
  return next;
}

SolveReport solve_petz_augustin(const AugustinProblem& p, const DensityMatrix& q1,
                                const SolveOptions& options,
                                const std::optional<DensityMatrix>& reference) {
  if (options.max_iter < 1) throw Error(ErrorKind::InvalidInput, "max_iter must be >= 1");
  const auto start = Clock::now();
  const bool renormalize = want_renormalize(options.renormalize, p.order());
  std::optional<HermitianMatrix> reference_power;
  if (reference) reference_power = matrix_power(reference->hermitian(), p.order().complement());

  SolveReport report;
  report.convergence_guaranteed = p.order().has_convergence_guarantee();

  auto record = [&](const IterateState& s, std::optional<double> residual) {
    TraceRow row;
    row.step = s.step;
    row.f_value = s.f_value.value();
    row.trace = s.trace;
    row.residual_thompson = residual;
    if (reference_power) {
      const HermitianMatrix normalized_power =
          s.q_power.scaled(std::pow(s.trace, p.alpha() - 1.0));
      row.dist_to_reference = thompson_metric_psd(*reference_power, normalized_power);
    }
    row.wall_time_ms = options.record_timing ? elapsed_ms(start) : 0.0;
    if (s.f_value.degenerate()) ++report.degenerate_evaluations;
    report.trace.rows.push_back(row);
  };

  auto rescale = [&](IterateState s) {
    const double c = s.trace;
    s.q = s.q.scaled(1.0 / c);
    s.q_power = s.q_power.scaled(std::pow(c, p.alpha() - 1.0));
    s.power_traces *= std::pow(c, p.alpha() - 1.0);
    return s;
  };

  IterateState current = make_initial_state(p, q1.hermitian());
  record(current, std::nullopt);
  report.stop_reason = StopReason::MaxIter;
  for (int it = 0; it < options.max_iter; ++it) {
    IterateState next;
    double residual = 0.0;
    try {
      next = petz_augustin_step(p, current);
      if (!next.f_value.is_finite() || !std::isfinite(next.f_value.value()) ||
          !std::isfinite(next.trace)) {
        throw Error(ErrorKind::NonFinite, "non-finite iterate");
      }
      residual = thompson_metric_psd(next.q_power, current.q_power);
    } catch (const Error&) {
      report.stop_reason = StopReason::NonFinite;
      break;
    }
    record(next, residual);
    ++report.steps;
    current = renormalize ? rescale(std::move(next)) : std::move(next);
    if (residual <= options.residual_tol) {
      report.stop_reason = StopReason::FixedPointResidual;
      report.converged = true;
      break;
    }
  }
  report.final_unnormalized = current.q;
  report.final_state = current.q_normalized;
  return report;
}

// ---- commuting case ----

namespace {

RealVector classical_traces(const ClassicalAugustinProblem& p, const RealVector& u) {
  return p.powered_points() * u;
}

void check_classical_traces(const ClassicalAugustinProblem& p, const RealVector& t,
                            double u_scale) {
  for (Eigen::Index j = 0; j < t.size(); ++j) {
    const double floor = kEigFloorRelative * p.powered_points().row(j).sum() * u_scale;
    if (!std::isfinite(t(j)) || t(j) <= floor) {
      throw Error(ErrorKind::DegenerateTrace, "<a_j^a, u> = " + format_number(t(j)));
    }
  }
}

RealVector classical_weighted_sum(const ClassicalAugustinProblem& p, const RealVector& t) {
  return p.powered_points().transpose() * p.weights().cwiseQuotient(t);
}

}  // namespace

PositiveVector apply_T_f(const ClassicalAugustinProblem& p, const PositiveVector& u) {
  if (u.size() != p.dim()) throw Error(ErrorKind::InvalidInput, "dimension mismatch");
  const RealVector t = classical_traces(p, u.values());
  check_classical_traces(p, t, u.values().maxCoeff());
  return PositiveVector(
      classical_weighted_sum(p, t).array().pow((1.0 - p.alpha()) / p.alpha()).matrix());
}

RealVector apply_step_map(const ClassicalAugustinProblem& p, const RealVector& q) {
  const RealVector u = PositiveVector(q).values().array().pow(p.order().complement()).matrix();
  const RealVector t = classical_traces(p, u);
  check_classical_traces(p, t, u.maxCoeff());
  return classical_weighted_sum(p, t).array().pow(1.0 / p.alpha()).matrix();
}

ClassicalIterateState make_initial_state(const ClassicalAugustinProblem& p, const RealVector& q1) {
  if (q1.size() != p.dim()) throw Error(ErrorKind::InvalidInput, "dimension mismatch");
  ClassicalIterateState s;
  s.q = PositiveVector(q1).values();
  s.q_power = s.q.array().pow(p.order().complement()).matrix();
  s.power_traces = classical_traces(p, s.q_power);
  s.trace = s.q.sum();
  s.q_normalized = s.q / s.trace;
  s.f_value = objective_from_traces(p.weights(), p.order(),
                                    s.power_traces * std::pow(s.trace, p.alpha() - 1.0),
                                    kEigFloorRelative);
  return s;
}

ClassicalIterateState classical_augustin_step(const ClassicalAugustinProblem& p,
                                              const ClassicalIterateState& s) {
  check_classical_traces(p, s.power_traces, s.q_power.maxCoeff());
  const RealVector sum = classical_weighted_sum(p, s.power_traces);
  const double alpha = p.alpha();
  ClassicalIterateState next;
  next.step = s.step + 1;
  next.q = sum.array().pow(1.0 / alpha).matrix();
  next.q_power = sum.array().pow((1.0 - alpha) / alpha).matrix();
  next.power_traces = classical_traces(p, next.q_power);
  next.trace = next.q.sum();
  if (!(next.trace > 0.0) || !std::isfinite(next.trace)) {
    throw Error(ErrorKind::NonFinite, "iterate trace is " + format_number(next.trace));
  }
  next.q_normalized = next.q / next.trace;
  next.f_value = objective_from_traces(p.weights(), p.order(),
                                       next.power_traces * std::pow(next.trace, alpha - 1.0),
                                       kEigFloorRelative);
  return next;
}

ClassicalSolveReport solve_classical_augustin(const ClassicalAugustinProblem& p,
                                              const RealVector& q1, const SolveOptions& options,
                                              const std::optional<RealVector>& reference) {
  if (options.max_iter < 1) throw Error(ErrorKind::InvalidInput, "max_iter must be >= 1");
  const auto start = Clock::now();
  const bool renormalize = want_renormalize(options.renormalize, p.order());
  std::optional<RealVector> reference_power;
  if (reference) reference_power = reference->array().pow(p.order().complement()).matrix();

  ClassicalSolveReport report;
  report.convergence_guaranteed = p.order().has_convergence_guarantee();
  auto record = [&](const ClassicalIterateState& s, std::optional<double> residual) {
    TraceRow row;
    row.step = s.step;
    row.f_value = s.f_value.value();
    row.trace = s.trace;
    row.residual_thompson = residual;
    if (reference_power) {
      row.dist_to_reference = thompson_metric_vec(
          *reference_power, RealVector(s.q_normalized.array().pow(p.order().complement())));
    }
    row.wall_time_ms = options.record_timing ? elapsed_ms(start) : 0.0;
    report.trace.rows.push_back(row);
  };

  ClassicalIterateState current = make_initial_state(p, q1);
  record(current, std::nullopt);
  for (int it = 0; it < options.max_iter; ++it) {
    ClassicalIterateState next;
    double residual = 0.0;
    try {
      next = classical_augustin_step(p, current);
      if (!next.f_value.is_finite() || !next.q.allFinite() || !(next.q.minCoeff() > 0.0)) {
        throw Error(ErrorKind::NonFinite, "non-finite iterate");
      }
      residual = thompson_metric_vec(next.q_power, current.q_power);
    } catch (const Error&) {
      report.stop_reason = StopReason::NonFinite;
      break;
    }
    record(next, residual);
    ++report.steps;
    if (renormalize) {
      const double c = next.trace;
      next.q /= c;
      next.q_power *= std::pow(c, p.alpha() - 1.0);
      next.power_traces *= std::pow(c, p.alpha() - 1.0);
    }
    current = std::move(next);
    if (residual <= options.residual_tol) {
      report.stop_reason = StopReason::FixedPointResidual;
      report.converged = true;
      break;
    }
  }
  report.final_unnormalized = current.q;
  report.final_state = current.q_normalized;
  return report;
}

// ---- dual iteration ----

namespace {

/// mu(v) written as exp(shift / a) * M^{1/a} with the largest exponent removed.
struct ShiftedDualSum {
  HermitianMatrix sum;
  double shift = 0.0;
};

ShiftedDualSum shifted_dual_sum(const AugustinProblem& p, const RealVector& v) {
  if (static_cast<std::size_t>(v.size()) != p.size()) {
    throw Error(ErrorKind::InvalidInput, "dual vector needs one entry per state");
  }
  if (!v.allFinite()) throw Error(ErrorKind::NonFinite, "non-finite dual vector");
  const double c = (p.order().complement() * v).maxCoeff();
  ComplexMatrix m = ComplexMatrix::Zero(p.dim(), p.dim());
  for (std::size_t j = 0; j < p.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    m += p.weights()(jj) * std::exp(p.order().complement() * v(jj) - c) *
         p.powered_states()[j].matrix();
  }
  return {HermitianMatrix(m), c};
}

}  // namespace

HermitianMatrix dual_mean(const AugustinProblem& p, const RealVector& v) {
  const ShiftedDualSum s = shifted_dual_sum(p, v);
  return matrix_power(s.sum, 1.0 / p.alpha()).scaled(std::exp(s.shift / p.alpha()));
}

DualState make_dual_state(const AugustinProblem& p, RealVector v) {
  HermitianMatrix mu = dual_mean(p, v);
  return {std::move(v), std::move(mu)};
}

DualState cheng_dual_step(const AugustinProblem& p, const DualState& s) {
  const auto divergences = state_divergences(p, s.mu);
  RealVector v(static_cast<Eigen::Index>(p.size()));
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (divergences[j].is_infinite()) {
      throw Error(ErrorKind::NonFinite, "infinite divergence in dual step");
    }
    v(static_cast<Eigen::Index>(j)) = divergences[j].value();
  }
  return make_dual_state(p, std::move(v));
}

double dual_objective_H(const AugustinProblem& p, const RealVector& v) {
  const ShiftedDualSum s = shifted_dual_sum(p, v);
  const double alpha = p.alpha();
  const double linear = (1.0 - alpha) / alpha * p.weights().dot(v);
  return linear - s.shift / alpha - std::log(matrix_power(s.sum, 1.0 / alpha).trace());
}

// ---- baselines ----

RealVector classical_gradient(const ClassicalAugustinProblem& p, const RealVector& q) {
  const RealVector u = PositiveVector(q).values().array().pow(p.order().complement()).matrix();
  const RealVector t = classical_traces(p, u);
  const RealVector sum = classical_weighted_sum(p, t);
  return -(sum.array() * q.array().pow(-p.alpha())).matrix();
}

HermitianMatrix objective_gradient(const AugustinProblem& p, const HermitianMatrix& q) {
  const Spectrum s = hermitian_eig(q);
  if (s.smallest() < s.floor() || s.smallest() <= 0.0) {
    throw Error(ErrorKind::SingularMatrix, "gradient needs a positive-definite argument");
  }
  const double power = p.order().complement();
  const RealVector t = powered_traces(p, matrix_power(s, power));
  check_traces(p, t, 1.0);
  const HermitianMatrix sum = weighted_sum(p, t);
  const Eigen::Index d = s.dim();
  ComplexMatrix rotated = s.vectors.adjoint() * sum.matrix() * s.vectors;
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index i = 0; i < d; ++i) {
      const double li = s.values(i);
      const double lk = s.values(k);
      double divided;
      if (std::abs(li - lk) <= 1e-10 * std::max(li, lk)) {
        divided = power * std::pow(0.5 * (li + lk), power - 1.0);
      } else {
        divided = (std::pow(li, power) - std::pow(lk, power)) / (li - lk);
      }
      rotated(i, k) *= divided;
    }
  }
  return HermitianMatrix(
      ComplexMatrix(s.vectors * rotated * s.vectors.adjoint() / (p.alpha() - 1.0)));
}

RealVector augustin_classical_baseline_step(const ClassicalAugustinProblem& p,
                                            const RealVector& q) {
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    if (!(q(i) > 0.0)) throw Error(ErrorKind::InvalidInput, "baseline needs a positive iterate");
  }
  return q.cwiseProduct(-classical_gradient(p, q));
}

RealVector emd_polyak_step(const ClassicalAugustinProblem& p, const RealVector& q,
                           double f_target) {
  const RealVector g = classical_gradient(p, q);
  if (!g.allFinite()) throw Error(ErrorKind::NonFinite, "non-finite gradient");
  const double norm = g.cwiseAbs().maxCoeff();
  const double value = objective_f(p, q).value();
  if (norm == 0.0 || !(value > f_target)) return q;
  const double eta = (value - f_target) / (norm * norm);
  RealVector logits = q.array().log().matrix() - eta * g;
  logits.array() -= logits.maxCoeff();
  RealVector next = logits.array().exp().matrix();
  return next / next.sum();
}

DensityMatrix emd_polyak_step(const AugustinProblem& p, const DensityMatrix& q, double f_target) {
  const HermitianMatrix g = objective_gradient(p, q.hermitian());
  if (!g.matrix().allFinite()) throw Error(ErrorKind::NonFinite, "non-finite gradient");
  const double norm = hermitian_eigenvalues(g).cwiseAbs().maxCoeff();
  const double value = objective_F(p, q.hermitian()).value();
  if (norm == 0.0 || !(value > f_target)) return q;
  const double eta = (value - f_target) / (norm * norm);
  const Spectrum logits = hermitian_eig(matrix_log(q.hermitian()) - g.scaled(eta));
  const double top = logits.largest();
  return DensityMatrix::normalized(logits.apply([top](double x) { return std::exp(x - top); }));
}

namespace {

template <typename Problem, typename Iterate, typename Objective>
PolyakResult<Iterate> run_polyak(const Problem& p, const Iterate& q1, const PolyakOptions& options,
                                 Objective&& objective) {
  PolyakResult<Iterate> result;
  Iterate q = q1;
  result.best = q;
  result.best_value = objective(q);
  result.values.push_back(result.best_value);
  double gap = options.initial_gap;
  int stale = 0;
  for (int it = 1; it <= options.iterations; ++it) {
    q = emd_polyak_step(p, q, result.best_value - gap);
    const double value = objective(q);
    result.values.push_back(value);
    if (value < result.best_value) {
      result.best_value = value;
      result.best = q;
      result.best_step = it;
      stale = 0;
    } else if (++stale >= options.patience) {
      gap *= 0.5;
      stale = 0;
    }
  }
  return result;
}

}  // namespace

PolyakResult<RealVector> solve_emd_polyak(const ClassicalAugustinProblem& p, const RealVector& q1,
                                          const PolyakOptions& options) {
  return run_polyak(p, q1, options,
                    [&](const RealVector& q) { return objective_f(p, q).value(); });
}

PolyakResult<DensityMatrix> solve_emd_polyak(const AugustinProblem& p, const DensityMatrix& q1,
                                             const PolyakOptions& options) {
  return run_polyak(p, q1, options,
                    [&](const DensityMatrix& q) { return objective_F(p, q.hermitian()).value(); });
}

}  // namespace augustin

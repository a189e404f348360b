#include "augustin/capacity.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "augustin/error.hpp"

namespace augustin {

namespace {

Order checked_capacity_order(Order order) {
  if (!(order.value() > 0.5 && order.value() < 1.0)) {
    throw Error(ErrorKind::InvalidOrder, "capacity needs order in (1/2, 1)");
  }
  return order;
}

RealVector uniform(std::size_t n) {
  return RealVector::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n));
}

}  // namespace

CapacityProblem::CapacityProblem(std::vector<DensityMatrix> states, Order order)
    : base_([&] {
        const std::size_t n = states.size();
        if (n == 0) throw Error(ErrorKind::InvalidInput, "need at least one state");
        return AugustinProblem(std::move(states), uniform(n), checked_capacity_order(order));
      }()) {}

int inner_iterations(Order order, double d0, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidInput, "oracle accuracy must be positive");
  const double k = order.contraction_factor();
  if (!(d0 > 0.0)) return 1;
  const double needed = std::log(2.0 * d0 / (std::abs(order.complement()) * eps)) / std::log(1.0 / k);
  return std::max(1, static_cast<int>(std::ceil(needed)));
}

OracleResult approx_oracle(const CapacityProblem& p, const RealVector& w, double eps) {
  const AugustinProblem problem = p.at(w);
  const double alpha = problem.alpha();
  const double k = problem.order().contraction_factor();

  IterateState state = make_initial_state(problem, DensityMatrix::maximally_mixed(p.dim()));
  IterateState next = petz_augustin_step(problem, state);
  const double first_move = thompson_metric_psd(next.q_power, state.q_power);

  OracleResult out;
  out.initial_bound = first_move / (1.0 - k);
  out.inner_iters = inner_iterations(problem.order(), out.initial_bound, eps);
  state = std::move(next);
  for (int t = 1; t < out.inner_iters; ++t) state = petz_augustin_step(problem, state);

  // D_a(A_j || Q/Tr Q) from the cached traces of Q^{1-a}.
  const double scale = std::pow(state.trace, alpha - 1.0);
  out.grad_hat.resize(static_cast<Eigen::Index>(p.size()));
  for (Eigen::Index j = 0; j < out.grad_hat.size(); ++j) {
    out.grad_hat(j) = -std::log(state.power_traces(j) * scale) / (alpha - 1.0);
  }
  if (!out.grad_hat.allFinite()) throw Error(ErrorKind::NonFinite, "non-finite oracle gradient");
  out.g_hat = w.dot(out.grad_hat);
  out.mean = state.q_normalized;
  return out;
}

RealVector mirror_update(const RealVector& w, const RealVector& grad) {
  if (w.size() != grad.size()) throw Error(ErrorKind::InvalidInput, "dimension mismatch");
  if (!grad.allFinite()) throw Error(ErrorKind::NonFinite, "non-finite gradient");
  RealVector exponent = -grad;
  exponent.array() -= exponent.maxCoeff();
  RealVector next = w.cwiseProduct(RealVector(exponent.array().exp()));
  return next / next.sum();
}

CapacityState make_capacity_state(const CapacityProblem& p, RealVector w, double eps) {
  const OracleResult oracle = approx_oracle(p, w, eps);
  CapacityState s;
  s.w = std::move(w);
  s.g_hat = oracle.g_hat;
  s.grad_hat = oracle.grad_hat;
  s.inner_eps = eps;
  s.inner_iters = oracle.inner_iters;
  return s;
}

CapacityState emd_capacity_step(const CapacityProblem& p, const CapacityState& s, double eps) {
  CapacityState next = make_capacity_state(p, mirror_update(s.w, s.grad_hat), eps);
  next.step = s.step + 1;
  return next;
}

CapacityState emd_capacity_step(const CapacityProblem& p, const CapacityState& s) {
  return emd_capacity_step(p, s, s.inner_eps);
}

EpsilonSchedule constant_epsilon(double eps) {
  return [eps](int) { return eps; };
}

void CapacityReport::write_csv(std::ostream& out, bool record_timing) const {
  out << "step,g_hat,gap_certificate,inner_iters,wall_time_ms\n";
  for (const auto& r : rows) {
    out << r.step << ',' << format_number(r.g_hat) << ',' << format_number(r.gap_certificate)
        << ',' << r.inner_iters << ',' << format_number(record_timing ? r.wall_time_ms : 0.0)
        << '\n';
  }
}

CapacityReport solve_capacity(const CapacityProblem& p, int outer_steps,
                              const EpsilonSchedule& schedule, bool record_timing) {
  if (outer_steps < 1) throw Error(ErrorKind::InvalidInput, "need at least one outer step");
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const double log_n = std::log(static_cast<double>(p.size()));

  CapacityReport report;
  auto record = [&](const CapacityState& s) {
    CapacityRow row;
    row.step = s.step;
    row.g_hat = s.g_hat;
    row.gap_certificate = s.step == 1 ? std::numeric_limits<double>::infinity()
                                      : log_n / static_cast<double>(s.step - 1);
    row.inner_iters = s.inner_iters;
    row.wall_time_ms =
        record_timing ? std::chrono::duration<double, std::milli>(Clock::now() - start).count()
                      : 0.0;
    report.rows.push_back(row);
    report.states.push_back(s);
  };

  double eps = schedule(1);
  CapacityState state = make_capacity_state(p, uniform(p.size()), eps);
  record(state);
  for (int t = 1; t <= outer_steps; ++t) {
    report.inexactness_budget += 2.0 * eps;
    eps = schedule(t + 1);
    state = emd_capacity_step(p, state, eps);
    record(state);
  }
  report.capacity = -state.g_hat;
  report.certificate = log_n / static_cast<double>(outer_steps);
  return report;
}

}  // namespace augustin

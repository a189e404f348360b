#include "augustin/divergences.hpp"

#include <cmath>
#include <string>

#include "augustin/error.hpp"
#include "augustin/parallel.hpp"

namespace augustin {

Order::Order(double alpha) : alpha_(alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha == 1.0) {
    throw Error(ErrorKind::InvalidOrder,
                "order must lie in (0,1) U (1,inf), got " + std::to_string(alpha));
  }
}

double Order::contraction_factor() const { return std::abs(1.0 - 1.0 / alpha_); }

namespace {

void validate_weights(const RealVector& w, std::size_t n) {
  if (static_cast<std::size_t>(w.size()) != n || n == 0) {
    throw Error(ErrorKind::InvalidInput, "need one weight per state");
  }
  for (Eigen::Index j = 0; j < w.size(); ++j) {
    if (!(w(j) > 0.0) || !std::isfinite(w(j))) {
      throw Error(ErrorKind::InvalidInput, "weights must be strictly positive");
    }
  }
  if (std::abs(w.sum() - 1.0) > AugustinProblem::kWeightTol) {
    throw Error(ErrorKind::InvalidInput, "weights must sum to 1");
  }
}

/// Q^{1-alpha} restricted to the support of Q, plus the kernel projector when
/// Q is singular.
struct PoweredArgument {
  HermitianMatrix power;
  HermitianMatrix kernel;
  bool singular = false;
  double floor = 0.0;
  double power_scale = 0.0;
};

PoweredArgument prepare_argument(const HermitianMatrix& q, Order order) {
  const Spectrum s = hermitian_eig(q);
  if (s.smallest() < -DensityMatrix::kTol * std::max(1.0, s.largest())) {
    throw Error(ErrorKind::InvalidInput, "divergence argument must be positive semi-definite");
  }
  if (!(s.largest() > 0.0)) throw Error(ErrorKind::InvalidInput, "divergence argument is zero");
  PoweredArgument arg;
  arg.floor = s.floor();
  arg.singular = s.smallest() <= arg.floor;
  arg.power = psd_power(s, order.complement());
  if (arg.singular) {
    const double floor = arg.floor;
    arg.kernel = s.apply([floor](double x) { return x <= floor ? 1.0 : 0.0; });
    arg.power_scale = std::pow(s.largest(), order.complement());
  }
  return arg;
}

ExtendedReal divergence_with(const HermitianMatrix& a, const HermitianMatrix& a_pow,
                             const PoweredArgument& arg, Order order) {
  if (arg.singular && order.value() > 1.0) {
    const double leak = trace_product(arg.kernel, a);
    if (leak > kEigFloorRelative * std::max(a.trace(), 1e-300)) return ExtendedReal::infinity();
  }
  const double t = trace_product(a_pow, arg.power);
  if (arg.singular && order.value() < 1.0 &&
      t <= kEigFloorRelative * a_pow.trace() * arg.power_scale) {
    return ExtendedReal::infinity();
  }
  if (!(t > 0.0) || !std::isfinite(t)) {
    return ExtendedReal::finite(std::log(arg.floor) / (order.value() - 1.0), true);
  }
  return ExtendedReal::finite(std::log(t) / (order.value() - 1.0));
}

}  // namespace

AugustinProblem::AugustinProblem(std::vector<HermitianMatrix> states, RealVector weights,
                                 Order order, PsdTag)
    : states_(std::move(states)), weights_(std::move(weights)), order_(order) {
  if (states_.empty()) throw Error(ErrorKind::InvalidInput, "need at least one state");
  validate_weights(weights_, states_.size());
  const Eigen::Index d = states_.front().dim();
  HermitianMatrix total = HermitianMatrix(ComplexMatrix(ComplexMatrix::Zero(d, d)));
  powered_.reserve(states_.size());
  for (const auto& a : states_) {
    if (a.dim() != d) throw Error(ErrorKind::InvalidInput, "states differ in dimension");
    powered_.push_back(psd_power(a, order_.value()));
    total = total + a;
  }
  const RealVector lambda = hermitian_eigenvalues(total);
  if (!(lambda(d - 1) > kEigFloorRelative * lambda(0))) {
    throw Error(ErrorKind::InvalidInput, "sum of states must be full rank");
  }
}

AugustinProblem::AugustinProblem(std::vector<DensityMatrix> states, RealVector weights,
                                 Order order)
    : AugustinProblem(
          [&] {
            std::vector<HermitianMatrix> raw;
            raw.reserve(states.size());
            for (auto& s : states) raw.push_back(s.hermitian());
            return raw;
          }(),
          std::move(weights), order, PsdTag{}) {}

AugustinProblem AugustinProblem::with_unnormalized_states(std::vector<HermitianMatrix> states,
                                                          RealVector weights, Order order) {
  return AugustinProblem(std::move(states), std::move(weights), order, PsdTag{});
}

AugustinProblem AugustinProblem::reweighted(RealVector weights) const {
  validate_weights(weights, states_.size());
  AugustinProblem copy = *this;
  copy.weights_ = std::move(weights);
  return copy;
}

ClassicalAugustinProblem::ClassicalAugustinProblem(RealMatrix points, RealVector weights,
                                                   Order order)
    : points_(std::move(points)), weights_(std::move(weights)), order_(order) {
  if (points_.rows() == 0 || points_.cols() == 0) {
    throw Error(ErrorKind::InvalidInput, "need at least one point of positive dimension");
  }
  validate_weights(weights_, static_cast<std::size_t>(points_.rows()));
  if (!points_.allFinite() || points_.minCoeff() < 0.0) {
    throw Error(ErrorKind::InvalidInput, "points must be finite and nonnegative");
  }
  for (Eigen::Index j = 0; j < points_.rows(); ++j) {
    if (std::abs(points_.row(j).sum() - 1.0) > AugustinProblem::kWeightTol) {
      throw Error(ErrorKind::InvalidInput, "each point must sum to 1");
    }
  }
  if (!(points_.colwise().sum().minCoeff() > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "sum of points must be strictly positive");
  }
  powered_ = points_.array().pow(order_.value()).matrix();
}

AugustinProblem ClassicalAugustinProblem::embedded() const {
  std::vector<DensityMatrix> states;
  states.reserve(size());
  for (Eigen::Index j = 0; j < points_.rows(); ++j) {
    states.push_back(DensityMatrix::diagonal(points_.row(j).transpose()));
  }
  return AugustinProblem(std::move(states), weights_, order_);
}

ExtendedReal petz_renyi_divergence(const HermitianMatrix& a, const HermitianMatrix& q,
                                   Order order) {
  if (a.dim() != q.dim()) throw Error(ErrorKind::InvalidInput, "dimension mismatch");
  const PoweredArgument arg = prepare_argument(q, order);
  return divergence_with(a, psd_power(a, order.value()), arg, order);
}

ExtendedReal classical_renyi_divergence(const RealVector& a, const RealVector& q, Order order) {
  if (a.size() != q.size()) throw Error(ErrorKind::InvalidInput, "dimension mismatch");
  const double alpha = order.value();
  double t = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (q(i) < 0.0 || a(i) < 0.0) throw Error(ErrorKind::InvalidInput, "negative entry");
    if (a(i) == 0.0) continue;
    if (q(i) == 0.0) {
      if (alpha > 1.0) return ExtendedReal::infinity();
      continue;
    }
    t += std::pow(a(i), alpha) * std::pow(q(i), 1.0 - alpha);
  }
  if (!(t > 0.0)) return ExtendedReal::infinity();
  return ExtendedReal::finite(std::log(t) / (alpha - 1.0));
}

std::vector<ExtendedReal> state_divergences(const AugustinProblem& p, const HermitianMatrix& q) {
  if (q.dim() != p.dim()) throw Error(ErrorKind::InvalidInput, "dimension mismatch");
  const PoweredArgument arg = prepare_argument(q, p.order());
  std::vector<ExtendedReal> out(p.size());
  parallel_for(p.size(), [&](std::size_t j) {
    out[j] = divergence_with(p.states()[j], p.powered_states()[j], arg, p.order());
  });
  return out;
}

ExtendedReal objective_F(const AugustinProblem& p, const HermitianMatrix& q) {
  const auto terms = state_divergences(p, q);
  ExtendedReal total = ExtendedReal::finite(0.0);
  for (std::size_t j = 0; j < terms.size(); ++j) total += p.weights()(j) * terms[j];
  return total;
}

ExtendedReal objective_f(const ClassicalAugustinProblem& p, const RealVector& q) {
  if (q.size() != p.dim()) throw Error(ErrorKind::InvalidInput, "dimension mismatch");
  ExtendedReal total = ExtendedReal::finite(0.0);
  for (Eigen::Index j = 0; j < p.points().rows(); ++j) {
    total += p.weights()(j) * classical_renyi_divergence(p.points().row(j).transpose(), q, p.order());
  }
  return total;
}

ExtendedReal objective_from_traces(const RealVector& weights, Order order, const RealVector& traces,
                                   double clamp_floor) {
  ExtendedReal total = ExtendedReal::finite(0.0);
  const double scale = 1.0 / (order.value() - 1.0);
  for (Eigen::Index j = 0; j < traces.size(); ++j) {
    const double t = traces(j);
    const bool clamp = !(t > 0.0) || !std::isfinite(t);
    total += weights(j) * ExtendedReal::finite(scale * std::log(clamp ? clamp_floor : t), clamp);
  }
  return total;
}

}  // namespace augustin

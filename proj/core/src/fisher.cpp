#include "augustin/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "augustin/error.hpp"
#include "augustin/trace.hpp"

namespace augustin {

namespace {

constexpr double kSimplexTol = 1e-12;

void require_positive_prices(const FisherMarket& m, const RealVector& p) {
  if (p.size() != m.n_goods()) throw Error(ErrorKind::InvalidInput, "price vector has wrong length");
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!(p(i) > 0.0) || !std::isfinite(p(i))) {
      throw Error(ErrorKind::InvalidInput, "prices must be positive and finite");
    }
  }
}

}  // namespace

FisherMarket::FisherMarket(RealMatrix valuations, RealVector budgets, RealVector rho,
                           RealVector rho_hat)
    : valuations_(std::move(valuations)),
      budgets_(std::move(budgets)),
      rho_(std::move(rho)),
      rho_hat_(std::move(rho_hat)) {
  const Eigen::Index n = valuations_.rows();
  const Eigen::Index d = valuations_.cols();
  if (n == 0 || d == 0) throw Error(ErrorKind::InvalidInput, "market needs buyers and goods");
  if (budgets_.size() != n || rho_.size() != n) {
    throw Error(ErrorKind::InvalidInput, "budgets and rho need one entry per buyer");
  }
  if (rho_hat_.size() != d) throw Error(ErrorKind::InvalidInput, "rho_hat needs one entry per good");
  if (!valuations_.allFinite() || !budgets_.allFinite() || !rho_.allFinite() ||
      !rho_hat_.allFinite()) {
    throw Error(ErrorKind::InvalidInput, "non-finite market data");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (valuations_.row(j).minCoeff() < 0.0 ||
        std::abs(valuations_.row(j).sum() - 1.0) > kSimplexTol) {
      throw Error(ErrorKind::InvalidInput, "each valuation must lie on the simplex");
    }
    if (!(budgets_(j) > 0.0)) throw Error(ErrorKind::InvalidInput, "budgets must be positive");
    if (!(rho_(j) > 0.0 && rho_(j) < 1.0)) {
      throw Error(ErrorKind::InvalidInput, "elasticities must lie in (0, 1)");
    }
  }
  if (std::abs(budgets_.sum() - 1.0) > kSimplexTol) {
    throw Error(ErrorKind::InvalidInput, "budgets must sum to 1");
  }
  if (!(valuations_.colwise().sum().minCoeff() > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "every good needs a buyer with positive valuation");
  }
  const double rho_max = rho_.maxCoeff();
  for (Eigen::Index i = 0; i < d; ++i) {
    if (!(rho_hat_(i) >= rho_max && rho_hat_(i) < 1.0)) {
      throw Error(ErrorKind::InvalidInput, "rho_hat must lie in [max rho, 1)");
    }
  }
  powered_.resize(n, d);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double e = 1.0 / (1.0 - rho_(j));
    powered_.row(j) = valuations_.row(j).array().pow(e);
  }
}

FisherMarket FisherMarket::homogeneous(RealMatrix valuations, RealVector budgets, double rho) {
  const Eigen::Index n = valuations.rows();
  const Eigen::Index d = valuations.cols();
  return FisherMarket(std::move(valuations), std::move(budgets), RealVector::Constant(n, rho),
                      RealVector::Constant(d, rho));
}

bool FisherMarket::common_elasticity() const {
  return (rho_.array() == rho_(0)).all();
}

RealVector buyer_demand(const FisherMarket& m, Eigen::Index j, const RealVector& p) {
  require_positive_prices(m, p);
  if (j < 0 || j >= m.n_buyers()) throw Error(ErrorKind::InvalidInput, "buyer index out of range");
  const double e = 1.0 / (1.0 - m.rho()(j));
  const RealVector scaled = m.powered_.row(j).transpose().cwiseProduct(RealVector(p.array().pow(-e)));
  const double denom = scaled.dot(p);
  return m.budgets()(j) * scaled / denom;
}

RealVector total_demand(const FisherMarket& m, const RealVector& p) {
  RealVector x = RealVector::Zero(m.n_goods());
  for (Eigen::Index j = 0; j < m.n_buyers(); ++j) x += buyer_demand(m, j, p);
  return x;
}

double potential(const FisherMarket& m, const RealVector& p) {
  require_positive_prices(m, p);
  double value = p.sum();
  for (Eigen::Index j = 0; j < m.n_buyers(); ++j) {
    const double r = m.rho()(j);
    const double inner =
        m.powered_.row(j).dot(RealVector(p.array().pow(-r / (1.0 - r))));
    value += m.budgets()(j) * ((1.0 - r) / r) * std::log(inner);
  }
  return value;
}

PriceState make_price_state(const FisherMarket& m, RealVector p1) {
  require_positive_prices(m, p1);
  PriceState s;
  s.p = std::move(p1);
  s.epoch_count_per_good = Eigen::VectorXi::Zero(m.n_goods());
  return s;
}

PriceState tatonnement_step(const FisherMarket& m, const PriceState& s,
                            const std::vector<int>& goods) {
  if (goods.empty()) throw Error(ErrorKind::InvalidInput, "update set must be non-empty");
  const RealVector x = total_demand(m, s.p);
  PriceState next = s;
  next.step = s.step + 1;
  for (int i : goods) {
    if (i < 0 || i >= m.n_goods()) throw Error(ErrorKind::InvalidInput, "good index out of range");
    next.p(i) = s.p(i) * std::pow(x(i), 1.0 - m.rho_hat()(i));
    if (!(next.p(i) > 0.0) || !std::isfinite(next.p(i))) {
      throw Error(ErrorKind::NonFinite, "price left the positive reals");
    }
    next.epoch_count_per_good(i) += 1;
  }
  return next;
}

UpdateSchedule UpdateSchedule::synchronous(int goods, int rounds) {
  std::vector<int> all(static_cast<std::size_t>(goods));
  for (int i = 0; i < goods; ++i) all[static_cast<std::size_t>(i)] = i;
  return UpdateSchedule{std::vector<std::vector<int>>(static_cast<std::size_t>(rounds), all)};
}

UpdateSchedule UpdateSchedule::round_robin(int goods, int epochs) {
  UpdateSchedule s;
  for (int e = 0; e < epochs; ++e) {
    for (int i = 0; i < goods; ++i) s.rounds.push_back({i});
  }
  return s;
}

UpdateSchedule UpdateSchedule::random_coverage(int goods, int rounds, std::uint64_t seed,
                                               double prob) {
  GaussianSource source(seed);
  UpdateSchedule s;
  for (int r = 0; r < rounds; ++r) {
    std::vector<int> round;
    for (int i = 0; i < goods; ++i) {
      if (source.uniform() < prob) round.push_back(i);
    }
    if (round.empty()) {
      round.push_back(std::min(goods - 1, static_cast<int>(source.uniform() * goods)));
    }
    s.rounds.push_back(std::move(round));
  }
  return s;
}

void UpdateSchedule::validate(int goods) const {
  for (const auto& round : rounds) {
    if (round.empty()) throw Error(ErrorKind::InvalidInput, "schedule round is empty");
    for (int i : round) {
      if (i < 0 || i >= goods) throw Error(ErrorKind::InvalidInput, "schedule index out of range");
    }
  }
}

std::vector<int> epoch_boundaries(const UpdateSchedule& sched, int goods) {
  sched.validate(goods);
  std::vector<char> seen(static_cast<std::size_t>(goods), 0);
  int missing = goods;
  std::vector<int> out;
  for (std::size_t r = 0; r < sched.rounds.size(); ++r) {
    for (int i : sched.rounds[r]) {
      char& flag = seen[static_cast<std::size_t>(i)];
      if (!flag) flag = 1, --missing;
    }
    if (missing == 0) {
      out.push_back(static_cast<int>(r) + 1);
      std::fill(seen.begin(), seen.end(), 0);
      missing = goods;
    }
  }
  return out;
}

int ScheduleRun::epoch_of_round(int round) const {
  const auto it = std::lower_bound(boundaries.begin(), boundaries.end(), round);
  return static_cast<int>(it - boundaries.begin()) + 1;
}

ScheduleRun run_schedule(const FisherMarket& m, const RealVector& p1, const UpdateSchedule& sched) {
  const int d = static_cast<int>(m.n_goods());
  ScheduleRun run;
  run.boundaries = epoch_boundaries(sched, d);
  run.unbounded_epoch = run.boundaries.empty();
  run.states.reserve(sched.rounds.size() + 1);
  run.states.push_back(make_price_state(m, p1));
  for (const auto& round : sched.rounds) {
    run.states.push_back(tatonnement_step(m, run.states.back(), round));
  }
  return run;
}

RealVector cheung_baseline_step(const FisherMarket& m, const RealVector& p) {
  if (!m.common_elasticity()) {
    throw Error(ErrorKind::InvalidInput, "baseline needs a common elasticity");
  }
  return p.cwiseProduct(total_demand(m, p));
}

ClassicalAugustinProblem augustin_dictionary(const FisherMarket& m) {
  if (!m.common_elasticity()) {
    throw Error(ErrorKind::InvalidInput, "dictionary needs a common elasticity");
  }
  return ClassicalAugustinProblem(m.valuations(), m.budgets(), Order(1.0 / (1.0 - m.rho()(0))));
}

ComparabilityCheck metric_comparability_check(const RealVector& u, const RealVector& v) {
  const PositiveVector pu(u);
  const PositiveVector pv(v);
  if (pu.size() != pv.size()) throw Error(ErrorKind::InvalidInput, "dimension mismatch");
  ComparabilityCheck c;
  c.d_t = thompson_metric_vec(pu, pv);
  c.linf_ratio = (1.0 - u.array() / v.array()).abs().maxCoeff();
  c.precondition = c.d_t < std::log(3.0);
  c.holds = !c.precondition || (c.linf_ratio / 3.0 <= c.d_t && c.d_t <= 3.0 * c.linf_ratio);
  return c;
}

EquilibriumResult equilibrium_prices(const FisherMarket& m, int max_steps, double tol) {
  const Eigen::Index d = m.n_goods();
  std::vector<int> all(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) all[static_cast<std::size_t>(i)] = static_cast<int>(i);

  EquilibriumResult out;
  PriceState s = make_price_state(m, RealVector::Constant(d, 1.0 / static_cast<double>(d)));
  for (;;) {
    out.residual = (total_demand(m, s.p).array() - 1.0).abs().maxCoeff();
    if (out.residual <= tol) {
      out.accepted = true;
      break;
    }
    if (out.steps >= max_steps) break;
    s = tatonnement_step(m, s, all);
    ++out.steps;
  }
  out.prices = s.p;
  return out;
}

std::vector<FisherTraceRow> fisher_trace(const FisherMarket& m, const ScheduleRun& run,
                                         const RealVector& equilibrium) {
  std::vector<FisherTraceRow> rows;
  rows.reserve(run.states.size());
  for (std::size_t k = 0; k < run.states.size(); ++k) {
    const auto& s = run.states[k];
    FisherTraceRow row;
    row.round = s.step - 1;
    row.d_t_to_eq = thompson_metric_vec(equilibrium, s.p);
    row.max_excess_demand = (total_demand(m, s.p).array() - 1.0).abs().maxCoeff();
    row.epoch_index = row.round == 0 ? 0 : run.epoch_of_round(row.round);
    rows.push_back(row);
  }
  return rows;
}

void write_fisher_csv(std::ostream& out, const std::vector<FisherTraceRow>& rows) {
  out << "round,d_T_to_eq,max_excess_demand,epoch_index\n";
  for (const auto& r : rows) {
    out << r.round << ',' << format_number(r.d_t_to_eq) << ','
        << format_number(r.max_excess_demand) << ',' << r.epoch_index << '\n';
  }
}

FisherMarket random_market(GaussianSource& source, Eigen::Index buyers, Eigen::Index goods,
                           double rho_lo, double rho_hi, double rho_hat) {
  RealMatrix valuations(buyers, goods);
  for (Eigen::Index j = 0; j < buyers; ++j) {
    valuations.row(j) = random_simplex_point(source, goods).transpose();
  }
  const RealVector budgets = random_simplex_point(source, buyers);
  RealVector rho(buyers);
  for (Eigen::Index j = 0; j < buyers; ++j) rho(j) = rho_lo + (rho_hi - rho_lo) * source.uniform();
  return FisherMarket(std::move(valuations), budgets, std::move(rho),
                      RealVector::Constant(goods, rho_hat));
}

}  // namespace augustin

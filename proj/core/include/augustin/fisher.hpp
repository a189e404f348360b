#pragma once

// CES Fisher markets and proportional-response style tatonnement.

#include <cstdint>
#include <ostream>
#include <vector>

#include "augustin/divergences.hpp"

namespace augustin {

class FisherMarket {
 public:
  /// valuations: n x d, row j is buyer j's a_j on the simplex.
  /// rho: one elasticity per buyer in (0,1). rho_hat: one bound per good in
  /// [max_j rho_j, 1).
  FisherMarket(RealMatrix valuations, RealVector budgets, RealVector rho, RealVector rho_hat);

  /// Common elasticity; rho_hat = rho for every good.
  static FisherMarket homogeneous(RealMatrix valuations, RealVector budgets, double rho);

  Eigen::Index n_buyers() const { return valuations_.rows(); }
  Eigen::Index n_goods() const { return valuations_.cols(); }
  const RealMatrix& valuations() const { return valuations_; }
  const RealVector& budgets() const { return budgets_; }
  const RealVector& rho() const { return rho_; }
  const RealVector& rho_hat() const { return rho_hat_; }
  double max_rho_hat() const { return rho_hat_.maxCoeff(); }
  bool common_elasticity() const;

 private:
  RealMatrix valuations_;
  RealVector budgets_;
  RealVector rho_;
  RealVector rho_hat_;
  RealMatrix powered_;  // a_j^{1/(1-rho_j)}
  friend RealVector buyer_demand(const FisherMarket&, Eigen::Index, const RealVector&);
  friend double potential(const FisherMarket&, const RealVector&);
};

/// x_j(p) = w[j] a_j^{1/(1-r)} p^{-1/(1-r)} / <a_j^{1/(1-r)}, p^{-r/(1-r)}>.
/// Throws Error{InvalidInput} for non-positive prices.
RealVector buyer_demand(const FisherMarket& m, Eigen::Index j, const RealVector& p);
RealVector total_demand(const FisherMarket& m, const RealVector& p);

/// sum_j w[j] ((1-r_j)/r_j) log<a_j^{1/(1-r_j)}, p^{-r_j/(1-r_j)}> + <1, p>.
/// Its gradient is 1 - x(p).
double potential(const FisherMarket& m, const RealVector& p);

struct PriceState {
  int step = 1;
  RealVector p;
  Eigen::VectorXi epoch_count_per_good;
};

PriceState make_price_state(const FisherMarket& m, RealVector p1);

/// p[i] <- p[i] x(p)[i]^{1 - rho_hat[i]} for i in goods; other prices stay.
/// Throws Error{NonFinite} if a price leaves (0, inf).
PriceState tatonnement_step(const FisherMarket& m, const PriceState& s,
                            const std::vector<int>& goods);

struct UpdateSchedule {
  std::vector<std::vector<int>> rounds;

  static UpdateSchedule synchronous(int goods, int rounds);
  /// Singletons 0, 1, ..., d-1, 0, 1, ...
  static UpdateSchedule round_robin(int goods, int epochs);
  /// Each good joins a round independently with probability `prob`; a round
  /// that would be empty gets one uniformly chosen good.
  static UpdateSchedule random_coverage(int goods, int rounds, std::uint64_t seed, double prob = 0.5);

  /// Throws Error{InvalidInput} on an empty round or an out-of-range index.
  void validate(int goods) const;
};

/// N(1), N(2), ...: N(t) is the first round after N(t-1) by which every good
/// has been updated at least once since N(t-1), with N(0) = 0. So every good
/// is updated at least t times within N(t) rounds. Stops at the last complete
/// epoch.
std::vector<int> epoch_boundaries(const UpdateSchedule& sched, int goods);

struct ScheduleRun {
  std::vector<PriceState> states;  // p_1 .. p_{R+1}
  std::vector<int> boundaries;     // N(1) .. N(T)
  /// Some good is never updated: the whole run is one unbounded epoch.
  bool unbounded_epoch = false;

  /// 1-based epoch of round r: the k with N(k-1) < r <= N(k), or T+1 past the
  /// last complete epoch.
  int epoch_of_round(int round) const;
};

ScheduleRun run_schedule(const FisherMarket& m, const RealVector& p1, const UpdateSchedule& sched);

/// p * x(p). Throws Error{InvalidInput} unless every buyer has the same rho.
RealVector cheung_baseline_step(const FisherMarket& m, const RealVector& p);

/// The classical Augustin problem with points a_j, weights w, order 1/(1-rho).
ClassicalAugustinProblem augustin_dictionary(const FisherMarket& m);

struct ComparabilityCheck {
  double d_t = 0.0;
  double linf_ratio = 0.0;  // max_i |1 - u[i]/v[i]|
  bool precondition = false;  // d_t < log 3
  /// (1/3) linf_ratio <= d_t <= 3 linf_ratio; vacuously true without the
  /// precondition.
  bool holds = true;
};

ComparabilityCheck metric_comparability_check(const RealVector& u, const RealVector& v);

struct EquilibriumResult {
  RealVector prices;
  double residual = 0.0;  // ||x(p) - 1||_inf
  int steps = 0;
  bool accepted = false;
};

/// Synchronous adapted steps from 1/d until the residual is at most tol.
EquilibriumResult equilibrium_prices(const FisherMarket& m, int max_steps = 2000, double tol = 1e-10);

struct FisherTraceRow {
  int round = 0;  // rounds applied so far; the initial prices are round 0, epoch 0
  double d_t_to_eq = 0.0;
  double max_excess_demand = 0.0;
  int epoch_index = 0;
};

std::vector<FisherTraceRow> fisher_trace(const FisherMarket& m, const ScheduleRun& run,
                                         const RealVector& equilibrium);
/// Columns: round,d_T_to_eq,max_excess_demand,epoch_index.
void write_fisher_csv(std::ostream& out, const std::vector<FisherTraceRow>& rows);

/// Valuations from random_simplex_point, budgets likewise, rho uniform in
/// [rho_lo, rho_hi], rho_hat constant.
FisherMarket random_market(GaussianSource& source, Eigen::Index buyers, Eigen::Index goods,
                           double rho_lo, double rho_hi, double rho_hat);

}  // namespace augustin

#include <gtest/gtest.h>

#include <cmath>

#include "augustin/augustin.hpp"
#include "augustin/error.hpp"
#include "augustin/oracles.hpp"
#include "reference.hpp"

using namespace augustin;

namespace {

SolveOptions quiet(int max_iter, double tol = 1e-10) {
  SolveOptions o;
  o.max_iter = max_iter;
  o.residual_tol = tol;
  o.record_timing = false;
  return o;
}

ClassicalAugustinProblem divergence_instance(double alpha) {
  RealMatrix points(3, 3);
  points << 0.9, 0.09, 0.01, 0.009, 0.99, 0.001, 0.0001, 0.0009, 0.999;
  return ClassicalAugustinProblem(points, RealVector::Constant(3, 1.0 / 3.0), Order(alpha));
}

double normalized_distance(const HermitianMatrix& a, const HermitianMatrix& b) {
  return thompson_metric_psd(DensityMatrix::normalized(a), DensityMatrix::normalized(b));
}

}  // namespace

TEST(ApplyTF, SingleStateFixedPoint) {
  const DensityMatrix a = random_density_matrix(3, 4);
  const AugustinProblem p({a}, RealVector::Ones(1), Order(1.7));
  const HermitianMatrix u = matrix_power(a.hermitian(), -0.7);
  EXPECT_LE(testref::max_abs(apply_T_F(p, u).matrix() - u.matrix()), 1e-10);
}

TEST(ApplyTF, CommutingReduction) {
  GaussianSource src(5);
  for (double alpha : {0.6, 1.5, 4.0}) {
    const auto cp = testref::random_classical(9, 5, 4, alpha);
    const AugustinProblem qp = cp.embedded();
    const RealVector u = random_simplex_point(src, 4, 2.0);
    const HermitianMatrix quantum = apply_T_F(qp, HermitianMatrix::diagonal(u));
    const PositiveVector classical = apply_T_f(cp, PositiveVector(u));
    EXPECT_LE(testref::max_abs(quantum.matrix() - HermitianMatrix::diagonal(classical.values()).matrix()), 1e-12);
    EXPECT_TRUE(quantum.is_diagonal(1e-14));

    const RealVector q = random_simplex_point(src, 4);
    const HermitianMatrix step = apply_step_map(qp, HermitianMatrix::diagonal(q));
    EXPECT_LE((step.real_diagonal() - apply_step_map(cp, q)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ApplyTF, ClassicalSingleStateFixedPoint) {
  RealMatrix pts(1, 3);
  pts << 0.2, 0.3, 0.5;
  const ClassicalAugustinProblem p(pts, RealVector::Ones(1), Order(2.5));
  const RealVector u = pts.row(0).transpose().array().pow(-1.5);
  EXPECT_LE((apply_T_f(p, PositiveVector(u)).values() - u).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ApplyTF, DegenerateTraceRaises) {
  const DensityMatrix a = DensityMatrix::diagonal(RealVector{{1.0, 0.0}});
  const DensityMatrix b = DensityMatrix::diagonal(RealVector{{0.0, 1.0}});
  const AugustinProblem p({a, b}, RealVector{{0.5, 0.5}}, Order(2.0));
  const HermitianMatrix u = HermitianMatrix::diagonal(RealVector{{1e-30, 1.0}});
  try {
    apply_T_F(p, u);
    FAIL() << "expected DegenerateTrace";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateTrace);
  }
}

TEST(ApplyTF, Counterexample) {
  RealMatrix a(2, 2), u(2, 2), v(2, 2);
  a << 19.5364, 4.42, 4.42, 1.1;
  u << 2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0;
  v << 1.0, 1.0, 1.0, 1.1;
  v /= 2.1;
  const auto p = AugustinProblem::with_unnormalized_states({HermitianMatrix(a)}, RealVector::Ones(1), Order(3.0));
  const double image = thompson_metric_psd(apply_step_map(p, HermitianMatrix(v)), apply_step_map(p, HermitianMatrix(u)));
  const double bound = (2.0 / 3.0) * thompson_metric_psd(HermitianMatrix(v), HermitianMatrix(u));
  EXPECT_NEAR(image, 1.4366, 1e-3);
  EXPECT_NEAR(bound, 1.3668, 1e-3);
  EXPECT_GT(image, bound);
}

TEST(PetzAugustinStep, SingleStateOneStep) {
  const DensityMatrix a = random_density_matrix(4, 5);
  const AugustinProblem p({a}, RealVector::Ones(1), Order(2.0));
  GaussianSource src(1);
  const IterateState s1 = make_initial_state(p, random_positive_definite(src, 5));
  const IterateState s2 = petz_augustin_step(p, s1);
  EXPECT_EQ(s2.step, 2);
  EXPECT_LE(testref::max_abs(s2.q_normalized.hermitian().matrix() - a.hermitian().matrix()), 1e-10);
}

TEST(PetzAugustinStep, EqualStatesOneStep) {
  const DensityMatrix a = random_density_matrix(6, 4);
  const AugustinProblem p({a, a, a}, RealVector{{0.2, 0.3, 0.5}}, Order(0.7));
  const IterateState s = petz_augustin_step(p, make_initial_state(p, DensityMatrix::maximally_mixed(4)));
  EXPECT_LE(testref::max_abs(s.q_normalized.hermitian().matrix() - a.hermitian().matrix()), 1e-10);
  EXPECT_NEAR(s.f_value.value(), 0.0, 1e-10);
}

TEST(PetzAugustinStep, StateFieldsConsistent) {
  const auto p = testref::random_problem(7, 4, 5, 1.5);
  IterateState s = make_initial_state(p, DensityMatrix::maximally_mixed(5));
  for (int t = 0; t < 5; ++t) {
    s = petz_augustin_step(p, s);
    EXPECT_LE(testref::max_abs(s.q_normalized.hermitian().matrix() - s.q.matrix() / s.trace), 1e-12);
    EXPECT_LE(testref::max_abs(s.q_power.matrix() - matrix_power(s.q, -0.5).matrix()), 1e-10 * (1.0 + testref::max_abs(s.q_power.matrix())));
    EXPECT_NEAR(s.f_value.value(), objective_F(p, s.q_normalized).value(), 1e-10);
  }
}

TEST(PetzAugustinStep, ContractionAgainstLongRun) {
  const auto p = testref::random_problem(2024, 8, 16, 1.5);
  const DensityMatrix star = testref::long_run_mean(p);
  const HermitianMatrix star_pow = matrix_power(star.hermitian(), -0.5);
  IterateState s = make_initial_state(p, DensityMatrix::maximally_mixed(16));
  double prev = thompson_metric_psd(star_pow, s.q_power);
  for (int t = 0; t < 30; ++t) {
    s = petz_augustin_step(p, s);
    const double cur = thompson_metric_psd(star_pow, s.q_power);
    if (prev < 1e-6) break;
    EXPECT_LE(cur / prev, 1.0 / 3.0 + 1e-8) << "step " << s.step;
    prev = cur;
  }
}

TEST(SolvePetzAugustin, SingleState) {
  const DensityMatrix a = random_density_matrix(10, 3);
  const AugustinProblem p({a}, RealVector::Ones(1), Order(1.5));
  const SolveReport r = solve_petz_augustin(p, DensityMatrix::maximally_mixed(3), quiet(200));
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.stop_reason, StopReason::FixedPointResidual);
  EXPECT_EQ(r.trace.rows.size(), static_cast<std::size_t>(r.steps) + 1);
  // The normalized iterate is exact after the first step; only the scale is still moving.
  EXPECT_NEAR(r.trace.rows[1].f_value, 0.0, 1e-10);
  EXPECT_LE(testref::max_abs(r.final_state.hermitian().matrix() - a.hermitian().matrix()), 1e-10);
}

TEST(SolvePetzAugustin, TraceRowsAndStopRule) {
  const auto p = testref::random_problem(11, 5, 6, 3.0);
  const SolveReport r = solve_petz_augustin(p, DensityMatrix::maximally_mixed(6), quiet(500, 1e-9));
  ASSERT_TRUE(r.converged);
  EXPECT_EQ(r.trace.rows.size(), static_cast<std::size_t>(r.steps) + 1);
  EXPECT_FALSE(r.trace.rows.front().residual_thompson.has_value());
  EXPECT_LE(*r.trace.rows.back().residual_thompson, 1e-9);
  for (std::size_t k = 1; k + 1 < r.trace.rows.size(); ++k) {
    EXPECT_GT(*r.trace.rows[k].residual_thompson, 1e-9);
  }
  const SolveReport capped = solve_petz_augustin(p, DensityMatrix::maximally_mixed(6), quiet(3, 0.0));
  EXPECT_EQ(capped.stop_reason, StopReason::MaxIter);
  EXPECT_EQ(capped.steps, 3);
}

TEST(SolvePetzAugustin, RejectsBadBudget) {
  const auto p = testref::random_problem(11, 2, 3, 3.0);
  EXPECT_THROW(solve_petz_augustin(p, DensityMatrix::maximally_mixed(3), quiet(0)), Error);
}

TEST(SolvePetzAugustin, LowOrderLabelledAndDivergenceInstanceStalls) {
  for (double alpha : {0.2, 0.4}) {
    const auto cp = divergence_instance(alpha);
    SolveOptions o = quiet(60, 0.0);
    const SolveReport r = solve_petz_augustin(cp.embedded(), DensityMatrix::maximally_mixed(3), o);
    EXPECT_FALSE(r.convergence_guaranteed);
    for (std::size_t k = 1; k < r.trace.rows.size(); ++k) {
      EXPECT_GE(*r.trace.rows[k].residual_thompson, 1e-2) << "alpha " << alpha << " step " << k;
    }
  }
}

TEST(SolvePetzAugustin, RenormalizationLeavesNormalizedSequence) {
  const auto p = testref::random_problem(12, 4, 4, 0.8);
  SolveOptions never = quiet(15, 0.0);
  never.renormalize = Renormalize::Never;
  SolveOptions always = never;
  always.renormalize = Renormalize::Always;
  const SolveReport a = solve_petz_augustin(p, DensityMatrix::maximally_mixed(4), never);
  const SolveReport b = solve_petz_augustin(p, DensityMatrix::maximally_mixed(4), always);
  for (std::size_t k = 0; k < a.trace.rows.size(); ++k) {
    EXPECT_NEAR(a.trace.rows[k].f_value, b.trace.rows[k].f_value, 1e-12);
  }
  EXPECT_LE(thompson_metric_psd(a.final_state, b.final_state), 1e-10);
}

TEST(SolvePetzAugustin, MonotoneErrorsOnRandomInstance) {
  for (double alpha : {0.8, 1.5, 3.0, 5.0}) {
    const auto p = testref::random_problem(77, 6, 8, alpha);
    const DensityMatrix star = testref::long_run_mean(p);
    const double f_star = objective_F(p, star).value();
    const SolveReport r = solve_petz_augustin(p, DensityMatrix::maximally_mixed(8), quiet(60, 0.0), star);
    for (std::size_t k = 1; k < r.trace.rows.size(); ++k) {
      const auto& prev = r.trace.rows[k - 1];
      const auto& cur = r.trace.rows[k];
      if (*prev.dist_to_reference < 1e-9) break;
      EXPECT_LE(*cur.dist_to_reference, *prev.dist_to_reference + 1e-12);
      if (alpha > 1.0) EXPECT_LE(cur.f_value - f_star, prev.f_value - f_star + 1e-12);
    }
  }
}

TEST(Classical, MatchesQuantumOnDiagonalData) {
  const auto cp = testref::random_classical(31, 5, 6, 2.0);
  const RealVector q1 = RealVector::Constant(6, 1.0 / 6.0);
  const ClassicalSolveReport c = solve_classical_augustin(cp, q1, quiet(30, 0.0));
  const SolveReport q = solve_petz_augustin(cp.embedded(), DensityMatrix::maximally_mixed(6), quiet(30, 0.0));
  ASSERT_EQ(c.trace.rows.size(), q.trace.rows.size());
  for (std::size_t k = 0; k < c.trace.rows.size(); ++k) {
    EXPECT_NEAR(c.trace.rows[k].f_value, q.trace.rows[k].f_value, 1e-10);
    EXPECT_NEAR(c.trace.rows[k].trace, q.trace.rows[k].trace, 1e-10);
  }
  EXPECT_LE((c.final_state - q.final_state.hermitian().real_diagonal()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Classical, SingleStateOneStep) {
  RealMatrix pts(1, 4);
  pts << 0.1, 0.2, 0.3, 0.4;
  const ClassicalAugustinProblem p(pts, RealVector::Ones(1), Order(3.0));
  const ClassicalSolveReport r = solve_classical_augustin(p, RealVector{{0.4, 0.3, 0.2, 0.1}}, quiet(1, 0.0));
  EXPECT_LE((r.final_state - pts.row(0).transpose()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Classical, ContractionAgainstLongRun) {
  for (double alpha : {0.7, 2.0, 4.0}) {
    const auto p = testref::random_classical(5, 6, 7, alpha);
    const RealVector q1 = RealVector::Constant(7, 1.0 / 7.0);
    const RealVector star = solve_classical_augustin(p, q1, quiet(400, 1e-13)).final_state;
    const RealVector star_pow = star.array().pow(1.0 - alpha);
    ClassicalIterateState s = make_initial_state(p, q1);
    double prev = thompson_metric_vec(star_pow, s.q_power);
    for (int t = 0; t < 40 && prev > 1e-6; ++t) {
      s = classical_augustin_step(p, s);
      const double cur = thompson_metric_vec(star_pow, s.q_power);
      EXPECT_LE(cur / prev, Order(alpha).contraction_factor() + 1e-8);
      prev = cur;
    }
  }
}

TEST(Classical, LewisWeightsRecursion) {
  GaussianSource src(55);
  for (double pnorm : {1.0, 3.0}) {
    RealVector m(6);
    for (Eigen::Index i = 0; i < 6; ++i) m(i) = src.normal();
    const RealVector a_raw = m.cwiseAbs().array().pow(pnorm);
    RealMatrix pts(1, 6);
    pts.row(0) = (a_raw / a_raw.sum()).transpose();
    const ClassicalAugustinProblem p(pts, RealVector::Ones(1), Order(2.0 / pnorm));

    RealVector u = random_simplex_point(src, 6);
    ClassicalIterateState s = make_initial_state(p, u);
    for (int t = 0; t < 30; ++t) {
      u = testref::lewis_step(m, pnorm, u);
      s = classical_augustin_step(p, s);
      ASSERT_LE(((s.q - u).array() / u.array()).abs().maxCoeff(), 1e-10) << "p " << pnorm << " step " << t;
    }
  }
}

TEST(Dual, MatchesPrimalIterates) {
  const auto p = testref::random_problem(99, 4, 8, 2.0);
  GaussianSource src(100);
  RealVector v(4);
  for (Eigen::Index j = 0; j < 4; ++j) v(j) = 0.3 * src.normal();
  DualState d = make_dual_state(p, v);
  IterateState s = make_initial_state(p, d.mu);
  for (int t = 0; t < 20; ++t) {
    ASSERT_LE(thompson_metric_psd(d.mu, s.q), 1e-8) << "step " << t;
    d = cheng_dual_step(p, d);
    s = petz_augustin_step(p, s);
  }
}

TEST(Dual, ObjectiveNonDecreasingForLargeOrder) {
  const auto p = testref::random_problem(98, 5, 6, 2.5);
  DualState d = make_dual_state(p, RealVector::Zero(5));
  double prev = dual_objective_H(p, d.v);
  for (int t = 0; t < 20; ++t) {
    d = cheng_dual_step(p, d);
    const double cur = dual_objective_H(p, d.v);
    EXPECT_GE(cur, prev - 1e-10);
    prev = cur;
  }
}

TEST(Dual, ObjectiveFormulas) {
  const auto p = testref::random_problem(97, 3, 4, 1.5);
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  for (std::size_t j = 0; j < p.size(); ++j) {
    m += p.weights()(static_cast<Eigen::Index>(j)) * testref::schur_power(p.states()[j].matrix(), 1.5);
  }
  const double expected = -std::log(testref::schur_power(m, 1.0 / 1.5).trace().real());
  EXPECT_NEAR(dual_objective_H(p, RealVector::Zero(3)), expected, 1e-10);

  const RealVector v{{0.3, -0.2, 0.9}};
  EXPECT_NEAR(dual_objective_H(p, v), dual_objective_H(p, (v.array() + 1.7).matrix()), 1e-10);

  const DensityMatrix a = random_density_matrix(3, 4);
  const AugustinProblem one({a}, RealVector::Ones(1), Order(2.0));
  EXPECT_NEAR(dual_objective_H(one, RealVector::Zero(1)), 0.0, 1e-12);
  const DualState d = cheng_dual_step(one, make_dual_state(one, RealVector::Zero(1)));
  EXPECT_LE(normalized_distance(d.mu, a), 1e-10);
}

TEST(Baseline, SingleStateExpansion) {
  RealMatrix pts(1, 3);
  pts << 0.6, 0.3, 0.1;
  const double alpha = 1.8;
  const ClassicalAugustinProblem p(pts, RealVector::Ones(1), Order(alpha));
  const RealVector q{{0.2, 0.5, 0.3}};
  RealVector expected = q.array().pow(1.0 - alpha) * pts.row(0).transpose().array().pow(alpha);
  expected /= expected.sum();
  const RealVector got = augustin_classical_baseline_step(p, q);
  EXPECT_LE((got - expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Baseline, StaysOnSimplexAndFixesProposedFixedPoint) {
  const auto p = testref::random_classical(61, 5, 6, 1.5);
  GaussianSource src(62);
  const RealVector q = random_simplex_point(src, 6);
  EXPECT_NEAR(augustin_classical_baseline_step(p, q).sum(), 1.0, 1e-12);

  const RealVector star =
      solve_classical_augustin(p, RealVector::Constant(6, 1.0 / 6.0), quiet(500, 1e-14)).final_state;
  EXPECT_LE((augustin_classical_baseline_step(p, star) - star).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Baseline, ZeroCoordinateRejected) {
  const auto p = testref::random_classical(61, 3, 3, 1.5);
  try {
    augustin_classical_baseline_step(p, RealVector{{0.5, 0.5, 0.0}});
    FAIL() << "expected InvalidInput";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
}

TEST(Gradient, ClassicalMatchesFiniteDifferences) {
  const auto p = testref::random_classical(71, 4, 5, 0.7);
  GaussianSource src(72);
  const RealVector q = random_simplex_point(src, 5);
  const RealVector g = classical_gradient(p, q);
  const double h = 1e-6;
  for (Eigen::Index i = 0; i < 5; ++i) {
    RealVector e = RealVector::Zero(5);
    e(i) = h;
    const double fd = (objective_f(p, q + e).value() - objective_f(p, q - e).value()) / (2 * h);
    EXPECT_NEAR(g(i), fd, 1e-6 * (1.0 + std::abs(fd)));
  }
}

TEST(Gradient, QuantumMatchesDirectionalDerivative) {
  for (double alpha : {0.4, 0.8, 2.0}) {
    const auto p = testref::random_problem(81, 3, 4, alpha);
    GaussianSource src(82);
    const HermitianMatrix q = random_positive_definite(src, 4, 1.0);
    const HermitianMatrix g = objective_gradient(p, q);
    for (int k = 0; k < 5; ++k) {
      ComplexMatrix h = ComplexMatrix::Zero(4, 4);
      for (Eigen::Index i = 0; i < 4; ++i)
        for (Eigen::Index j = 0; j < 4; ++j) h(i, j) = {src.normal(), src.normal()};
      const HermitianMatrix dir(h);
      const double eps = 1e-6;
      const double fd = (objective_F(p, q + dir.scaled(eps)).value() - objective_F(p, q - dir.scaled(eps)).value()) / (2 * eps);
      EXPECT_NEAR(trace_product(g, dir), fd, 1e-6 * (1.0 + std::abs(fd)));
    }
  }
}

TEST(Polyak, NoStepAtOrBelowTarget) {
  const auto p = testref::random_classical(91, 3, 3, 0.4);
  const RealVector q{{0.2, 0.3, 0.5}};
  const double f = objective_f(p, q).value();
  EXPECT_EQ(emd_polyak_step(p, q, f), q);
  EXPECT_EQ(emd_polyak_step(p, q, f + 1.0), q);
  const DensityMatrix dq = DensityMatrix::diagonal(q);
  EXPECT_EQ(emd_polyak_step(p.embedded(), dq, f).hermitian().matrix(), dq.hermitian().matrix());
}

TEST(Polyak, ReachesGridMinimumOnSmallInstance) {
  for (double alpha : {0.3, 0.7, 2.0}) {
    const auto p = testref::random_classical(92, 4, 3, alpha);
    const GridMinimum grid = grid_min_classical_augustin(p, GridSpec(300, 3));
    const auto best = solve_emd_polyak(p, RealVector::Constant(3, 1.0 / 3.0));
    EXPECT_LE(best.best_value, grid.value + 1e-6) << "alpha " << alpha;
    EXPECT_NEAR(best.best_value, grid.value, 1e-3);
  }
}

TEST(Polyak, DivergenceInstanceBeatsProposedRule) {
  const auto p = divergence_instance(0.4);
  const RealVector q1 = RealVector::Constant(3, 1.0 / 3.0);
  const auto polyak = solve_emd_polyak(p, q1);
  SolveOptions o = quiet(1000, 0.0);
  const ClassicalSolveReport r = solve_classical_augustin(p, q1, o);
  for (const auto& row : r.trace.rows) EXPECT_GE(row.f_value, polyak.best_value);
}

TEST(Polyak, QuantumVariantDescends) {
  const auto p = testref::random_problem(93, 3, 3, 0.4);
  PolyakOptions o;
  o.iterations = 200;
  const auto r = solve_emd_polyak(p, DensityMatrix::maximally_mixed(3), o);
  EXPECT_LT(r.best_value, r.values.front());
  EXPECT_NEAR(r.best.hermitian().trace(), 1.0, 1e-10);
}

// ---- properties of the iteration ----

TEST(Properties, OperatorContraction) {
  GaussianSource src(201);
  for (double alpha : {0.6, 0.8, 1.5, 3.0, 5.0}) {
    const auto p = testref::random_problem(202, 4, 4, alpha);
    for (int k = 0; k < 50; ++k) {
      const HermitianMatrix u = random_positive_definite(src, 4);
      const HermitianMatrix v = random_positive_definite(src, 4);
      ASSERT_LE(thompson_metric_psd(apply_T_F(p, v), apply_T_F(p, u)),
                Order(alpha).contraction_factor() * thompson_metric_psd(v, u) + 1e-9);
    }
  }
}

TEST(Properties, FixedPointMinimizes) {
  GaussianSource src(211);
  for (double alpha : {0.7, 2.0}) {
    const auto p = testref::random_problem(212, 5, 4, alpha);
    const DensityMatrix star = testref::long_run_mean(p);
    const HermitianMatrix image = apply_step_map(p, star);
    EXPECT_LE(normalized_distance(image, star), 1e-7);
    const double f_star = objective_F(p, star).value();
    for (int k = 0; k < 100; ++k) {
      ASSERT_LE(f_star, objective_F(p, random_density_matrix(src, 4)).value() + 1e-6);
    }
  }
}

TEST(Properties, TraceBoundAndMonotoneValues) {
  for (double alpha : {1.5, 3.0, 5.0}) {
    const auto p = testref::random_problem(221, 6, 5, alpha);
    IterateState s = make_initial_state(p, DensityMatrix::maximally_mixed(5));
    for (int t = 0; t < 40; ++t) {
      IterateState next = petz_augustin_step(p, s);
      if (s.trace <= 1.0) ASSERT_LE(next.trace, 1.0 + 1e-10);
      ASSERT_LE(next.f_value.value(), s.f_value.value() + 1e-10);
      s = std::move(next);
    }
  }
}

TEST(Properties, NormalizationStabilityAndValueBound) {
  GaussianSource src(231);
  for (double alpha : {0.6, 0.8, 1.5, 3.0}) {
    const auto p = testref::random_problem(232, 3, 4, alpha);
    const double c = 1.0 - alpha;
    for (int k = 0; k < 100; ++k) {
      const HermitianMatrix u = random_positive_definite(src, 4);
      const DensityMatrix v = random_density_matrix(src, 4);
      const double base = thompson_metric_psd(matrix_power(v, c), matrix_power(u, c));
      const double normalized = thompson_metric_psd(matrix_power(v, c), matrix_power(DensityMatrix::normalized(u), c));
      ASSERT_LE(normalized, 2.0 * base + 1e-9);

      const HermitianMatrix w = random_positive_definite(src, 4);
      ASSERT_LE(objective_F(p, u).value() - objective_F(p, w).value(),
                std::abs(1.0 / (alpha - 1.0)) * thompson_metric_psd(matrix_power(w, c), matrix_power(u, c)) + 1e-9);
    }
  }
}

TEST(Properties, ScaleEquivariance) {
  GaussianSource src(241);
  for (double alpha : {0.6, 2.0}) {
    const auto p = testref::random_problem(242, 4, 4, alpha);
    const HermitianMatrix q = random_positive_definite(src, 4);
    for (double gamma : {1e-3, 0.5, 7.0}) {
      const HermitianMatrix a = apply_step_map(p, q);
      const HermitianMatrix b = apply_step_map(p, q.scaled(gamma));
      EXPECT_LE(testref::max_abs(DensityMatrix::normalized(a).hermitian().matrix() -
                                 DensityMatrix::normalized(b).hermitian().matrix()),
                1e-10);
    }
  }
}

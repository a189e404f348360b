#include <gtest/gtest.h>

#include <cmath>

#include "augustin/divergences.hpp"
#include "augustin/error.hpp"
#include "augustin/parallel.hpp"
#include "reference.hpp"

using namespace augustin;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no augustin::Error thrown";
  return ErrorKind::Unsupported;
}

}  // namespace

TEST(Order, Domain) {
  EXPECT_EQ(kind_of([] { Order(1.0); }), ErrorKind::InvalidOrder);
  EXPECT_EQ(kind_of([] { Order(0.0); }), ErrorKind::InvalidOrder);
  EXPECT_EQ(kind_of([] { Order(-2.0); }), ErrorKind::InvalidOrder);
  EXPECT_DOUBLE_EQ(Order(3.0).contraction_factor(), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(Order(0.8).contraction_factor(), 0.25);
  EXPECT_FALSE(Order(0.5).has_convergence_guarantee());
  EXPECT_TRUE(Order(0.6).has_convergence_guarantee());
}

TEST(PetzRenyi, SelfDivergenceIsZero) {
  for (double alpha : {0.3, 0.8, 1.5, 3.0}) {
    const DensityMatrix a = random_density_matrix(5, 4);
    EXPECT_NEAR(petz_renyi_divergence(a, a, Order(alpha)).value(), 0.0, 1e-12);
  }
}

TEST(PetzRenyi, DiagonalExample) {
  const auto a = HermitianMatrix::diagonal(RealVector{{0.5, 0.5}});
  const auto q = HermitianMatrix::diagonal(RealVector{{0.25, 0.75}});
  const ExtendedReal d = petz_renyi_divergence(a, q, Order(2.0));
  EXPECT_NEAR(d.value(), std::log(4.0 / 3.0), 1e-15);
  EXPECT_NEAR(d.value(), 0.287682, 1e-6);
}

TEST(PetzRenyi, KernelCases) {
  const auto a = HermitianMatrix::diagonal(RealVector{{0.5, 0.5}});
  const auto singular = HermitianMatrix::diagonal(RealVector{{1.0, 0.0}});
  EXPECT_TRUE(petz_renyi_divergence(a, singular, Order(2.0)).is_infinite());
  // alpha < 1 with overlapping supports stays finite.
  EXPECT_TRUE(petz_renyi_divergence(a, singular, Order(0.5)).is_finite());
  // alpha < 1 with orthogonal supports is infinite.
  const auto orth = HermitianMatrix::diagonal(RealVector{{0.0, 1.0}});
  EXPECT_TRUE(petz_renyi_divergence(singular, orth, Order(0.5)).is_infinite());
  // alpha > 1 with supp A inside supp Q is finite.
  EXPECT_TRUE(petz_renyi_divergence(singular, singular, Order(2.0)).is_finite());
}

TEST(PetzRenyi, MatchesScalarLoopOnDiagonals) {
  GaussianSource src(3);
  for (int k = 0; k < 50; ++k) {
    const RealVector p = random_simplex_point(src, 6);
    const RealVector q = random_simplex_point(src, 6);
    for (double alpha : {0.4, 0.7, 1.3, 4.0}) {
      const double expected = testref::scalar_renyi(p, q, alpha);
      EXPECT_NEAR(petz_renyi_divergence(HermitianMatrix::diagonal(p), HermitianMatrix::diagonal(q), Order(alpha)).value(),
                  expected, 1e-12 * (1.0 + std::abs(expected)));
      EXPECT_NEAR(classical_renyi_divergence(p, q, Order(alpha)).value(), expected,
                  1e-12 * (1.0 + std::abs(expected)));
    }
  }
}

TEST(PetzRenyi, NonnegativeAndSeparating) {
  GaussianSource src(41);
  for (int k = 0; k < 200; ++k) {
    const DensityMatrix a = random_density_matrix(src, 4);
    const DensityMatrix q = random_density_matrix(src, 4);
    const double dist = thompson_metric_psd(a, q);
    for (double alpha : {0.6, 0.8, 1.5, 3.0}) {
      const double d = petz_renyi_divergence(a, q, Order(alpha)).value();
      ASSERT_GE(d, -1e-10);
      if (dist > 0.1) ASSERT_GT(d, 1e-4);
    }
  }
}

TEST(ExtendedReal, AbsorbingInfinity) {
  const ExtendedReal inf = ExtendedReal::infinity();
  const ExtendedReal one = ExtendedReal::finite(1.0);
  EXPECT_TRUE((inf + one).is_infinite());
  EXPECT_TRUE((0.5 * inf).is_infinite());
  EXPECT_TRUE(one < inf);
  EXPECT_TRUE(ExtendedReal::finite(1.0, true).degenerate());
  EXPECT_TRUE((one + ExtendedReal::finite(2.0, true)).degenerate());
}

TEST(AugustinProblem, Validation) {
  const DensityMatrix a = DensityMatrix::diagonal(RealVector{{1.0, 0.0}});
  const DensityMatrix b = DensityMatrix::diagonal(RealVector{{0.0, 1.0}});
  EXPECT_NO_THROW(AugustinProblem({a, b}, RealVector{{0.5, 0.5}}, Order(2.0)));
  EXPECT_EQ(kind_of([&] { AugustinProblem({a, a}, RealVector{{0.5, 0.5}}, Order(2.0)); }),
            ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([&] { AugustinProblem({a, b}, RealVector{{0.6, 0.5}}, Order(2.0)); }),
            ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([&] { AugustinProblem({a, b}, RealVector{{1.0, 0.0}}, Order(2.0)); }),
            ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([&] { AugustinProblem({a, b}, RealVector{{1.0}}, Order(2.0)); }),
            ErrorKind::InvalidInput);
}

TEST(AugustinProblem, CachedPowers) {
  const auto p = testref::random_problem(4, 3, 5, 1.7);
  for (std::size_t j = 0; j < p.size(); ++j) {
    const ComplexMatrix expected = testref::schur_power(p.states()[j].matrix(), 1.7);
    EXPECT_LE(testref::max_abs(p.powered_states()[j].matrix() - expected), 1e-10);
  }
}

TEST(ClassicalProblem, Validation) {
  RealMatrix pts(2, 2);
  pts << 0.5, 0.5, 0.2, 0.8;
  EXPECT_NO_THROW(ClassicalAugustinProblem(pts, RealVector{{0.5, 0.5}}, Order(2.0)));
  RealMatrix bad = pts;
  bad(0, 0) = 0.6;
  EXPECT_EQ(kind_of([&] { ClassicalAugustinProblem(bad, RealVector{{0.5, 0.5}}, Order(2.0)); }),
            ErrorKind::InvalidInput);
  RealMatrix uncovered(2, 2);
  uncovered << 1.0, 0.0, 1.0, 0.0;
  EXPECT_EQ(kind_of([&] { ClassicalAugustinProblem(uncovered, RealVector{{0.5, 0.5}}, Order(2.0)); }),
            ErrorKind::InvalidInput);
}

TEST(Objective, SingleStateAndEqualStates) {
  const DensityMatrix a = random_density_matrix(8, 3);
  const DensityMatrix q = random_density_matrix(9, 3);
  const AugustinProblem one({a}, RealVector::Ones(1), Order(1.5));
  EXPECT_EQ(objective_F(one, q).value(), petz_renyi_divergence(a, q, Order(1.5)).value());

  const AugustinProblem same({a, a, a}, RealVector::Constant(3, 1.0 / 3.0), Order(0.7));
  EXPECT_NEAR(objective_F(same, a).value(), 0.0, 1e-12);
}

TEST(Objective, CommutingReduction) {
  GaussianSource src(12);
  for (int k = 0; k < 20; ++k) {
    const auto cp = testref::random_classical(100 + k, 4, 5, k % 2 ? 0.6 : 2.5);
    const AugustinProblem qp = cp.embedded();
    const RealVector q = random_simplex_point(src, 5);
    EXPECT_NEAR(objective_F(qp, HermitianMatrix::diagonal(q)).value(), objective_f(cp, q).value(), 1e-12);
  }
}

TEST(Objective, ClassicalExamples) {
  RealMatrix pts(1, 2);
  pts << 0.5, 0.5;
  const ClassicalAugustinProblem p(pts, RealVector::Ones(1), Order(2.0));
  EXPECT_NEAR(objective_f(p, RealVector{{0.25, 0.75}}).value(), std::log(4.0 / 3.0), 1e-15);
  EXPECT_NEAR(objective_f(p, RealVector{{0.5, 0.5}}).value(), 0.0, 1e-15);
}

TEST(Objective, InfinityPropagates) {
  const DensityMatrix a = DensityMatrix::diagonal(RealVector{{0.5, 0.5}});
  const DensityMatrix b = DensityMatrix::diagonal(RealVector{{0.2, 0.8}});
  const AugustinProblem p({a, b}, RealVector{{0.5, 0.5}}, Order(2.0));
  EXPECT_TRUE(objective_F(p, HermitianMatrix::diagonal(RealVector{{1.0, 0.0}})).is_infinite());
}

TEST(Objective, ClampedTracesAreFlagged) {
  const ExtendedReal v = objective_from_traces(RealVector{{0.5, 0.5}}, Order(2.0), RealVector{{1.0, -1e-17}}, 1e-12);
  EXPECT_TRUE(v.is_finite());
  EXPECT_TRUE(v.degenerate());
  EXPECT_NEAR(v.value(), 0.5 * std::log(1e-12), 1e-12);
}

TEST(Objective, ThreadCountDoesNotChangeResult) {
  const auto p = testref::random_problem(21, 9, 6, 1.5);
  const DensityMatrix q = random_density_matrix(22, 6);
  set_thread_count(1);
  const double one = objective_F(p, q).value();
  set_thread_count(3);
  const double three = objective_F(p, q).value();
  set_thread_count(1);
  EXPECT_EQ(one, three);
}

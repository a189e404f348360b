#include <benchmark/benchmark.h>

#include "augustin/augustin.hpp"
#include "augustin/capacity.hpp"
#include "augustin/fisher.hpp"

using namespace augustin;

namespace {

AugustinProblem make_problem(int n, Eigen::Index d, double alpha) {
  GaussianSource src(7);
  std::vector<DensityMatrix> states;
  for (int j = 0; j < n; ++j) states.push_back(random_density_matrix(src, d));
  return AugustinProblem(std::move(states), random_simplex_point(src, n), Order(alpha));
}

void BM_PetzAugustinStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Eigen::Index d = state.range(1);
  const AugustinProblem p = make_problem(n, d, 1.5);
  const IterateState s = make_initial_state(p, DensityMatrix::maximally_mixed(d));
  for (auto _ : state) benchmark::DoNotOptimize(petz_augustin_step(p, s));
}
BENCHMARK(BM_PetzAugustinStep)->Args({8, 16})->Args({32, 32})->Args({32, 128});

void BM_ClassicalStep(benchmark::State& state) {
  GaussianSource src(3);
  const Eigen::Index n = state.range(0), d = state.range(1);
  RealMatrix pts(n, d);
  for (Eigen::Index j = 0; j < n; ++j) pts.row(j) = random_simplex_point(src, d).transpose();
  const ClassicalAugustinProblem p(pts, random_simplex_point(src, n), Order(1.5));
  const ClassicalIterateState s = make_initial_state(p, RealVector::Constant(d, 1.0 / static_cast<double>(d)));
  for (auto _ : state) benchmark::DoNotOptimize(classical_augustin_step(p, s));
}
BENCHMARK(BM_ClassicalStep)->Args({32, 128})->Args({256, 1024});

void BM_ThompsonMetric(benchmark::State& state) {
  GaussianSource src(5);
  const Eigen::Index d = state.range(0);
  const HermitianMatrix u = random_positive_definite(src, d);
  const HermitianMatrix v = random_positive_definite(src, d);
  for (auto _ : state) benchmark::DoNotOptimize(thompson_metric_psd(u, v));
}
BENCHMARK(BM_ThompsonMetric)->Arg(16)->Arg(64)->Arg(128);

void BM_CapacityOracle(benchmark::State& state) {
  GaussianSource src(9);
  std::vector<DensityMatrix> states;
  for (int j = 0; j < 4; ++j) states.push_back(random_density_matrix(src, 4));
  const CapacityProblem p(std::move(states), Order(0.8));
  const RealVector w = RealVector::Constant(4, 0.25);
  for (auto _ : state) benchmark::DoNotOptimize(approx_oracle(p, w, 1e-9));
}
BENCHMARK(BM_CapacityOracle);

void BM_TatonnementStep(benchmark::State& state) {
  GaussianSource src(11);
  const Eigen::Index n = state.range(0), d = state.range(1);
  const FisherMarket m = random_market(src, n, d, 0.1, 0.7, 0.75);
  const PriceState s = make_price_state(m, RealVector::Constant(d, 1.0 / static_cast<double>(d)));
  std::vector<int> all(static_cast<std::size_t>(d));
  for (int i = 0; i < static_cast<int>(d); ++i) all[static_cast<std::size_t>(i)] = i;
  for (auto _ : state) benchmark::DoNotOptimize(tatonnement_step(m, s, all));
}
BENCHMARK(BM_TatonnementStep)->Args({5, 6})->Args({100, 200});

}  // namespace

BENCHMARK_MAIN();

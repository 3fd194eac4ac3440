#include <random>

#include <benchmark/benchmark.h>

#include "fracstab/classlib.hpp"

namespace {

using namespace fracstab;

CommensurateTF g3(double alpha) { return tf_make(RealPoly{6.0}, RealPoly{6.0, 11.0, 6.0, 1.0}, alpha); }

RealPoly random_poly(int degree, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = n(rng);
  c.back() = 1.0;
  return RealPoly(c);
}

void BM_PolyRoots(benchmark::State& state) {
  const auto p = random_poly(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(poly_roots(p));
}
BENCHMARK(BM_PolyRoots)->Arg(4)->Arg(16)->Arg(64);

void BM_Sweep(benchmark::State& state) {
  const auto g = g3(0.7);
  SweepConfig cfg;
  cfg.points_per_decade = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep(g, cfg));
}
BENCHMARK(BM_Sweep)->Arg(40)->Arg(400);

void BM_ExtremumRe(benchmark::State& state) {
  const auto g = g3(0.7);
  const SweepConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(extremum_re(g, Direction::min, cfg));
}
BENCHMARK(BM_ExtremumRe);

void BM_CircleCriterion(benchmark::State& state) {
  const auto g = g3(1.0);
  const SweepConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(circle_criterion(g, {0.0, 4.5}, cfg));
}
BENCHMARK(BM_CircleCriterion);

void BM_AdamsPece(benchmark::State& state) {
  SimConfig cfg;
  cfg.h = 0.01;
  cfg.t_end = static_cast<double>(state.range(0));
  const VectorField f = [](double, const Eigen::VectorXd& x) -> Eigen::VectorXd { return -x; };
  const Eigen::VectorXd x0 = Eigen::VectorXd::Ones(1);
  for (auto _ : state) benchmark::DoNotOptimize(adams_pece(f, x0, 0.7, cfg));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(cfg.steps()));
}
BENCHMARK(BM_AdamsPece)->Arg(10)->Arg(40)->Complexity(benchmark::oNSquared);

void BM_SimulateLure(benchmark::State& state) {
  const auto ss = realize_state_space(g3(0.7));
  const auto phi = Nonlinearity::saturation(1.0, 1.0);
  SimConfig cfg;
  cfg.t_end = 20.0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_lure(ss, phi, PulseInput{5.0, 0.0, 10.0}, cfg));
}
BENCHMARK(BM_SimulateLure);

void BM_ClassGenerate(benchmark::State& state) {
  const auto spec = ClassSpec::zf2(1e-6, {{1.0, 1.0, 0.7}, {2.0, 2.0, 0.7}}, 3.0, 4.0, 0.7);
  const SweepConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(verify_class_instance(gen_stable_class(spec), cfg));
}
BENCHMARK(BM_ClassGenerate);

}  // namespace
BENCHMARK_MAIN();

#include "anosov/exponents.hpp"
#include "anosov/hilbert.hpp"
#include "anosov/limit_set.hpp"
#include "anosov/scenario.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace anosov;

namespace {

void BM_CartanProjection(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  Mat m(n, n);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(rng);
  if (m.determinant() < 0.0) m.col(0) = -m.col(0);
  const SquareMatrix g = SquareMatrix::from_matrix(m / std::pow(m.determinant(), 1.0 / n));
  for (auto _ : state) benchmark::DoNotOptimize(cartan_projection(g));
}
BENCHMARK(BM_CartanProjection)->Arg(3)->Arg(4)->Arg(6);

void BM_BallEnumeration(benchmark::State& state) {
  const GeneratorSet gs = build_scenario("fuchsian-irr-sl3").generators;
  const int len = static_cast<int>(state.range(0));
  for (auto _ : state) {
    std::size_t seen = 0;
    enumerate_ball(gs, len, [&](const BallEntry&) { ++seen; });
    benchmark::DoNotOptimize(seen);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ball_size(2, len)));
}
BENCHMARK(BM_BallEnumeration)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_CriticalExponent(benchmark::State& state) {
  std::vector<BallEntry> ball;
  enumerate_ball(build_scenario("schottky-so21").generators, 10, [&](const BallEntry& e) { ball.push_back(e); });
  const LinearForm phi = LinearForm::root(1, 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(critical_exponent(ball, phi, 0.25));
}
BENCHMARK(BM_CriticalExponent)->Unit(benchmark::kMillisecond);

void BM_BoxDimension(benchmark::State& state) {
  const LimitSample sample =
      sample_limit_set(build_scenario("schottky-so21").generators, 16, static_cast<int>(state.range(0)), 0);
  for (auto _ : state) benchmark::DoNotOptimize(box_dimension(sample.points, SymMetric::Sym));
}
BENCHMARK(BM_BoxDimension)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_HilbertDistancePsd(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const ConvexDomain cone = ConvexDomain::psd_cone(k);
  const Mat a = Mat::Identity(k, k);
  Mat b = Mat::Identity(k, k);
  for (int i = 0; i < k; ++i) b(i, i) = 1.0 + i;
  const Vec x = psd_vector(a), y = psd_vector(b);
  for (auto _ : state) benchmark::DoNotOptimize(hilbert_distance(cone, x, y));
}
BENCHMARK(BM_HilbertDistancePsd)->Arg(2)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();

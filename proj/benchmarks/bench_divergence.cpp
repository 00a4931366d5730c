#include <benchmark/benchmark.h>

#include <numbers>

#include "conediv/divergence.hpp"
#include "conediv/surface_body.hpp"

using namespace conediv;

namespace {

const SmoothBody2D& wavy_body() {
  static const SmoothBody2D body = SmoothBody2D::from_trig({1.0, 0, 0, 0.1});
  return body;
}

void BM_FDivergenceQuadrature(benchmark::State& state) {
  const Generator f = generators::power(2.0);
  QuadratureConfig cfg;
  cfg.circle_nodes = int(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        f_divergence(f, wavy_body(), Direction::PQ, Normalization::normalized,
                     cfg)
            .value.value());
  }
}
BENCHMARK(BM_FDivergenceQuadrature)->Arg(512)->Arg(4096)->Arg(16384);

void BM_EllipsoidExactBranch(benchmark::State& state) {
  const Ellipsoid ellipse = Ellipsoid::from_semi_axes({2.0, 1.0});
  const Generator f = generators::kl();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        f_divergence(f, ellipse, Direction::PQ, Normalization::normalized)
            .value.value());
  }
}
BENCHMARK(BM_EllipsoidExactBranch);

void BM_MixedDivergence(benchmark::State& state) {
  const Ellipsoid disk = Ellipsoid::unit_ball(2);
  const Ellipsoid ellipse = Ellipsoid::from_semi_axes({2.0, 1.0});
  const ConvexBody* pair[] = {&disk, &ellipse};
  const std::vector<Generator> gens = {generators::power(2.0),
                                       generators::power(2.0)};
  QuadratureConfig cfg;
  cfg.circle_nodes = int(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mixed_divergence(pair, gens, Direction::PQ, cfg).value());
  }
}
BENCHMARK(BM_MixedDivergence)->Arg(1024)->Arg(4096);

void BM_SurfaceBody(benchmark::State& state) {
  const Ellipsoid disk = Ellipsoid::unit_ball(2);
  const PlanarWeight one = [](const PlanarPoint&) { return 1.0; };
  const int grid = int(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(surface_body(disk, one, 0.1, grid).area());
  }
}
BENCHMARK(BM_SurfaceBody)->Arg(256)->Arg(1024);

void BM_PolytopeConstruction(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        Polytope::regular_polygon(int(state.range(0))).volume());
  }
}
BENCHMARK(BM_PolytopeConstruction)->Arg(8)->Arg(64)->Arg(512);

}  // namespace

BENCHMARK_MAIN();

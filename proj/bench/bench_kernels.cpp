// Serial reference kernels against their OpenMP variants.

#include "mbstab/assembly.hpp"
#include "mbstab/catalog.hpp"
#include "mbstab/critical.hpp"
#include "mbstab/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace mbstab;

namespace {

const MeshData& torus() {
  static const MeshData m = catalog_mesh("torus_height");
  return m;
}

std::vector<Vec2> disk_starts(int n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Vec2> out;
  while (static_cast<int>(out.size()) < n) {
    const Vec2 p{u(rng), u(rng)};
    if (norm(p) <= 1.0) out.push_back(p);
  }
  return out;
}

const FlowField& cubic_field() {
  // g = x^2 + y^2 - x^3/3 + x y^2 / 2
  static const FlowField f = FlowField::hamiltonian_of(Poly2({{{2, 0}, 1}, {{0, 2}, 1}, {{3, 0}, Rational(-1, 3)}, {{1, 2}, Rational(1, 2)}}));
  return f;
}

template <bool Parallel>
void classify(benchmark::State& state) {
  const auto& m = torus();
  const auto plateau_of = plateau_membership(m.mesh, m.field);
  for (auto _ : state) {
    auto r = Parallel ? classify_vertices_parallel(m.mesh, m.field, plateau_of)
                      : classify_vertices_serial(m.mesh, m.field, plateau_of);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void integrate_many(benchmark::State& state) {
  const auto starts = disk_starts(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto r = Parallel ? integrate_batch_parallel(cubic_field(), starts, 10.0, 1e-10)
                      : integrate_batch_serial(cubic_field(), starts, 10.0, 1e-10);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void sample_sphere(benchmark::State& state) {
  static const GluedField glued = glue(ModelSurface::sphere());
  const auto points = chart_samples(glued.surface(), 0);
  for (auto _ : state) {
    auto r = Parallel ? sample_glued_parallel(glued, 0, points) : sample_glued_serial(glued, 0, points);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(classify<false>)->Name("classify_vertices/serial");
BENCHMARK(classify<true>)->Name("classify_vertices/parallel");
BENCHMARK(integrate_many<false>)->Name("integrate_batch/serial")->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(integrate_many<true>)->Name("integrate_batch/parallel")->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(sample_sphere<false>)->Name("sample_glued/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(sample_sphere<true>)->Name("sample_glued/parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

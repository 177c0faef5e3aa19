// Serial reference vs OpenMP kernels on structured meshes.
#include <benchmark/benchmark.h>

#include <cmath>
#include <map>

#include "wavest/estimators.hpp"
#include "wavest/fem.hpp"

using namespace wavest;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(1) ? Exec::parallel : Exec::serial; }

const Mesh& mesh_of(std::int64_t n) {
  static std::map<std::int64_t, Mesh> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, generate_structured(static_cast<std::size_t>(n), StructuredPattern::diagonal)).first;
  return it->second;
}

std::vector<double> bump(const Mesh& m) {
  std::vector<double> g(m.num_vertices());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& p = m.vertices()[i];
    g[i] = std::sin(3.0 * p.x) * std::cos(2.0 * p.y);
  }
  return g;
}

void BM_AssembleStiffness(benchmark::State& s) {
  const auto& m = mesh_of(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(assemble_stiffness(m, exec_of(s)));
  s.SetItemsProcessed(s.iterations() * static_cast<std::int64_t>(m.num_triangles()));
}

void BM_AssembleLoad(benchmark::State& s) {
  const auto& m = mesh_of(s.range(0));
  const auto rule = QuadratureRule::seven_point();
  for (auto _ : s)
    benchmark::DoNotOptimize(assemble_load(m, [](double x, double y) { return std::exp(-100.0 * (x * x + y * y)); },
                                           rule, exec_of(s)));
}

void BM_Spmv(benchmark::State& s) {
  const auto& m = mesh_of(s.range(0));
  const auto k = assemble_stiffness(m, Exec::serial);
  const auto x = bump(m);
  std::vector<double> y(x.size());
  for (auto _ : s) {
    kernels::spmv(k, x, y, exec_of(s));
    benchmark::ClobberMemory();
  }
}

void BM_Dot(benchmark::State& s) {
  const auto& m = mesh_of(s.range(0));
  const auto x = bump(m);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::dot(x, x, exec_of(s)));
}

void BM_EdgeResidual(benchmark::State& s) {
  const auto& m = mesh_of(s.range(0));
  const auto x = bump(m);
  for (auto _ : s) benchmark::DoNotOptimize(est::edge_residual_sum(m, x, exec_of(s)));
}

void BM_MassSolve(benchmark::State& s) {
  const auto& m = mesh_of(s.range(0));
  const SpdSolver solver(assemble_mass(m, Exec::serial), 1e-10, 0, exec_of(s));
  const auto b = bump(m);
  for (auto _ : s) benchmark::DoNotOptimize(solver.solve(b));
}

// Args: {mesh n, parallel?}
#define WAVEST_BENCH(fn) BENCHMARK(fn)->ArgsProduct({{64, 256}, {0, 1}})->Unit(benchmark::kMicrosecond)
WAVEST_BENCH(BM_AssembleStiffness);
WAVEST_BENCH(BM_AssembleLoad);
WAVEST_BENCH(BM_Spmv);
WAVEST_BENCH(BM_Dot);
WAVEST_BENCH(BM_EdgeResidual);
WAVEST_BENCH(BM_MassSolve);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "nc3/assembly.hpp"
#include "nc3/problems.hpp"

namespace {

void BM_CoeffsFromGaussValues(benchmark::State& state) {
  nc3::PolyCoeffs p;
  for (int k = 0; k < nc3::kLocalDim; ++k) p.c[k] = 0.1 * (k + 1);
  const nc3::GaussValues v = nc3::gauss_values(p);
  for (auto _ : state) benchmark::DoNotOptimize(nc3::coeffs_from_gauss_values(v));
}
BENCHMARK(BM_CoeffsFromGaussValues);

void BM_LocalMatrix(benchmark::State& state) {
  const nc3::Mesh mesh = nc3::unit_square_grid(4);
  const nc3::PresetProblem p = nc3::preset_problem("dirichlet-paper");
  const nc3::QuadRule2D rule = nc3::tensor_rule(5, 5);
  for (auto _ : state) benchmark::DoNotOptimize(nc3::local_matrix(mesh, 5, p.problem, rule));
}
BENCHMARK(BM_LocalMatrix);

void BM_Assemble(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const nc3::Mesh mesh = nc3::unit_square_grid(n);
  const nc3::PresetProblem p = nc3::preset_problem("neumann-paper");
  const nc3::DofMap dofs = nc3::build_dofmap(mesh, p.problem.space_kind());
  for (auto _ : state) benchmark::DoNotOptimize(nc3::assemble(mesh, dofs, p.problem));
  state.counters["dofs"] = dofs.total;
}
BENCHMARK(BM_Assemble)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const nc3::Mesh mesh = nc3::unit_square_grid(n);
  const nc3::PresetProblem p = nc3::preset_problem("dirichlet-paper");
  const nc3::DofMap dofs = nc3::build_dofmap(mesh, p.problem.space_kind());
  const nc3::SparseSystem sys = nc3::assemble(mesh, dofs, p.problem);
  int iterations = 0;
  for (auto _ : state) {
    const nc3::SolveOutcome out = nc3::solve(sys);
    iterations = out.iterations;
    benchmark::DoNotOptimize(out.coefficients.data());
  }
  state.counters["iterations"] = iterations;
}
BENCHMARK(BM_Solve)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

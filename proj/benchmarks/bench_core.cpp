#include <memory>

#include <benchmark/benchmark.h>

#include "ferronem/admm.hpp"
#include "ferronem/descent.hpp"
#include "ferronem/fields.hpp"
#include "ferronem/mesh.hpp"
#include "ferronem/problems.hpp"

namespace {

using namespace ferronem;

const MaterialConstants kMc = material_constants(0.005);

void BM_GenerateStructured(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate_structured(n));
}
BENCHMARK(BM_GenerateStructured)->Arg(12)->Arg(45)->Arg(89);

void BM_EnergyPairwise(benchmark::State& state) {
  const auto mesh = std::make_shared<const Triangulation>(generate_structured(static_cast<int>(state.range(0))));
  const NodalField f = interpolate(analytic_solution(example1_spec(), kMc), mesh, kMc);
  for (auto _ : state) benchmark::DoNotOptimize(energy_pairwise(f));
}
BENCHMARK(BM_EnergyPairwise)->Arg(12)->Arg(45)->Arg(89);

void BM_EnergyQuadrature(benchmark::State& state) {
  const auto mesh = std::make_shared<const Triangulation>(generate_structured(static_cast<int>(state.range(0))));
  const NodalField f = interpolate(analytic_solution(example1_spec(), kMc), mesh, kMc);
  for (auto _ : state) benchmark::DoNotOptimize(energy_quadrature(f));
}
BENCHMARK(BM_EnergyQuadrature)->Arg(12)->Arg(45)->Arg(89);

void BM_AdmmSolve(benchmark::State& state) {
  const auto mesh = std::make_shared<const Triangulation>(generate_structured(static_cast<int>(state.range(0))));
  const NodalField psi0 = initial_guess(example1_spec(), default_path_end(), mesh, kMc);
  const IterateData data = IterateData::from_field(psi0);
  AdmmParams params;
  params.eps_pri = 1e-8;
  const AdmmState warm = AdmmState::zeros(mesh->num_interior());
  for (auto _ : state) benchmark::DoNotOptimize(admm_solve(data, warm, params, *mesh, kMc));
}
BENCHMARK(BM_AdmmSolve)->Arg(12)->Arg(23)->Arg(45)->Unit(benchmark::kMillisecond);

void BM_RunDescent(benchmark::State& state) {
  const auto mesh = std::make_shared<const Triangulation>(generate_structured(static_cast<int>(state.range(0))));
  const NodalField psi0 = initial_guess(example1_spec(), default_path_end(), mesh, kMc);
  AdmmParams params;
  params.eps_pri = 1e-8;
  for (auto _ : state) benchmark::DoNotOptimize(run_descent(psi0, DescentParams{}, params));
}
BENCHMARK(BM_RunDescent)->Arg(12)->Arg(23)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

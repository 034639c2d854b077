#include <benchmark/benchmark.h>

#include <cmath>

#include "duscar/analysis.hpp"
#include "duscar/circuit.hpp"
#include "duscar/kernels.hpp"

using namespace duscar;

namespace {

std::vector<cplx> random_amps(std::size_t dim) {
  Rng rng(3);
  std::vector<cplx> v(dim);
  for (auto& z : v) z = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
  return v;
}

// Arg: N at d = 3; the wrap bond is the slowest site so it is the one timed.
void BM_two_site_omp(benchmark::State& state) {
  const kernels::Lattice lat{static_cast<int>(state.range(0)), 3};
  Rng rng(1);
  const Op g = random_unitary(9, rng);
  auto psi = random_amps(lat.dim());
  for (auto _ : state) {
    kernels::apply_two_site(psi, lat, g.data(), lat.n_sites - 1);
    benchmark::DoNotOptimize(psi.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lat.dim()));
}

void BM_two_site_reference(benchmark::State& state) {
  const kernels::Lattice lat{static_cast<int>(state.range(0)), 3};
  Rng rng(1);
  const Op g = random_unitary(9, rng);
  const auto psi = random_amps(lat.dim());
  for (auto _ : state) {
    auto out = kernels::reference::apply_two_site(psi, lat, g.data(), lat.n_sites - 1);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lat.dim()));
}

void BM_diagonal_expectation_omp(benchmark::State& state) {
  const kernels::Lattice lat{static_cast<int>(state.range(0)), 3};
  const auto psi = random_amps(lat.dim());
  const auto z = sz_local(3);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::diagonal_expectation(psi, lat, z));
}

void BM_diagonal_expectation_reference(benchmark::State& state) {
  const kernels::Lattice lat{static_cast<int>(state.range(0)), 3};
  const auto psi = random_amps(lat.dim());
  const auto z = sz_local(3);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reference::diagonal_expectation(psi, lat, z));
}

void BM_floquet_step(benchmark::State& state) {
  const ScarModel m = make_scar_model(static_cast<int>(state.range(0)), 3, "example_a", 1, 0.01, LayerMode::DU1_DU2);
  const BrickworkCircuit c = circuit_from_model(m);
  auto psi = random_amps(c.lattice().dim());
  for (auto _ : state) {
    floquet_step_inplace(psi, c);
    benchmark::DoNotOptimize(psi.data());
  }
}

void BM_floquet_matrix(benchmark::State& state) {
  const ScarModel m = make_scar_model(static_cast<int>(state.range(0)), 3, "example_a", 1, 0.0, LayerMode::DU1_DU2);
  const BrickworkCircuit c = circuit_from_model(m);
  for (auto _ : state) benchmark::DoNotOptimize(floquet_matrix(c));
}

}  // namespace

BENCHMARK(BM_two_site_omp)->Arg(6)->Arg(8)->Arg(10)->Arg(12);
BENCHMARK(BM_two_site_reference)->Arg(6)->Arg(8)->Arg(10)->Arg(12);
BENCHMARK(BM_diagonal_expectation_omp)->Arg(8)->Arg(12);
BENCHMARK(BM_diagonal_expectation_reference)->Arg(8)->Arg(12);
BENCHMARK(BM_floquet_step)->Arg(8)->Arg(10)->Arg(12);
BENCHMARK(BM_floquet_matrix)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

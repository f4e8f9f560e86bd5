// Serial vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.
#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "rmtwork/kernels.hpp"
#include "rmtwork/workstats.hpp"

namespace {

using namespace rmtwork;

struct Atoms {
  std::vector<double> work, prob;
};

Atoms make_atoms(std::size_t n) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> w(-40.0, 40.0), p(0.0, 1.0);
  Atoms a{std::vector<double>(n), std::vector<double>(n)};
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    a.work[k] = w(rng);
    a.prob[k] = p(rng);
    total += a.prob[k];
  }
  for (double& x : a.prob) x /= total;
  return a;
}

template <auto Kernel>
void bm_characteristic(benchmark::State& state) {
  const Atoms atoms = make_atoms(static_cast<std::size_t>(state.range(0)));
  const auto u = uniform_grid(0.0, 3.0, 512);
  std::vector<std::complex<double>> out(u.size());
  for (auto _ : state) {
    Kernel(atoms.work, atoms.prob, u, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<long>(u.size()));
  state.counters["threads"] = kernels::max_threads();
}

template <auto Kernel>
void bm_inverse_fourier(benchmark::State& state) {
  const auto n_u = static_cast<int>(state.range(0));
  const auto u = uniform_grid(0.0, 1000.0, n_u);
  std::vector<double> weight(u.size(), u[1] - u[0]);
  std::vector<std::complex<double>> g(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) g[k] = std::polar(1.0 / (1.0 + u[k]), u[k]);
  const auto w = uniform_grid(-40.0, 40.0, 200);
  std::vector<double> out(w.size());
  for (auto _ : state) {
    Kernel(u, weight, g, w, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * n_u * static_cast<long>(w.size()));
  state.counters["threads"] = kernels::max_threads();
}

}  // namespace

BENCHMARK(bm_characteristic<kernels::characteristic_serial>)->Name("characteristic/serial")->Arg(90000)->Arg(1 << 20);
BENCHMARK(bm_characteristic<kernels::characteristic_parallel>)->Name("characteristic/omp")->Arg(90000)->Arg(1 << 20);
BENCHMARK(bm_inverse_fourier<kernels::inverse_fourier_serial>)->Name("inverse_fourier/serial")->Arg(20000);
BENCHMARK(bm_inverse_fourier<kernels::inverse_fourier_parallel>)->Name("inverse_fourier/omp")->Arg(20000);

BENCHMARK_MAIN();

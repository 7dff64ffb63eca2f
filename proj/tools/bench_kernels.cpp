#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "pairint/kernels.hpp"
#include "pairint/particles.hpp"
#include "pairint/spectral.hpp"

using namespace pairint;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

void bench_syrk_omp(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0)), n = 2 * m;
  auto A = random_vector(m * n, 1);
  auto d = random_vector(n, 2);
  std::vector<double> C(m * m);
  for (auto _ : state) {
    kernels::syrk_weighted(A.data(), m, n, d.data(), C.data());
    benchmark::DoNotOptimize(C.data());
  }
}

void bench_syrk_serial(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0)), n = 2 * m;
  auto A = random_vector(m * n, 1);
  auto d = random_vector(n, 2);
  std::vector<double> C(m * m);
  for (auto _ : state) {
    kernels::serial::syrk_weighted(A.data(), m, n, d.data(), C.data());
    benchmark::DoNotOptimize(C.data());
  }
}

void bench_cholesky_omp(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  auto A = random_vector(m * m, 3);
  auto d = random_vector(m, 4);
  std::vector<double> M(m * m), C(m * m);
  kernels::serial::syrk_weighted(A.data(), m, m, d.data(), M.data());
  for (std::size_t i = 0; i < m; ++i) M[i * m + i] += m;
  for (auto _ : state) {
    C = M;
    kernels::cholesky(C.data(), m, 0.0);
    benchmark::DoNotOptimize(C.data());
  }
}

void bench_cholesky_serial(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  auto A = random_vector(m * m, 3);
  auto d = random_vector(m, 4);
  std::vector<double> M(m * m), C(m * m);
  kernels::serial::syrk_weighted(A.data(), m, m, d.data(), M.data());
  for (std::size_t i = 0; i < m; ++i) M[i * m + i] += m;
  for (auto _ : state) {
    C = M;
    kernels::serial::cholesky(C.data(), m, 0.0);
    benchmark::DoNotOptimize(C.data());
  }
}

std::vector<Vec2> random_positions(std::size_t N) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vec2> p(N);
  for (auto& x : p) x = {u(rng), 0.0};
  return p;
}

void bench_forces_omp(benchmark::State& state) {
  auto spec = PotentialSpec::periodic_morse_1d(0.1, 1.2, 0.9);
  const int tn = 16384;
  std::vector<double> table(tn);
  for (int i = 0; i < tn; ++i) table[i] = spec.raw_dx(static_cast<double>(i) / tn);
  auto pos = random_positions(static_cast<std::size_t>(state.range(0)));
  std::vector<Vec2> out;
  for (auto _ : state) {
    kernels_particles::forces(pos, 1, table, table, tn, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void bench_forces_serial(benchmark::State& state) {
  auto spec = PotentialSpec::periodic_morse_1d(0.1, 1.2, 0.9);
  const int tn = 16384;
  std::vector<double> table(tn);
  for (int i = 0; i < tn; ++i) table[i] = spec.raw_dx(static_cast<double>(i) / tn);
  auto pos = random_positions(static_cast<std::size_t>(state.range(0)));
  std::vector<Vec2> out;
  for (auto _ : state) {
    kernels_particles::serial::forces(pos, 1, table, table, tn, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void bench_autocorr_fft(benchmark::State& state) {
  Grid grid(1, static_cast<int>(state.range(0)));
  Density rho;
  rho.grid = grid;
  rho.values = random_vector(grid.size(), 5);
  double mass = rho.mass();
  for (double& v : rho.values) v /= mass;
  for (auto _ : state) {
    auto F = autocorrelation(rho);
    benchmark::DoNotOptimize(F.values.data());
  }
}

void bench_autocorr_direct(benchmark::State& state) {
  Grid grid(1, static_cast<int>(state.range(0)));
  Density rho;
  rho.grid = grid;
  rho.values = random_vector(grid.size(), 5);
  double mass = rho.mass();
  for (double& v : rho.values) v /= mass;
  for (auto _ : state) {
    auto F = autocorrelation_direct(rho);
    benchmark::DoNotOptimize(F.data());
  }
}

}  // namespace

BENCHMARK(bench_syrk_omp)->Arg(200)->Arg(400)->Arg(800);
BENCHMARK(bench_syrk_serial)->Arg(200)->Arg(400)->Arg(800);
BENCHMARK(bench_cholesky_omp)->Arg(200)->Arg(400)->Arg(800);
BENCHMARK(bench_cholesky_serial)->Arg(200)->Arg(400)->Arg(800);
BENCHMARK(bench_forces_omp)->Arg(200)->Arg(400);
BENCHMARK(bench_forces_serial)->Arg(200)->Arg(400);
BENCHMARK(bench_autocorr_fft)->Arg(256)->Arg(1024);
BENCHMARK(bench_autocorr_direct)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();

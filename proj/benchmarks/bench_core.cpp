#include <benchmark/benchmark.h>

#include <random>

#include "projsum/fillmore.hpp"
#include "projsum/strategies.hpp"
#include "projsum/verifier.hpp"

using namespace projsum;

namespace {

SymMatrix random_psd(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  DenseMatrix f(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f(i, j) = g(rng);
  SymMatrix a = SymMatrix::from_dense(f * f.transpose());
  const double s = static_cast<double>(m) / a.trace();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a.set(i, j, a(i, j) * s);
  return a;
}

void BM_SymEigen(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SymMatrix a = random_psd(n, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(sym_eigen(a));
}
BENCHMARK(BM_SymEigen)->Arg(8)->Arg(32)->Arg(96);

void BM_FillmoreDense(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SymMatrix a = random_psd(n, 2 * n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(fillmore_decompose({a, 2 * n}));
}
BENCHMARK(BM_FillmoreDense)->Arg(8)->Arg(32)->Arg(64);

void BM_FillmoreDiagonal(benchmark::State& state) {
  const auto m = state.range(0);
  // Pair diagonal: 3m copies of 7/5 and m copies of 3/5.
  std::vector<BigRational> d(static_cast<std::size_t>(3 * m), BigRational(7, 5));
  d.insert(d.end(), static_cast<std::size_t>(m), BigRational(3, 5));
  const auto total = static_cast<std::size_t>(24 * m / 5);
  for (auto _ : state) benchmark::DoNotOptimize(fillmore_diagonal_fast(std::span<const BigRational>(d), total));
}
BENCHMARK(BM_FillmoreDiagonal)->Arg(5)->Arg(50)->Arg(250);

void BM_BuildAndVerify(benchmark::State& state) {
  const SpectralElement e = parse_element("", "1.41421356; 0.3");
  for (auto _ : state) {
    const Certificate cert = strat_spectral(e);
    benchmark::DoNotOptimize(verify_certificate(cert));
  }
}
BENCHMARK(BM_BuildAndVerify);

void BM_Verify(benchmark::State& state) {
  const Certificate cert = strat_spectral(parse_element("3", "1.25:(2); 0.9:(1)"));
  for (auto _ : state) benchmark::DoNotOptimize(verify_certificate(cert));
}
BENCHMARK(BM_Verify);

}  // namespace

BENCHMARK_MAIN();

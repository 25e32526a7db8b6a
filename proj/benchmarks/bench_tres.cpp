// Microbenchmarks for the hot paths: exact elimination, T-flat enumeration,
// complex construction and verification, and resolution building.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "tres/matrix.hpp"
#include "tres/matroid.hpp"
#include "tres/multigraded.hpp"
#include "tres/multiplicity.hpp"
#include "tres/scalar.hpp"
#include "tres/tcomplex.hpp"

using namespace tres;

namespace {

template <class K>
Matrix<K> random_matrix(std::mt19937& rng, int r, int c) {
  std::uniform_int_distribution<int> d(-9, 9);
  Matrix<K> m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = K(d(rng));
  return m;
}

// Vandermonde columns give the uniform rank-w matroid on n elements.
Matrix<Rational> uniform_matrix(int w, int n) {
  Matrix<Rational> m(w, n);
  for (int j = 0; j < n; ++j) {
    Rational p(1);
    for (int i = 0; i < w; ++i) {
      m.at(i, j) = p;
      p *= Rational(j + 1);
    }
  }
  return m;
}

// The worked 2x4 presentation over three variables.
MultigradedPresentation<Rational> worked_presentation() {
  MultigradedPresentation<Rational> p;
  p.vars = 3;
  p.scalar = Matrix<Rational>(2, 4);
  const long long vals[] = {1, 1, 1, 1, 1, 1, 2, 3};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j) p.scalar.at(i, j) = Rational(vals[i * 4 + j]);
  p.target_degrees = {{1, 1, 0}, {0, 0, 1}};
  p.source_degrees = {{3, 1, 1}, {1, 3, 1}, {1, 1, 3}, {1, 2, 2}};
  return p;
}

MultigradedPresentation<Rational> monomial_row(int k) {
  MultigradedPresentation<Rational> p;
  p.vars = 2;
  p.scalar = Matrix<Rational>(1, k);
  for (int j = 0; j < k; ++j) {
    p.scalar.at(0, j) = Rational(1);
    p.source_degrees.push_back({2 * j, 2 * (k - j)});
  }
  p.target_degrees = {{0, 0}};
  return p;
}

void bm_rref_rational(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(11);
  const auto m = random_matrix<Rational>(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(rank_of_matrix(m));
}

void bm_rref_fp(benchmark::State& state) {
  Fp::set_modulus(1000003);
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(13);
  const auto m = random_matrix<Fp>(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(rank_of_matrix(m));
}

// Fresh representation per iteration so the memo caches start cold.
void bm_tflats_uniform(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = uniform_matrix(3, n);
  for (auto _ : state) {
    Representation<Rational> rep(m);
    benchmark::DoNotOptimize(t_flats(rep).size());
  }
}

void bm_build_t_plus(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = uniform_matrix(3, n);
  for (auto _ : state) {
    Representation<Rational> rep(m);
    benchmark::DoNotOptimize(build_T_plus(rep).dims.size());
  }
}

void bm_verify_acyclic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = uniform_matrix(2, n);
  for (auto _ : state) {
    Representation<Rational> rep(m);
    benchmark::DoNotOptimize(verify_acyclic(rep).ok);
  }
}

void bm_multiplicity_full(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = uniform_matrix(3, n);
  GroundSubset full;
  for (int e = 0; e < n; ++e) full.push_back(e);
  for (auto _ : state) {
    Representation<Rational> rep(m);
    benchmark::DoNotOptimize(multiplicity_space(rep, full).basis.dim());
  }
}

void bm_build_resolution(benchmark::State& state) {
  const auto p = worked_presentation();
  for (auto _ : state) benchmark::DoNotOptimize(build_resolution(p).length());
}

void bm_verify_resolution(benchmark::State& state) {
  const auto p = worked_presentation();
  for (auto _ : state) benchmark::DoNotOptimize(verify_resolution(p).ok);
}

void bm_taylor_resolution(benchmark::State& state) {
  const auto p = monomial_row(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_resolution(p).length());
}

}  // namespace

BENCHMARK(bm_rref_rational)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(bm_rref_fp)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(bm_tflats_uniform)->Arg(6)->Arg(7)->Arg(8);
BENCHMARK(bm_build_t_plus)->Arg(6)->Arg(7)->Arg(8);
BENCHMARK(bm_verify_acyclic)->Arg(5)->Arg(6)->Arg(7);
BENCHMARK(bm_multiplicity_full)->Arg(6)->Arg(7)->Arg(8);
BENCHMARK(bm_build_resolution);
BENCHMARK(bm_verify_resolution);
BENCHMARK(bm_taylor_resolution)->Arg(4)->Arg(5)->Arg(6);

BENCHMARK_MAIN();

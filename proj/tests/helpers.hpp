#pragma once

// Shared test fixtures: small explicit representations plus a seeded
// generator that sprinkles loops and parallel columns.

#include <cstdint>
#include <random>
#include <vector>

#include "tres/matroid.hpp"
#include "tres/multigraded.hpp"
#include "tres/scalar.hpp"

namespace tres::testing {

// the running 2x4 example: columns (1,1),(1,1),(1,2),(1,3)
inline Representation<Rational> running_example() {
  Matrix<Rational> m(2, 4);
  long long vals[] = {1, 1, 1, 1, 1, 1, 2, 3};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j) m.at(i, j) = Rational(vals[i * 4 + j]);
  return Representation<Rational>(m);
}

// uniform rank-2 matroid on 5 elements via a Vandermonde matrix
inline Representation<Rational> uniform25() {
  Matrix<Rational> m(2, 5);
  for (int j = 0; j < 5; ++j) {
    m.at(0, j) = Rational(1);
    m.at(1, j) = Rational(j + 1);
  }
  return Representation<Rational>(m);
}

// uniform rank-2 matroid on 4 elements
inline Representation<Rational> uniform24() {
  Matrix<Rational> m(2, 4);
  for (int j = 0; j < 4; ++j) {
    m.at(0, j) = Rational(1);
    m.at(1, j) = Rational(j + 1);
  }
  return Representation<Rational>(m);
}

// two disjoint parallel pairs: a disconnected level-1 T-flat on the full set
inline Representation<Rational> parallel_pairs() {
  Matrix<Rational> m(2, 4);
  long long vals[] = {1, 1, 0, 0, 0, 0, 1, 1};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j) m.at(i, j) = Rational(vals[i * 4 + j]);
  return Representation<Rational>(m);
}

// rank 1 on 3 parallel elements
inline Representation<Rational> triple_point() {
  Matrix<Rational> m(1, 3);
  for (int j = 0; j < 3; ++j) m.at(0, j) = Rational(1);
  return Representation<Rational>(m);
}

inline Representation<Rational> random_rep(std::mt19937& rng, int w, int n) {
  std::uniform_int_distribution<int> d(-3, 3);
  std::uniform_int_distribution<int> coin(0, 9);
  Matrix<Rational> m(w, n);
  for (int i = 0; i < w; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = Rational(d(rng));
  // sprinkle loops and parallel elements to exercise the degenerate paths
  for (int j = 0; j < n; ++j) {
    if (coin(rng) == 0)
      for (int i = 0; i < w; ++i) m.at(i, j) = Rational(0);
    if (j > 0 && coin(rng) == 1)
      for (int i = 0; i < w; ++i) m.at(i, j) = m.at(i, j - 1);
  }
  return Representation<Rational>(m);
}

inline std::vector<std::uint32_t> all_tflat_masks(const Representation<Rational>& rep) {
  std::vector<std::uint32_t> out;
  for (const auto& [lvl, recs] : t_flats(rep))
    for (const auto& rec : recs) out.push_back(mask_of(rec.set));
  return out;
}

// the worked multigraded example: the running matrix with its multidegrees
inline MultigradedPresentation<Rational> graded_example() {
  MultigradedPresentation<Rational> p;
  p.vars = 3;
  p.scalar = running_example().phi;
  p.target_degrees = {{1, 1, 0}, {0, 0, 1}};
  p.source_degrees = {{3, 1, 1}, {1, 3, 1}, {1, 1, 3}, {1, 2, 2}};
  return p;
}

// cyclic presentation of a monomial ideal: one target of degree 0 and an
// all-ones scalar row, one column per generator degree
inline MultigradedPresentation<Rational> monomial_presentation(
    const std::vector<Multidegree>& gens) {
  MultigradedPresentation<Rational> p;
  p.vars = gens.empty() ? 0 : static_cast<int>(gens[0].size());
  p.scalar = Matrix<Rational>(1, static_cast<int>(gens.size()));
  for (int j = 0; j < p.scalar.cols; ++j) p.scalar.at(0, j) = Rational(1);
  p.source_degrees = gens;
  p.target_degrees = {Multidegree(p.vars, 0)};
  return p;
}

// random multihomogeneous presentation: random scalar part, random target
// degrees, and source degrees bumped above the joins their columns require
inline MultigradedPresentation<Rational> random_presentation(std::mt19937& rng, int w, int n,
                                                             int vars) {
  std::uniform_int_distribution<long> d(0, 3);
  MultigradedPresentation<Rational> p;
  p.vars = vars;
  p.scalar = random_rep(rng, w, n).phi;
  for (int i = 0; i < w; ++i) {
    Multidegree t(vars);
    for (auto& v : t) v = d(rng);
    p.target_degrees.push_back(std::move(t));
  }
  for (int j = 0; j < n; ++j) {
    Multidegree s(vars, 0);
    for (int i = 0; i < w; ++i)
      if (!is_zero(p.scalar.at(i, j))) s = deg_lcm(s, p.target_degrees[i]);
    for (auto& v : s) v += d(rng);
    p.source_degrees.push_back(std::move(s));
  }
  return p;
}

}  // namespace tres::testing

#pragma once

// Brute-force reference implementations, test-only. Everything here works
// straight from definitions with no shortcuts, as a correctness anchor for
// the production modules.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "tres/matrix.hpp"
#include "tres/matroid.hpp"
#include "tres/multigraded.hpp"
#include "tres/subspace.hpp"
#include "tres/symcoords.hpp"

namespace tres::oracle {

struct OracleMatroid {
  int n = 0;
  std::vector<int> rank;    // indexed by subset bitmask
  std::vector<char> indep;  // rank == popcount
  int full_rank() const { return rank.back(); }
};

template <class K>
OracleMatroid oracle_matroid(const Representation<K>& rep) {
  if (rep.n() > 16) throw std::invalid_argument("oracle_matroid: ground set too large");
  OracleMatroid om;
  om.n = rep.n();
  const std::uint32_t total = std::uint32_t{1} << om.n;
  om.rank.resize(total);
  om.indep.resize(total);
  for (std::uint32_t m = 0; m < total; ++m) {
    om.rank[m] = rank_of_matrix(columns_of(rep, m));
    om.indep[m] = (om.rank[m] == std::popcount(m));
  }
  if (om.n <= 10) {
    // hereditary axiom
    for (std::uint32_t m = 0; m < total; ++m)
      if (om.indep[m])
        for (int e = 0; e < om.n; ++e)
          if ((m >> e) & 1u)
            if (!om.indep[m & ~(std::uint32_t{1} << e)])
              throw std::logic_error("oracle_matroid: hereditary axiom failed");
    // exchange axiom
    for (std::uint32_t x = 0; x < total; ++x) {
      if (!om.indep[x]) continue;
      for (std::uint32_t y = 0; y < total; ++y) {
        if (!om.indep[y] || std::popcount(y) != std::popcount(x) + 1) continue;
        bool found = false;
        for (int e = 0; e < om.n && !found; ++e)
          if (((y >> e) & 1u) && !((x >> e) & 1u) && om.indep[x | (std::uint32_t{1} << e)])
            found = true;
        if (!found) throw std::logic_error("oracle_matroid: exchange axiom failed");
      }
    }
  }
  return om;
}

inline std::vector<std::uint32_t> oracle_circuits(const OracleMatroid& om) {
  std::vector<std::uint32_t> out;
  const std::uint32_t total = std::uint32_t{1} << om.n;
  for (std::uint32_t m = 1; m < total; ++m) {
    if (om.indep[m]) continue;
    bool minimal = true;
    for (int e = 0; e < om.n && minimal; ++e)
      if ((m >> e) & 1u)
        if (!om.indep[m & ~(std::uint32_t{1} << e)]) minimal = false;
    if (minimal) out.push_back(m);
  }
  return out;
}

// Dual rank straight from the definition of the dual matroid: A is
// independent in M* when S \ A spans M; the rank is the largest independent
// subset.
inline int oracle_dual_rank(const OracleMatroid& om, std::uint32_t a) {
  const std::uint32_t full = (std::uint32_t{1} << om.n) - 1;
  int best = 0;
  for (std::uint32_t x = a;; x = (x - 1) & a) {
    if (om.rank[full & ~x] == om.full_rank()) best = std::max(best, std::popcount(x));
    if (x == 0) break;
  }
  return best;
}

inline std::uint32_t oracle_dual_closure(const OracleMatroid& om, std::uint32_t a) {
  std::uint32_t cur = a;
  for (;;) {
    std::uint32_t next = cur;
    int base = oracle_dual_rank(om, cur);
    for (int e = 0; e < om.n; ++e) {
      std::uint32_t b = std::uint32_t{1} << e;
      if ((cur & b) == 0 && oracle_dual_rank(om, cur | b) == base) next |= b;
    }
    if (next == cur) return cur;
    cur = next;
  }
}

// T-flats as the complements of proper flats of the dual matroid.
inline std::set<std::uint32_t> oracle_tflats_dual(const OracleMatroid& om) {
  const std::uint32_t full = (std::uint32_t{1} << om.n) - 1;
  std::set<std::uint32_t> out;
  for (std::uint32_t a = 1; a <= full; ++a) {
    std::uint32_t f = full & ~a;
    bool flat = true;
    int rf = oracle_dual_rank(om, f);
    for (int e = 0; e < om.n && flat; ++e) {
      std::uint32_t b = std::uint32_t{1} << e;
      if ((f & b) == 0 && oracle_dual_rank(om, f | b) == rf) flat = false;
    }
    if (flat) out.insert(a);
  }
  return out;
}

// T-flats via the inductive decomposition criterion: level 0 are the
// circuits; a level-n set qualifies when the complements of the level-(n-1)
// T-flats inside it tile it.
inline std::map<int, std::set<std::uint32_t>> oracle_tflats_inductive(const OracleMatroid& om) {
  const std::uint32_t full = (std::uint32_t{1} << om.n) - 1;
  std::map<int, std::set<std::uint32_t>> out;
  for (std::uint32_t c : oracle_circuits(om)) out[0].insert(c);
  int top_level = om.n - om.full_rank() - 1;
  for (int lvl = 1; lvl <= top_level; ++lvl) {
    for (std::uint32_t a = 1; a <= full; ++a) {
      if (std::popcount(a) - om.rank[a] - 1 != lvl) continue;
      std::uint32_t covered = 0;
      bool disjoint = true;
      int k = 0;
      for (std::uint32_t sub : out[lvl - 1]) {
        if ((a & sub) != sub) continue;
        std::uint32_t part = a & ~sub;
        if (covered & part) disjoint = false;
        covered |= part;
        ++k;
      }
      if (disjoint && k >= 1 && covered == a) out[lvl].insert(a);
    }
  }
  return out;
}

// Multiplicity space straight from the definition: the span of the products
// of step intersections over every maximal chain of T-flats ending at I.
template <class K>
Subspace<K> chain_sum_multiplicity(const Representation<K>& rep, const GroundSubset& I) {
  auto om = oracle_matroid(rep);
  auto levels = oracle_tflats_inductive(om);
  std::uint32_t target = mask_of(I);
  int n = std::popcount(target) - om.rank[target] - 1;
  const int w = rep.w_dim;
  const int ambient = sym_coords(w, std::max(n, 0)).dim();
  if (n < 0 || !levels.count(n) || !levels[n].count(target))
    return Subspace<K>::from_rows(ambient, Matrix<K>(0, ambient));
  if (n == 0) {
    Matrix<K> one(1, 1);
    one.at(0, 0) = K(1);
    return Subspace<K>::from_rows(1, one);
  }
  // enumerate chains bottom-up; the top must be I itself
  std::vector<std::vector<std::uint32_t>> partial;
  for (std::uint32_t c : levels[0])
    if ((target & c) == c) partial.push_back({c});
  for (int lvl = 1; lvl <= n; ++lvl) {
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& chain : partial)
      for (std::uint32_t f : levels[lvl]) {
        if (lvl == n && f != target) continue;
        if ((target & f) == f && (f & chain.back()) == chain.back() && f != chain.back()) {
          auto ext = chain;
          ext.push_back(f);
          next.push_back(std::move(ext));
        }
      }
    partial = std::move(next);
  }
  std::vector<std::vector<K>> rows;
  for (const auto& chain : partial) {
    std::vector<K> acc{K(1)};
    bool dead = false;
    for (int i = 1; i <= n && !dead; ++i) {
      auto a = column_space(columns_of(rep, chain[i] & ~chain[i - 1]));
      auto b = column_space(columns_of(rep, chain[i - 1]));
      auto x = subspace_meet(a, b);
      if (x.dim() == 0) dead = true;
      else if (x.dim() != 1) throw std::logic_error("chain_sum: step intersection not a line");
      else acc = sym_multiply(w, i - 1, acc, 1, x.basis.row(0));
    }
    if (!dead) rows.push_back(std::move(acc));
  }
  Matrix<K> gen(static_cast<int>(rows.size()), sym_coords(w, n).dim());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int c = 0; c < gen.cols; ++c) gen.at(static_cast<int>(i), c) = rows[i][c];
  return Subspace<K>::from_rows(gen.cols, gen);
}

// Evaluate an element of Sym^n(W) as a polynomial function on W*.
template <class K>
K eval_sym(int w, int n, const std::vector<K>& coords, const std::vector<K>& point) {
  const SymCoords& sc = sym_coords(w, n);
  K out(0);
  for (int i = 0; i < sc.dim(); ++i) {
    K term = coords[i];
    for (int v = 0; v < w; ++v)
      for (int e = 0; e < sc.exponents[i][v]; ++e) term = term * point[v];
    out += term;
  }
  return out;
}

// The classical simplicial Taylor complex of a monomial ideal, built
// directly from subset lcms: one generator per subset, graded by
// cardinality, with boundary entries ±x^(lcm A − lcm(A∖a)).
template <class K>
struct OracleTaylor {
  std::vector<std::vector<GroundSubset>> gens;        // per cardinality, lex ascending
  std::vector<std::vector<Multidegree>> degrees;      // lcm over each subset
  std::vector<TermMatrix<K>> diff;                    // diff[c]: cardinality c -> c-1
};

template <class K>
OracleTaylor<K> taylor_complex(const std::vector<Multidegree>& gen_degrees) {
  const int k = static_cast<int>(gen_degrees.size());
  const int vars = k == 0 ? 0 : static_cast<int>(gen_degrees[0].size());
  for (const auto& d : gen_degrees)
    for (long v : d)
      if (v < 0) throw std::invalid_argument("taylor_complex: negative exponent");
  auto lcm_of = [&](const GroundSubset& a) {
    Multidegree d(vars, 0);
    for (int e : a) d = deg_lcm(d, gen_degrees[e]);
    return d;
  };
  OracleTaylor<K> out;
  out.gens.resize(k + 1);
  out.degrees.resize(k + 1);
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << k); ++m)
    out.gens[std::popcount(m)].push_back(set_of(m));
  std::vector<std::map<GroundSubset, int>> index(k + 1);
  for (int c = 0; c <= k; ++c) {
    std::sort(out.gens[c].begin(), out.gens[c].end());
    for (std::size_t i = 0; i < out.gens[c].size(); ++i) {
      index[c][out.gens[c][i]] = static_cast<int>(i);
      out.degrees[c].push_back(lcm_of(out.gens[c][i]));
    }
  }
  out.diff.resize(k + 1);
  for (int c = 1; c <= k; ++c) {
    TermMatrix<K> d(static_cast<int>(out.gens[c - 1].size()),
                    static_cast<int>(out.gens[c].size()), vars);
    for (std::size_t j = 0; j < out.gens[c].size(); ++j) {
      const auto& A = out.gens[c][j];
      const Multidegree top = out.degrees[c][j];
      for (std::size_t pos = 0; pos < A.size(); ++pos) {
        GroundSubset rest;
        for (std::size_t t = 0; t < A.size(); ++t)
          if (t != pos) rest.push_back(A[t]);
        const int i = index[c - 1].at(rest);
        const K sign = pos % 2 == 0 ? K(1) : K(-1);
        d.at(i, static_cast<int>(j)) =
            Term<K>{sign, deg_diff(top, out.degrees[c - 1][i])};
      }
    }
    out.diff[c] = std::move(d);
  }
  return out;
}

}  // namespace tres::oracle

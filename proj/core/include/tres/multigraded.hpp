#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tres/matrix.hpp"
#include "tres/matroid.hpp"
#include "tres/tcomplex.hpp"

namespace tres {

// Multidegrees in Z^m under the componentwise partial order; the join (lcm)
// is the componentwise maximum.
using Multidegree = std::vector<long>;

inline bool deg_leq(const Multidegree& a, const Multidegree& b) {
  if (a.size() != b.size()) throw std::invalid_argument("multidegree length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Multidegree deg_lcm(const Multidegree& a, const Multidegree& b) {
  if (a.size() != b.size()) throw std::invalid_argument("multidegree length mismatch");
  Multidegree c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = std::max(a[i], b[i]);
  return c;
}

inline Multidegree deg_diff(const Multidegree& a, const Multidegree& b) {
  if (a.size() != b.size()) throw std::invalid_argument("multidegree length mismatch");
  Multidegree c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

inline std::string to_string(const Multidegree& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + ")";
}

// A multihomogeneous presentation Φ: E → G of a multigraded module over
// 𝕜[x_1..x_m], recorded by its scalar part 𝕜⊗Φ (every variable evaluated at
// 1) together with the multidegrees of the chosen bases; the full entry at
// (i, j) is scalar · x^(source_degrees[j] − target_degrees[i]).
template <class K>
struct MultigradedPresentation {
  int vars = 0;
  Matrix<K> scalar;
  std::vector<Multidegree> source_degrees;  // one per column, the basis S of E
  std::vector<Multidegree> target_degrees;  // one per row, the basis of G
};

struct DegreeViolation {
  int row = 0;
  int col = 0;
};

// Multihomogeneity check: a nonzero scalar at (i, j) forces
// source_degrees[j] ⪰ target_degrees[i]. Every offending entry is reported;
// an empty list means the presentation is valid.
template <class K>
std::vector<DegreeViolation> validate(const MultigradedPresentation<K>& p) {
  if (static_cast<int>(p.source_degrees.size()) != p.scalar.cols ||
      static_cast<int>(p.target_degrees.size()) != p.scalar.rows)
    throw std::invalid_argument("validate: degree lists do not match the matrix shape");
  for (const auto& d : p.source_degrees)
    if (static_cast<int>(d.size()) != p.vars)
      throw std::invalid_argument("validate: multidegree length differs from the variable count");
  for (const auto& d : p.target_degrees)
    if (static_cast<int>(d.size()) != p.vars)
      throw std::invalid_argument("validate: multidegree length differs from the variable count");
  std::vector<DegreeViolation> out;
  for (int i = 0; i < p.scalar.rows; ++i)
    for (int j = 0; j < p.scalar.cols; ++j)
      if (!is_zero(p.scalar.at(i, j)) && !deg_leq(p.target_degrees[i], p.source_degrees[j]))
        out.push_back(DegreeViolation{i, j});
  return out;
}

// deg I: the join of the source degrees over I.
template <class K>
Multidegree deg_of_set(const MultigradedPresentation<K>& p, const GroundSubset& I) {
  if (I.empty()) throw std::invalid_argument("deg_of_set: empty set has no degree");
  Multidegree d = p.source_degrees.at(I[0]);
  for (std::size_t i = 1; i < I.size(); ++i) d = deg_lcm(d, p.source_degrees.at(I[i]));
  return d;
}

// A single term c·x^e of 𝕜[x_1..x_m]; the zero term keeps e = 0.
template <class K>
struct Term {
  K coeff{};
  Multidegree exp;

  friend bool operator==(const Term& s, const Term& t) {
    return s.coeff == t.coeff && s.exp == t.exp;
  }
};

// Dense matrix of single-term entries, row-major; multihomogeneity pins each
// differential entry to one monomial, so this is the general shape here.
template <class K>
struct TermMatrix {
  int rows = 0;
  int cols = 0;
  int vars = 0;
  std::vector<Term<K>> a;

  TermMatrix() = default;
  TermMatrix(int r, int c, int m)
      : rows(r),
        cols(c),
        vars(m),
        a(static_cast<std::size_t>(r) * c, Term<K>{K(0), Multidegree(m, 0)}) {}

  Term<K>& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const Term<K>& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  friend bool operator==(const TermMatrix& x, const TermMatrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.vars == y.vars && x.a == y.a;
  }
};

template <class K>
Matrix<K> scalar_part(const TermMatrix<K>& t) {
  Matrix<K> m(t.rows, t.cols);
  for (int i = 0; i < t.rows; ++i)
    for (int j = 0; j < t.cols; ++j) m.at(i, j) = t.at(i, j).coeff;
  return m;
}

// A complex of multigraded free modules: generator multidegrees per
// homological index, and single-term differentials diff[n]: index n → n−1.
template <class K>
struct FreeComplex {
  int vars = 0;
  std::vector<std::vector<Multidegree>> degrees;
  std::vector<TermMatrix<K>> diff;  // diff[0] is an unused placeholder

  int length() const { return static_cast<int>(degrees.size()) - 1; }
  int rank_at(int n) const {
    return 0 <= n && n < static_cast<int>(degrees.size())
               ? static_cast<int>(degrees[n].size())
               : 0;
  }
};

namespace detail {

// Wraps a scalar differential into single-term form; the exponent of a
// nonzero entry is the generator-degree difference and must be nonnegative.
template <class K>
TermMatrix<K> termify(const Matrix<K>& m, const std::vector<Multidegree>& row_deg,
                      const std::vector<Multidegree>& col_deg, int vars) {
  TermMatrix<K> out(m.rows, m.cols, vars);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      if (is_zero(m.at(i, j))) continue;
      Multidegree e = deg_diff(col_deg[j], row_deg[i]);
      for (long v : e)
        if (v < 0) throw std::logic_error("termify: entry with a negative exponent");
      out.at(i, j) = Term<K>{m.at(i, j), std::move(e)};
    }
  return out;
}

// Entrywise polynomial product of consecutive single-term differentials;
// true when every entry of the composite collapses to zero.
template <class K>
bool symbolic_product_vanishes(const TermMatrix<K>& f, const TermMatrix<K>& g) {
  if (f.cols != g.rows)
    throw std::invalid_argument("symbolic_product_vanishes: shape mismatch");
  for (int i = 0; i < f.rows; ++i)
    for (int k = 0; k < g.cols; ++k) {
      std::map<Multidegree, K> acc;
      for (int j = 0; j < f.cols; ++j) {
        const auto& s = f.at(i, j);
        const auto& t = g.at(j, k);
        if (is_zero(s.coeff) || is_zero(t.coeff)) continue;
        if (s.exp.size() != t.exp.size())
          throw std::invalid_argument("symbolic_product_vanishes: variable count mismatch");
        Multidegree e(s.exp.size());
        for (std::size_t v = 0; v < e.size(); ++v) e[v] = s.exp[v] + t.exp[v];
        auto it = acc.emplace(std::move(e), K(0)).first;
        it->second += s.coeff * t.coeff;
        if (is_zero(it->second)) acc.erase(it);
      }
      if (!acc.empty()) return false;
    }
  return true;
}

}  // namespace detail

// The T-resolution of (Φ, S): T_0 = G, T_1 = E, and for n ≥ 2 one block per
// level-(n−2) T-flat I, with generator degree deg I and the scalar T-complex
// differentials twisted by x^(deg I − deg J). Trailing zero modules are
// trimmed, so the length never exceeds |S| − r_S + 1.
template <class K>
FreeComplex<K> build_resolution(const MultigradedPresentation<K>& p) {
  if (!validate(p).empty())
    throw std::invalid_argument("build_resolution: presentation is not multihomogeneous");
  Representation<K> rep(p.scalar, {}, p.scalar.cols);
  FreeComplex<K> out;
  out.vars = p.vars;
  out.degrees.push_back(p.target_degrees);
  out.degrees.push_back(p.source_degrees);
  out.diff.emplace_back();
  out.diff.push_back(detail::termify(p.scalar, p.target_degrees, p.source_degrees, p.vars));
  const int lam = rep.n() - rank_of_mask(rep, rep.full_mask()) - 1;
  for (int lvl = 0; lvl <= lam; ++lvl) {
    auto blocks = detail::level_blocks(rep, lvl);
    std::vector<Multidegree> degs;
    for (const auto& b : blocks) {
      Multidegree d = deg_of_set(p, b.I);
      for (int k = 0; k < b.dim; ++k) degs.push_back(d);
    }
    Matrix<K> scal = lvl == 0
                         ? augmentation_matrix(rep)
                         : t_differential(rep, detail::level_blocks(rep, lvl - 1), blocks);
    out.diff.push_back(detail::termify(scal, out.degrees.back(), degs, p.vars));
    out.degrees.push_back(std::move(degs));
  }
  while (out.degrees.size() > 1 && out.degrees.back().empty()) {
    out.degrees.pop_back();
    out.diff.pop_back();
  }
  return out;
}

namespace detail {

// The strand construction plus its consistency check against the augmented
// T-complex of the restriction to I_a; the two may differ only in
// homological degree 0, where generators of G outside the strand drop out.
template <class K>
VectorSpaceComplex<K> strand_impl(const Representation<K>& rep,
                                  const MultigradedPresentation<K>& p, const FreeComplex<K>& c,
                                  const Multidegree& a) {
  const int len = c.length();
  std::vector<std::vector<int>> kept(len + 1);
  for (int n = 0; n <= len; ++n)
    for (std::size_t j = 0; j < c.degrees[n].size(); ++j)
      if (deg_leq(c.degrees[n][j], a)) kept[n].push_back(static_cast<int>(j));

  VectorSpaceComplex<K> out;
  out.lo = 0;
  out.hi = len;
  for (int n = 0; n <= len; ++n) out.dims[n] = static_cast<int>(kept[n].size());
  for (int n = 1; n <= len; ++n) {
    const auto& rows = kept[n - 1];
    const auto& cols = kept[n];
    Matrix<K> d(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j)
        d.at(static_cast<int>(i), static_cast<int>(j)) = c.diff[n].at(rows[i], cols[j]).coeff;
    out.diff[n] = std::move(d);
  }

  GroundSubset ia;
  for (int e = 0; e < rep.n(); ++e)
    if (deg_leq(p.source_degrees[e], a)) ia.push_back(e);
  out.blocks[0] = {BlockInfo{GroundSubset{}, 0, out.dims[0]}};
  out.blocks[1] = {BlockInfo{ia, 0, out.dims[1]}};
  for (int n = 2; n <= len; ++n) {
    std::vector<BlockInfo> nb;
    int offset = 0;
    for (const auto& b : level_blocks(rep, n - 2)) {
      if (!deg_leq(deg_of_set(p, b.I), a)) continue;
      nb.push_back(BlockInfo{b.I, offset, b.dim});
      offset += b.dim;
    }
    out.blocks[n] = std::move(nb);
  }

  // cross-check against the restriction: the kept degree-1 generators are
  // exactly I_a, and everything above degree 0 must coincide
  auto tp = build_T_plus(restrict_to(rep, ia).derived);
  const int top = std::max(out.hi, tp.hi);
  for (int n = 1; n <= top; ++n)
    if ((n <= len ? out.dims.at(n) : 0) != tp.dim_at(n))
      throw std::logic_error("strand: dimension differs from the restriction in degree " +
                             std::to_string(n));
  for (int n = 2; n <= std::min(len, tp.hi); ++n)
    if (!(out.diff.at(n) == *tp.diff_at(n)))
      throw std::logic_error("strand: differential differs from the restriction in degree " +
                             std::to_string(n));
  if (len >= 1) {
    const auto& mine = out.diff.at(1);
    const auto& full = *tp.diff_at(1);
    int r = 0;
    for (int i = 0; i < p.scalar.rows; ++i) {
      const bool in_strand = deg_leq(p.target_degrees[i], a);
      for (int j = 0; j < full.cols; ++j) {
        if (in_strand && !(mine.at(r, j) == full.at(i, j)))
          throw std::logic_error("strand: degree-1 map differs from the restriction");
        if (!in_strand && !is_zero(full.at(i, j)))
          throw std::logic_error("strand: dropped generator of G meets a nonzero entry");
      }
      if (in_strand) ++r;
    }
  }
  return out;
}

}  // namespace detail

// The multidegree-a strand: generators of degree ⪯ a survive and every entry
// reduces to its scalar (the monomial is determined by the degrees).
template <class K>
VectorSpaceComplex<K> strand(const MultigradedPresentation<K>& p, const FreeComplex<K>& c,
                             const Multidegree& a) {
  Representation<K> rep(p.scalar, {}, p.scalar.cols);
  return detail::strand_impl(rep, p, c, a);
}

struct ResolutionReport {
  bool ok = true;
  std::vector<std::string> failures;              // each names a check and a witness
  std::vector<int> ranks;                         // rank of each free module
  std::vector<std::map<Multidegree, int>> betti;  // generator counts per multidegree
  int length = 0;
  int rank_L = 0;    // rank of Coker Φ, computed from the scalar part
  int pd_bound = 0;  // β₁ − β₀ + rank L + 1
  std::vector<Multidegree> strands_checked;
};

// Full verification of the T-resolution: entries multihomogeneous, symbolic
// d∘d = 0, every strand over the join-closure of the input degrees exact in
// positive degrees, and the length within the projective-dimension bound.
// Degree-0 strand homology is the module itself and is not constrained.
template <class K>
ResolutionReport verify_resolution(const MultigradedPresentation<K>& p) {
  ResolutionReport out;
  auto fail = [&out](std::string msg) {
    out.ok = false;
    out.failures.push_back(std::move(msg));
  };
  auto res = build_resolution(p);
  Representation<K> rep(p.scalar, {}, p.scalar.cols);
  out.length = res.length();
  out.betti.resize(res.length() + 1);
  for (int n = 0; n <= res.length(); ++n) {
    out.ranks.push_back(res.rank_at(n));
    for (const auto& d : res.degrees[n]) ++out.betti[n][d];
  }
  for (int n = 1; n <= res.length(); ++n) {
    const auto& d = res.diff[n];
    for (int i = 0; i < d.rows; ++i)
      for (int j = 0; j < d.cols; ++j) {
        const auto& t = d.at(i, j);
        if (is_zero(t.coeff)) continue;
        if (t.exp != deg_diff(res.degrees[n][j], res.degrees[n - 1][i]) ||
            !deg_leq(Multidegree(p.vars, 0), t.exp))
          fail("index " + std::to_string(n) + ": entry (" + std::to_string(i) + "," +
               std::to_string(j) + ") is not multihomogeneous");
      }
  }
  for (int n = 2; n <= res.length(); ++n)
    if (!detail::symbolic_product_vanishes(res.diff[n - 1], res.diff[n]))
      fail("composite of the differentials at index " + std::to_string(n) +
           " is not zero");
  std::set<Multidegree> degs(p.source_degrees.begin(), p.source_degrees.end());
  degs.insert(p.target_degrees.begin(), p.target_degrees.end());
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Multidegree> cur(degs.begin(), degs.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j)
        if (degs.insert(deg_lcm(cur[i], cur[j])).second) grew = true;
  }
  for (const auto& a : degs) {
    auto s = detail::strand_impl(rep, p, res, a);
    auto h = homology(s);
    if (!h.boundary_ok)
      fail("strand " + to_string(a) + ": differentials do not compose to zero");
    for (const auto& [n, e] : h.entries)
      if (n >= 1 && e.homology != 0)
        fail("strand " + to_string(a) + ": nonzero homology in degree " + std::to_string(n));
    out.strands_checked.push_back(a);
  }
  out.rank_L = p.scalar.rows - rank_of_matrix(p.scalar);
  out.pd_bound = p.scalar.cols - p.scalar.rows + out.rank_L + 1;
  if (out.length > out.pd_bound) fail("length exceeds the projective-dimension bound");
  return out;
}

// Change of multihomogeneous basis of E: u is the scalar part of an
// automorphism of E fixing the source degrees, admissible when invertible
// and supported where source_degrees[row] ⪯ source_degrees[col] (the full
// entry at (a, b) being u·x^(deg b − deg a)).
template <class K>
MultigradedPresentation<K> change_source_basis(const MultigradedPresentation<K>& p,
                                               const Matrix<K>& u) {
  if (u.rows != p.scalar.cols || u.cols != p.scalar.cols)
    throw std::invalid_argument("change_source_basis: not a square change of basis");
  for (int a = 0; a < u.rows; ++a)
    for (int b = 0; b < u.cols; ++b)
      if (!is_zero(u.at(a, b)) && !deg_leq(p.source_degrees[a], p.source_degrees[b]))
        throw std::invalid_argument("change_source_basis: entry breaks multihomogeneity");
  if (is_zero(det(u)))
    throw std::invalid_argument("change_source_basis: not invertible");
  MultigradedPresentation<K> out = p;
  out.scalar = mat_mul(p.scalar, u);
  return out;
}

// Reader for polynomial matrices with single-term entries: every nonzero
// entry must carry the exponent forced by the degrees, namely
// column degree − row degree.
template <class K>
MultigradedPresentation<K> presentation_from_terms(int vars, const TermMatrix<K>& t,
                                                   std::vector<Multidegree> source_degrees,
                                                   std::vector<Multidegree> target_degrees) {
  MultigradedPresentation<K> p;
  p.vars = vars;
  p.scalar = scalar_part(t);
  p.source_degrees = std::move(source_degrees);
  p.target_degrees = std::move(target_degrees);
  auto bad = validate(p);
  if (!bad.empty())
    throw std::invalid_argument("presentation_from_terms: entries break multihomogeneity");
  for (int i = 0; i < t.rows; ++i)
    for (int j = 0; j < t.cols; ++j) {
      const auto& e = t.at(i, j);
      if (is_zero(e.coeff)) continue;
      if (e.exp != deg_diff(p.source_degrees[j], p.target_degrees[i]))
        throw std::invalid_argument("presentation_from_terms: entry (" + std::to_string(i) +
                                    "," + std::to_string(j) +
                                    ") does not carry the degree-forced monomial");
    }
  return p;
}

}  // namespace tres

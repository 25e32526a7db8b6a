#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tres/matroid.hpp"
#include "tres/subspace.hpp"
#include "tres/symcoords.hpp"

namespace tres {

// A maximal chain of T-flats I(0) ⊊ ... ⊊ I(n), with I(k) of level k.
struct TChain {
  std::vector<GroundSubset> flats;
};

template <class K>
struct MultiplicitySpace {
  GroundSubset I;
  int level = 0;
  const SymCoords* ambient = nullptr;  // coordinates of Sym^level(W)
  Subspace<K> basis;
  std::optional<std::vector<std::pair<TChain, std::vector<K>>>> generators;
};

namespace detail {

// V_J ∩ V_P; for a level step inside a T-flat this is 0- or 1-dimensional.
template <class K>
Subspace<K> step_intersection(const Representation<K>& rep, std::uint32_t j_mask,
                              std::uint32_t p_mask) {
  return subspace_meet(v_space(rep, j_mask), v_space(rep, p_mask));
}

// Level-(n-1) T-flats contained in the level-n T-flat mask, in record order.
template <class K>
std::vector<GroundSubset> subflats(const Representation<K>& rep, std::uint32_t mask, int level) {
  std::vector<GroundSubset> out;
  if (level < 1) return out;
  const auto& tf = t_flats(rep);
  auto it = tf.find(level - 1);
  if (it == tf.end()) return out;
  for (const auto& rec : it->second) {
    std::uint32_t sub = mask_of(rec.set);
    if ((mask & sub) == sub && sub != mask) out.push_back(rec.set);
  }
  return out;
}

template <class K>
const Subspace<K>& mult_basis(const Representation<K>& rep, std::uint32_t mask) {
  {
    std::lock_guard<std::mutex> lock(rep.cache->mu);
    auto it = rep.cache->mult_memo.find(mask);
    if (it != rep.cache->mult_memo.end()) return it->second;
  }
  const int w = rep.w_dim;
  int level = level_of_mask(rep, mask);
  Subspace<K> space;
  bool tflat = mask != 0 && is_t_flat(rep, set_of(mask));
  if (!tflat || level < 0) {
    space = Subspace<K>(sym_coords(w, std::max(level, 0)).dim());
  } else if (level == 0) {
    Matrix<K> one(1, 1);
    one.at(0, 0) = K(1);
    space = Subspace<K>::from_rows(1, one);
  } else {
    std::vector<std::vector<K>> rows;
    for (const auto& j : subflats(rep, mask, level)) {
      std::uint32_t jm = mask_of(j);
      auto x = step_intersection(rep, jm, mask & ~jm);
      if (x.dim() == 0) continue;
      if (x.dim() != 1) throw std::logic_error("level-step intersection is not a line");
      const auto& sj = mult_basis(rep, jm);
      std::vector<K> g = x.basis.row(0);
      for (int t = 0; t < sj.dim(); ++t)
        rows.push_back(sym_multiply(w, level - 1, sj.basis.row(t), 1, g));
    }
    Matrix<K> gen(static_cast<int>(rows.size()), sym_coords(w, level).dim());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (int c = 0; c < gen.cols; ++c) gen.at(static_cast<int>(i), c) = rows[i][c];
    space = Subspace<K>::from_rows(gen.cols, gen);
  }
  std::lock_guard<std::mutex> lock(rep.cache->mu);
  return rep.cache->mult_memo.emplace(mask, std::move(space)).first->second;
}

}  // namespace detail

template <class K>
std::vector<TChain> chains(const Representation<K>& rep, const GroundSubset& I) {
  std::uint32_t mask = checked_mask(rep, I);
  if (!is_t_flat(rep, I)) throw std::invalid_argument("chains: not a T-flat");
  int level = level_of_mask(rep, mask);
  if (level == 0) return {TChain{{I}}};
  std::vector<TChain> out;
  for (const auto& j : detail::subflats(rep, mask, level))
    for (auto c : chains(rep, j)) {
      c.flats.push_back(I);
      out.push_back(std::move(c));
    }
  return out;
}

template <class K>
std::vector<K> chain_vector(const Representation<K>& rep, const TChain& chain) {
  if (chain.flats.empty()) throw std::invalid_argument("chain_vector: empty chain");
  const int w = rep.w_dim;
  const int n = static_cast<int>(chain.flats.size()) - 1;
  for (int i = 0; i <= n; ++i) {
    std::uint32_t m = checked_mask(rep, chain.flats[i]);
    if (level_of_mask(rep, m) != i) throw std::invalid_argument("chain_vector: level mismatch");
    if (i > 0 && (m & mask_of(chain.flats[i - 1])) != mask_of(chain.flats[i - 1]))
      throw std::invalid_argument("chain_vector: not nested");
  }
  std::vector<K> acc{K(1)};
  for (int i = 1; i <= n; ++i) {
    std::uint32_t prev = mask_of(chain.flats[i - 1]);
    std::uint32_t cur = mask_of(chain.flats[i]);
    auto x = detail::step_intersection(rep, cur & ~prev, prev);
    if (x.dim() == 0) return std::vector<K>(sym_coords(w, n).dim(), K(0));
    if (x.dim() != 1) throw std::logic_error("chain step intersection is not a line");
    acc = sym_multiply(w, i - 1, acc, 1, x.basis.row(0));
  }
  return acc;
}

template <class K>
MultiplicitySpace<K> multiplicity_space(const Representation<K>& rep, const GroundSubset& I) {
  std::uint32_t mask = checked_mask(rep, I);
  MultiplicitySpace<K> out;
  out.I = I;
  out.level = mask == 0 ? -1 : level_of_mask(rep, mask);
  out.ambient = &sym_coords(rep.w_dim, std::max(out.level, 0));
  out.basis = detail::mult_basis(rep, mask);
  return out;
}

// Matrix of multiplication by the canonical generator of V_J ∩ V_{I\J},
// from the S_J basis to the S_I basis; zero when the intersection vanishes.
template <class K>
Matrix<K> nu_matrix(const Representation<K>& rep, const GroundSubset& I, const GroundSubset& J) {
  std::uint32_t im = checked_mask(rep, I);
  std::uint32_t jm = checked_mask(rep, J);
  int n = level_of_mask(rep, im);
  if (!is_t_flat(rep, I) || !is_t_flat(rep, J) || n < 1 ||
      level_of_mask(rep, jm) != n - 1 || (im & jm) != jm || im == jm)
    throw std::invalid_argument("nu_matrix: need nested T-flats one level apart");
  const auto& si = detail::mult_basis(rep, im);
  const auto& sj = detail::mult_basis(rep, jm);
  Matrix<K> out(si.dim(), sj.dim());
  auto x = detail::step_intersection(rep, jm, im & ~jm);
  if (x.dim() == 0) return out;
  if (x.dim() != 1) throw std::logic_error("nu_matrix: intersection is not a line");
  std::vector<K> g = x.basis.row(0);
  for (int t = 0; t < sj.dim(); ++t) {
    auto prod = sym_multiply(rep.w_dim, n - 1, sj.basis.row(t), 1, g);
    auto coords = si.coords_of(prod);
    if (!coords) throw std::logic_error("nu_matrix: product escapes the multiplicity space");
    for (int r = 0; r < si.dim(); ++r) out.at(r, t) = (*coords)[r];
  }
  return out;
}

// The diagonal map on dual spaces: transpose against the coordinate duals of
// the fixed RREF bases.
template <class K>
Matrix<K> diagonal_matrix(const Representation<K>& rep, const GroundSubset& I,
                          const GroundSubset& J) {
  return nu_matrix(rep, I, J).transpose();
}

// Matrix of Sym^n of a linear map given by pi (rows = target coordinates).
template <class K>
Matrix<K> sym_power_matrix(const Matrix<K>& pi, int n) {
  const SymCoords& src = sym_coords(pi.cols, n);
  const SymCoords& dst = sym_coords(pi.rows, n);
  Matrix<K> out(dst.dim(), src.dim());
  for (int c = 0; c < src.dim(); ++c) {
    std::vector<K> acc{K(1)};
    int deg = 0;
    for (int v = 0; v < pi.cols; ++v)
      for (int e = 0; e < src.exponents[c][v]; ++e) {
        acc = sym_multiply(pi.rows, deg, acc, 1, pi.col(v));
        ++deg;
      }
    for (int r = 0; r < dst.dim(); ++r) out.at(r, c) = acc[r];
  }
  return out;
}

template <class K>
struct ContractionProjection {
  GroundSubset Y;
  GroundSubset A;
  GroundSubset B;
  Matrix<K> matrix;  // S_B(phi) coordinates -> S_A(phi.Y) coordinates
};

template <class K>
ContractionProjection<K> contraction_projection(const Representation<K>& rep,
                                                const GroundSubset& Y, const GroundSubset& A) {
  std::uint32_t ym = checked_mask(rep, Y);
  std::uint32_t removed = rep.full_mask() & ~ym;
  if (rank_of_mask(rep, removed) != size_of(removed))
    throw std::invalid_argument("contraction_projection: S\\Y must be independent");
  auto mv = contract(rep, Y);
  GroundSubset a_minor = positions_in(Y, A);
  if (!is_t_flat(mv.derived, a_minor))
    throw std::invalid_argument("contraction_projection: A is not a T-flat of the contraction");
  ContractionProjection<K> out;
  out.Y = Y;
  out.A = A;
  out.B = b_of(rep, Y, A);
  const auto& sb = detail::mult_basis(rep, checked_mask(rep, out.B));
  const auto& sa = detail::mult_basis(mv.derived, mask_of(a_minor));
  int n = level_of(mv.derived, a_minor);
  Matrix<K> pin = sym_power_matrix(*mv.pi, n);
  out.matrix = Matrix<K>(sa.dim(), sb.dim());
  for (int t = 0; t < sb.dim(); ++t) {
    auto img = mat_apply(pin, sb.basis.row(t));
    auto coords = sa.coords_of(img);
    if (!coords)
      throw std::logic_error("contraction_projection: image escapes the target space");
    for (int r = 0; r < sa.dim(); ++r) out.matrix.at(r, t) = (*coords)[r];
  }
  if (rank_of_matrix(out.matrix) != sa.dim())
    throw std::logic_error("contraction_projection: projection is not surjective");
  return out;
}

struct MultSequenceReport {
  int dim_SB = 0;
  int dim_SA = 0;           // S_A(phi), the ambient multiplicity space
  int dim_SA_contract = 0;  // S_A(phi.S_a)
  bool dims_match = false;
  bool nu_injective = false;
  bool composite_zero = false;
  bool exact = false;
};

// Checks the short sequence 0 → S_A(φ)⊗V_a → S_B(φ) → S_A(φ.S_a) → 0 when
// {a} is a T-part of B.
template <class K>
MultSequenceReport check_multiplicity_sequence(const Representation<K>& rep, int a,
                                               const GroundSubset& A) {
  if (a < 0 || a >= rep.n()) throw std::out_of_range("check_multiplicity_sequence: bad element");
  if (rank_of(rep, {a}) != 1)
    throw std::invalid_argument("check_multiplicity_sequence: {a} must be independent");
  GroundSubset y;
  for (int e = 0; e < rep.n(); ++e)
    if (e != a) y.push_back(e);
  GroundSubset B = b_of(rep, y, A);
  // {a} is a T-part of B exactly when B\{a} is again a T-flat; this is the
  // reading that makes the one-element contraction trichotomy work at level 0.
  std::uint32_t bm = checked_mask(rep, B);
  std::uint32_t am = std::uint32_t{1} << a;
  bool a_is_part = (bm & am) != 0 && is_t_flat(rep, set_of(bm & ~am));
  if (!a_is_part)
    throw std::invalid_argument("check_multiplicity_sequence: {a} is not a T-part of B");
  if (set_of(bm & ~am) != A)
    throw std::invalid_argument("check_multiplicity_sequence: A must be B\\{a}");
  auto proj = contraction_projection(rep, y, A);
  MultSequenceReport rpt;
  rpt.dim_SB = detail::mult_basis(rep, checked_mask(rep, B)).dim();
  rpt.dim_SA = detail::mult_basis(rep, checked_mask(rep, A)).dim();
  rpt.dim_SA_contract = proj.matrix.rows;
  Matrix<K> nu = nu_matrix(rep, B, A);
  rpt.dims_match = rpt.dim_SB == rpt.dim_SA + rpt.dim_SA_contract;
  rpt.nu_injective = rank_of_matrix(nu) == rpt.dim_SA;
  rpt.composite_zero = is_zero_matrix(mat_mul(proj.matrix, nu));
  rpt.exact = rpt.dims_match && rpt.nu_injective && rpt.composite_zero;
  return rpt;
}

}  // namespace tres

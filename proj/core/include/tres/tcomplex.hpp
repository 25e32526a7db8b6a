#pragma once

#include <map>
#include <string>
#include <vector>

#include "tres/matroid.hpp"
#include "tres/multiplicity.hpp"
#include "tres/subspace.hpp"

namespace tres {

// Basis data of the space T_I = S_I* ⊗ ΛU_I ⊗ ΛV_I*. The three tensor
// factors are pinned by conventions, so only the S_I coordinates carry
// dimension: the U-wedge is the ordered wedge over I, and the V-dual wedge is
// dual to the wedge of the φ-columns over the lex-first maximal independent
// subset of I.
template <class K>
struct TSpaceBasis {
  GroundSubset I;
  int level = -1;  // -1 for independent singletons
  int dim = 0;
  Subspace<K> mult_basis;      // S_I; dual functionals are its coordinate duals
  GroundSubset u_wedge;        // ordered wedge of the U generators, sign +1
  GroundSubset v_wedge_indep;  // the independent subset whose φ-wedge is dualized
};

template <class K>
TSpaceBasis<K> t_space(const Representation<K>& rep, const GroundSubset& I) {
  std::uint32_t m = checked_mask(rep, I);
  TSpaceBasis<K> out;
  out.I = I;
  out.u_wedge = I;
  out.v_wedge_indep = max_independent(rep, I);
  if (size_of(m) == 1 && rank_of_mask(rep, m) == 1) {
    out.level = -1;  // member of the (-1)-level family: T_I = U_a
    out.dim = 1;
    Matrix<K> one(1, 1);
    one.at(0, 0) = K(1);
    out.mult_basis = Subspace<K>::from_rows(1, one);
    return out;
  }
  out.level = m == 0 ? -1 : level_of_mask(rep, m);
  out.mult_basis = detail::mult_basis(rep, m);
  out.dim = out.mult_basis.dim();
  return out;
}

namespace detail {

// Sign of the permutation taking the ascending order on I to the
// concatenation (I∖J ascending, J ascending).
inline int shuffle_sign(const GroundSubset& I, const GroundSubset& J) {
  std::uint32_t jm = mask_of(J);
  std::vector<int> seq;
  for (int e : I)
    if ((jm >> e & 1u) == 0) seq.push_back(e);
  for (int e : J) seq.push_back(e);
  int inv = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

// Coordinates of vecs in the basis given by the columns of basis_cols,
// assembled as columns of a square matrix; returns its determinant.
template <class K>
K det_in_basis(const Matrix<K>& basis_cols, const std::vector<std::vector<K>>& vecs) {
  if (static_cast<int>(vecs.size()) != basis_cols.cols)
    throw std::logic_error("det_in_basis: not a square change of basis");
  Matrix<K> c(basis_cols.cols, basis_cols.cols);
  for (std::size_t j = 0; j < vecs.size(); ++j) {
    auto x = solve(basis_cols, vecs[j]);
    if (!x) throw std::logic_error("det_in_basis: vector outside the span");
    for (int i = 0; i < basis_cols.cols; ++i) c.at(i, static_cast<int>(j)) = (*x)[i];
  }
  return det(c);
}

// Greedy completion of g to a basis of V_D by RREF basis rows of V_D; the
// returned list starts with g itself.
template <class K>
std::vector<std::vector<K>> lift_basis(const Representation<K>& rep, std::uint32_t dm,
                                       const std::vector<K>& g) {
  const auto& vd = v_space(rep, dm);
  std::vector<std::vector<K>> out{g};
  Matrix<K> acc(1, rep.w_dim);
  for (int j = 0; j < rep.w_dim; ++j) acc.at(0, j) = g[j];
  int r = 1;
  for (int i = 0; i < vd.dim() && static_cast<int>(out.size()) < vd.dim(); ++i) {
    Matrix<K> row(1, rep.w_dim);
    for (int j = 0; j < rep.w_dim; ++j) row.at(0, j) = vd.basis.at(i, j);
    Matrix<K> trial = vstack(acc, row);
    if (rank_of_matrix(trial) > r) {
      acc = std::move(trial);
      ++r;
      out.push_back(vd.basis.row(i));
    }
  }
  if (static_cast<int>(out.size()) != vd.dim())
    throw std::logic_error("lift_basis: completion failed");
  return out;
}

}  // namespace detail

// The component map φ_n^{IJ}: T_I → T_J, returned as a (dim T_J) × (dim T_I)
// matrix in the canonical bases. For n ≥ 1 it is Δ on the S* factor scaled by
// the comparison of the two induced wedge trivializations; for n = 0 it is
// the evaluation against the circuit relation.
template <class K>
Matrix<K> phi_IJ(const Representation<K>& rep, const GroundSubset& I, const GroundSubset& J) {
  std::uint32_t im = checked_mask(rep, I);
  std::uint32_t jm = checked_mask(rep, J);
  if (!is_t_flat(rep, I)) throw std::invalid_argument("phi_IJ: I must be a T-flat");
  int n = level_of_mask(rep, im);
  if (n == 0) {
    if (size_of(jm) != 1 || (im & jm) != jm)
      throw std::invalid_argument("phi_IJ: at level 0, J must be a singleton inside I");
    Matrix<K> out(1, 1);
    if (im == jm) {  // loop: the identity of U_a
      out.at(0, 0) = K(1);
      return out;
    }
    int a = J[0];
    int idx = 0;
    for (int e : I)
      if (e < a) ++idx;
    GroundSubset rest = set_of(im & ~jm);
    Matrix<K> bi = columns_of(rep, mask_of(max_independent(rep, I)));
    std::vector<std::vector<K>> cols;
    for (int e : rest) cols.push_back(rep.column(e));
    K val = detail::det_in_basis(bi, cols);
    out.at(0, 0) = (idx % 2 == 0 ? val : -val);
    return out;
  }
  if (!is_t_flat(rep, J) || level_of_mask(rep, jm) != n - 1 || (im & jm) != jm || im == jm)
    throw std::invalid_argument("phi_IJ: J must be a T-flat one level below, inside I");
  const auto& si = detail::mult_basis(rep, im);
  const auto& sj = detail::mult_basis(rep, jm);
  Matrix<K> out(sj.dim(), si.dim());
  if (si.dim() == 0 || sj.dim() == 0) return out;
  std::uint32_t dm = im & ~jm;
  if (rank_of_mask(rep, dm) != size_of(dm)) return out;  // ∧φ vanishes
  auto x = detail::step_intersection(rep, jm, dm);
  if (x.dim() == 0) return out;  // the b-map vanishes
  std::vector<K> g = x.basis.row(0);
  auto lifts = detail::lift_basis(rep, dm, g);
  const int q = static_cast<int>(lifts.size()) - 1;
  const int rj = rank_of_mask(rep, jm);
  if (q != rank_of_mask(rep, im) - rj)
    throw std::logic_error("phi_IJ: unexpected corank of the level step");
  // comparison of the wedge of (Ĵ-columns, lifts) with the Î-column wedge
  Matrix<K> bi = columns_of(rep, mask_of(max_independent(rep, I)));
  std::vector<std::vector<K>> top;
  for (int e : max_independent(rep, J)) top.push_back(rep.column(e));
  for (int t = 1; t <= q; ++t) top.push_back(lifts[t]);
  K c = detail::det_in_basis(bi, top);
  // comparison of the wedge of (g, lifts) with the I∖J-column wedge
  Matrix<K> bd = columns_of(rep, dm);
  K e = detail::det_in_basis(bd, lifts);
  K scal = c / e;
  if ((rj * q) % 2 != 0) scal = -scal;
  if (detail::shuffle_sign(I, J) < 0) scal = -scal;
  return mat_scale(nu_matrix(rep, I, J).transpose(), scal);
}

// One component of a complex of based vector spaces.
struct BlockInfo {
  GroundSubset I;
  int offset = 0;
  int dim = 0;
};

template <class K>
struct VectorSpaceComplex {
  std::map<int, std::vector<BlockInfo>> blocks;
  std::map<int, int> dims;
  std::map<int, Matrix<K>> diff;  // diff[n]: component n -> component n-1
  int lo = 0;
  int hi = -1;  // hi < lo encodes the empty complex

  int dim_at(int n) const {
    auto it = dims.find(n);
    return it == dims.end() ? 0 : it->second;
  }
  const Matrix<K>* diff_at(int n) const {
    auto it = diff.find(n);
    return it == diff.end() ? nullptr : &it->second;
  }
};

namespace detail {

template <class K>
std::vector<BlockInfo> level_blocks(const Representation<K>& rep, int level) {
  std::vector<BlockInfo> out;
  const auto& tf = t_flats(rep);
  auto it = tf.find(level);
  if (it == tf.end()) return out;
  int offset = 0;
  for (const auto& rec : it->second) {
    int d = mult_basis(rep, mask_of(rec.set)).dim();
    out.push_back(BlockInfo{rec.set, offset, d});
    offset += d;
  }
  return out;
}

}  // namespace detail

// The differential: blockwise (-1)^{|J|} φ_n^{IJ} over the
// level-(n-1) T-flats J inside I.
template <class K>
Matrix<K> t_differential(const Representation<K>& rep, const std::vector<BlockInfo>& target,
                         const std::vector<BlockInfo>& source) {
  int rows = 0, cols = 0;
  for (const auto& b : target) rows += b.dim;
  for (const auto& b : source) cols += b.dim;
  Matrix<K> out(rows, cols);
  for (const auto& src : source) {
    std::uint32_t im = mask_of(src.I);
    for (const auto& tgt : target) {
      std::uint32_t jm = mask_of(tgt.I);
      if ((im & jm) != jm || im == jm) continue;
      if (src.dim == 0 || tgt.dim == 0) continue;
      Matrix<K> blk = phi_IJ(rep, src.I, tgt.I);
      K sign = size_of(jm) % 2 == 0 ? K(1) : K(-1);
      for (int r = 0; r < blk.rows; ++r)
        for (int c = 0; c < blk.cols; ++c)
          out.at(tgt.offset + r, src.offset + c) = sign * blk.at(r, c);
    }
  }
  return out;
}

// The splicing map φ_0: T_0 → U_S, assembled as -φ_0^{I,{a}} into row a.
template <class K>
Matrix<K> augmentation_matrix(const Representation<K>& rep) {
  auto circuits_blocks = detail::level_blocks(rep, 0);
  int cols = 0;
  for (const auto& b : circuits_blocks) cols += b.dim;
  Matrix<K> out(rep.n(), cols);
  for (const auto& blk : circuits_blocks)
    for (int a : blk.I) {
      Matrix<K> piece = phi_IJ(rep, blk.I, GroundSubset{a});
      out.at(a, blk.offset) = -piece.at(0, 0);
    }
  return out;
}

// T_•(φ): components 0..λ with λ = |S| - r_S - 1; empty when S independent.
template <class K>
VectorSpaceComplex<K> build_T(const Representation<K>& rep) {
  VectorSpaceComplex<K> c;
  int lambda = rep.n() - rank_of_mask(rep, rep.full_mask()) - 1;
  if (lambda < 0) return c;
  c.lo = 0;
  c.hi = lambda;
  for (int n = 0; n <= lambda; ++n) {
    c.blocks[n] = detail::level_blocks(rep, n);
    int d = 0;
    for (const auto& b : c.blocks[n]) d += b.dim;
    c.dims[n] = d;
  }
  for (int n = 1; n <= lambda; ++n)
    c.diff[n] = t_differential(rep, c.blocks[n - 1], c.blocks[n]);
  return c;
}

// T_•(φ)^+: ··· → T_0 → U_S → W → 0, i.e. T shifted by two and spliced
// through the augmentation and φ itself.
template <class K>
VectorSpaceComplex<K> build_T_plus(const Representation<K>& rep) {
  VectorSpaceComplex<K> c;
  c.lo = 0;
  c.hi = 1;
  c.blocks[0] = {BlockInfo{GroundSubset{}, 0, rep.w_dim}};
  c.dims[0] = rep.w_dim;
  GroundSubset all;
  for (int e = 0; e < rep.n(); ++e) all.push_back(e);
  c.blocks[1] = {BlockInfo{all, 0, rep.n()}};
  c.dims[1] = rep.n();
  c.diff[1] = rep.phi;
  auto t = build_T(rep);
  if (t.hi < t.lo) return c;
  c.hi = t.hi + 2;
  for (int n = t.lo; n <= t.hi; ++n) {
    c.blocks[n + 2] = t.blocks[n];
    c.dims[n + 2] = t.dims[n];
    if (n >= 1) c.diff[n + 2] = std::move(t.diff[n]);
  }
  c.diff[2] = augmentation_matrix(rep);
  return c;
}

// The subcomplex of the blocks lying inside Y: equal, block for
// block, to the complex of the restricted representation, so it runs over
// the index range 0..λ(M|Y).
template <class K>
VectorSpaceComplex<K> restrict_complex(const Representation<K>& rep, const GroundSubset& Y) {
  std::uint32_t ym = checked_mask(rep, Y);
  int lam = size_of(ym) - rank_of_mask(rep, ym) - 1;
  VectorSpaceComplex<K> c;
  if (lam < 0) return c;
  auto full = build_T(rep);
  c.lo = 0;
  c.hi = lam;
  std::map<int, std::vector<int>> kept;  // old coordinates kept per index
  for (int n = 0; n <= lam; ++n) {
    std::vector<BlockInfo> nb;
    std::vector<int> coords;
    int offset = 0;
    for (const auto& b : full.blocks[n]) {
      std::uint32_t bm = mask_of(b.I);
      if ((ym & bm) != bm) continue;
      nb.push_back(BlockInfo{b.I, offset, b.dim});
      for (int k = 0; k < b.dim; ++k) coords.push_back(b.offset + k);
      offset += b.dim;
    }
    c.blocks[n] = std::move(nb);
    c.dims[n] = offset;
    kept[n] = std::move(coords);
  }
  for (int n = 1; n <= lam; ++n) {
    const auto& rows = kept[n - 1];
    const auto& cols = kept[n];
    Matrix<K> d(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    const auto& fd = full.diff[n];
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j)
        d.at(static_cast<int>(i), static_cast<int>(j)) = fd.at(rows[i], cols[j]);
    c.diff[n] = std::move(d);
  }
  return c;
}

// One direct summand per connected component of S.
template <class K>
std::vector<VectorSpaceComplex<K>> direct_sum_split(const Representation<K>& rep) {
  GroundSubset all;
  for (int e = 0; e < rep.n(); ++e) all.push_back(e);
  std::vector<VectorSpaceComplex<K>> out;
  if (all.empty()) return out;
  for (const auto& comp : connected_components(rep, all))
    out.push_back(restrict_complex(rep, comp));
  return out;
}

struct HomologyEntry {
  int dim = 0;
  int rank_out = 0;  // rank of the differential leaving this index
  int rank_in = 0;   // rank of the differential arriving here
  int homology = 0;
};

struct HomologyReport {
  std::map<int, HomologyEntry> entries;
  bool boundary_ok = true;  // all consecutive differentials compose to zero
};

template <class K>
HomologyReport homology(const VectorSpaceComplex<K>& c) {
  HomologyReport rep;
  if (c.hi < c.lo) return rep;
  std::map<int, int> ranks;
  for (const auto& [n, m] : c.diff) ranks[n] = rank_of_matrix(m);
  for (int n = c.lo; n <= c.hi; ++n) {
    HomologyEntry e;
    e.dim = c.dim_at(n);
    e.rank_out = n > c.lo && ranks.count(n) ? ranks[n] : 0;
    e.rank_in = ranks.count(n + 1) ? ranks[n + 1] : 0;
    e.homology = e.dim - e.rank_out - e.rank_in;
    if (e.homology < 0) throw std::logic_error("homology: negative dimension");
    rep.entries[n] = e;
  }
  for (int n = c.lo + 2; n <= c.hi; ++n) {
    auto up = c.diff_at(n);
    auto dn = c.diff_at(n - 1);
    if (!up || !dn) continue;
    if (!is_zero_matrix(mat_mul(*dn, *up))) rep.boundary_ok = false;
  }
  return rep;
}

struct AcyclicityReport {
  bool ok = true;
  std::vector<std::string> failures;  // each names the failing degree
  std::map<int, int> t_homology;
  std::map<int, int> t_plus_homology;
};

// Full verification: T and T^+ are complexes, T^+ resolves Coker φ, and T
// resolves Ker φ through the augmentation.
template <class K>
AcyclicityReport verify_acyclic(const Representation<K>& rep) {
  AcyclicityReport out;
  auto fail = [&out](std::string msg) {
    out.ok = false;
    out.failures.push_back(std::move(msg));
  };
  auto t = build_T(rep);
  auto tp = build_T_plus(rep);
  auto ht = homology(t);
  auto htp = homology(tp);
  if (!ht.boundary_ok) fail("T: some consecutive differentials do not compose to zero");
  if (!htp.boundary_ok) fail("T^+: some consecutive differentials do not compose to zero");
  for (const auto& [n, e] : ht.entries) out.t_homology[n] = e.homology;
  for (const auto& [n, e] : htp.entries) out.t_plus_homology[n] = e.homology;
  for (const auto& [n, e] : htp.entries)
    if (n >= 1 && e.homology != 0)
      fail("T^+: nonzero homology in degree " + std::to_string(n));
  int expected_h0 = rep.w_dim - rank_of_matrix(rep.phi);
  if (tp.dim_at(0) > 0 && htp.entries.at(0).homology != expected_h0)
    fail("T^+: H_0 does not match dim W - rank(phi)");
  for (const auto& [n, e] : ht.entries)
    if (n >= 1 && e.homology != 0) fail("T: nonzero homology in degree " + std::to_string(n));
  if (t.hi >= t.lo) {
    auto aug = augmentation_matrix(rep);
    int rank_phi1 = t.diff_at(1) ? rank_of_matrix(*t.diff_at(1)) : 0;
    if (rank_of_matrix(aug) != t.dim_at(0) - rank_phi1)
      fail("T: the splicing map is not injective on H_0");
    if (!is_zero_matrix(mat_mul(rep.phi, aug)))
      fail("T: the splicing map does not land in Ker(phi)");
    if (!(column_space(aug) == kernel_basis(rep.phi)))
      fail("T: image of the splicing map differs from Ker(phi)");
  }
  return out;
}

}  // namespace tres

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tres/matrix.hpp"
#include "tres/subspace.hpp"

namespace tres {

// Ground-set subsets are strictly increasing index lists; bitmasks are the
// internal currency (ground sets are capped well below 32 elements).
using GroundSubset = std::vector<int>;

inline std::uint32_t mask_of(const GroundSubset& a) {
  std::uint32_t m = 0;
  int prev = -1;
  for (int e : a) {
    if (e <= prev) throw std::invalid_argument("subset not strictly increasing");
    if (e < 0 || e >= 31) throw std::out_of_range("element out of range");
    m |= std::uint32_t{1} << e;
    prev = e;
  }
  return m;
}

inline GroundSubset set_of(std::uint32_t m) {
  GroundSubset a;
  for (int e = 0; m != 0; ++e, m >>= 1)
    if (m & 1u) a.push_back(e);
  return a;
}

inline int size_of(std::uint32_t m) { return std::popcount(m); }

struct TFlatRecord {
  GroundSubset set;
  int level = 0;
  std::vector<GroundSubset> t_parts;
  int rank = 0;
};

namespace detail {
// Derived data shared by copies of a representation; contents are functions
// of the immutable matrix, so concurrent idempotent fills are harmless.
template <class K>
struct RepCache {
  std::mutex mu;
  std::map<std::uint32_t, int> rank_memo;
  std::optional<std::vector<GroundSubset>> circuits;
  std::optional<std::map<int, std::vector<TFlatRecord>>> tflats;
  std::optional<std::set<std::uint32_t>> tflat_masks;
  std::map<std::uint32_t, Subspace<K>> colspace_memo;
  std::map<std::uint32_t, Subspace<K>> mult_memo;
};
}  // namespace detail

template <class K>
struct Representation {
  std::vector<std::string> labels;
  Matrix<K> phi;  // one column per ground-set element
  int w_dim = 0;
  std::shared_ptr<detail::RepCache<K>> cache;

  Representation() : cache(std::make_shared<detail::RepCache<K>>()) {}

  explicit Representation(Matrix<K> m, std::vector<std::string> names = {},
                          int max_elements = 16)
      : phi(std::move(m)), w_dim(phi.rows), cache(std::make_shared<detail::RepCache<K>>()) {
    if (phi.cols > max_elements || phi.cols > 30)
      throw std::invalid_argument("ground set exceeds the configured maximum of " +
                                  std::to_string(std::min(max_elements, 30)) + " elements");
    if (names.empty())
      for (int j = 0; j < phi.cols; ++j) labels.push_back(std::to_string(j + 1));
    else
      labels = std::move(names);
    if (static_cast<int>(labels.size()) != phi.cols)
      throw std::invalid_argument("label count must match column count");
  }

  int n() const { return phi.cols; }
  std::uint32_t full_mask() const { return (std::uint32_t{1} << n()) - 1; }

  std::vector<K> column(int j) const { return phi.col(j); }
};

template <class K>
std::uint32_t checked_mask(const Representation<K>& rep, const GroundSubset& a) {
  std::uint32_t m = mask_of(a);
  if (m >= (std::uint32_t{1} << rep.n()))
    throw std::out_of_range("element out of range for this ground set");
  return m;
}

template <class K>
Matrix<K> columns_of(const Representation<K>& rep, std::uint32_t mask) {
  Matrix<K> m(rep.w_dim, size_of(mask));
  int c = 0;
  for (int j = 0; j < rep.n(); ++j) {
    if (!(mask & (std::uint32_t{1} << j))) continue;
    for (int i = 0; i < rep.w_dim; ++i) m.at(i, c) = rep.phi.at(i, j);
    ++c;
  }
  return m;
}

// Positions of the elements of a within y (both sorted, a ⊆ y required).
inline GroundSubset positions_in(const GroundSubset& y, const GroundSubset& a) {
  GroundSubset out;
  std::size_t i = 0;
  for (int e : a) {
    while (i < y.size() && y[i] < e) ++i;
    if (i == y.size() || y[i] != e) throw std::invalid_argument("positions_in: not a subset");
    out.push_back(static_cast<int>(i));
  }
  return out;
}

// Column span V_A as a subspace of W, memoized.
template <class K>
Subspace<K> v_space(const Representation<K>& rep, std::uint32_t mask) {
  {
    std::lock_guard<std::mutex> lock(rep.cache->mu);
    auto it = rep.cache->colspace_memo.find(mask);
    if (it != rep.cache->colspace_memo.end()) return it->second;
  }
  auto s = column_space(columns_of(rep, mask));
  std::lock_guard<std::mutex> lock(rep.cache->mu);
  return rep.cache->colspace_memo.emplace(mask, std::move(s)).first->second;
}

template <class K>
int rank_of_mask(const Representation<K>& rep, std::uint32_t mask) {
  {
    std::lock_guard<std::mutex> lock(rep.cache->mu);
    auto it = rep.cache->rank_memo.find(mask);
    if (it != rep.cache->rank_memo.end()) return it->second;
  }
  int r = rank_of_matrix(columns_of(rep, mask));
  std::lock_guard<std::mutex> lock(rep.cache->mu);
  rep.cache->rank_memo.emplace(mask, r);
  return r;
}

template <class K>
int rank_of(const Representation<K>& rep, const GroundSubset& a) {
  return rank_of_mask(rep, checked_mask(rep, a));
}

template <class K>
int level_of_mask(const Representation<K>& rep, std::uint32_t mask) {
  return size_of(mask) - rank_of_mask(rep, mask) - 1;
}

template <class K>
int level_of(const Representation<K>& rep, const GroundSubset& a) {
  return level_of_mask(rep, checked_mask(rep, a));
}

template <class K>
int dual_rank_mask(const Representation<K>& rep, std::uint32_t mask) {
  return size_of(mask) - rank_of_mask(rep, rep.full_mask()) +
         rank_of_mask(rep, rep.full_mask() & ~mask);
}

template <class K>
int dual_rank(const Representation<K>& rep, const GroundSubset& a) {
  return dual_rank_mask(rep, checked_mask(rep, a));
}

// Minimal dependent sets, found by increasing size with supersets of known
// circuits pruned; a dependent set containing no smaller circuit is minimal.
template <class K>
const std::vector<GroundSubset>& circuits(const Representation<K>& rep) {
  {
    std::lock_guard<std::mutex> lock(rep.cache->mu);
    if (rep.cache->circuits) return *rep.cache->circuits;
  }
  const int n = rep.n();
  const int rs = rank_of_mask(rep, rep.full_mask());
  std::vector<std::vector<std::uint32_t>> by_size(n + 1);
  for (std::uint32_t m = 1; m <= rep.full_mask(); ++m) {
    int s = size_of(m);
    if (s <= rs + 1) by_size[s].push_back(m);
  }
  std::vector<std::uint32_t> found;
  for (int s = 1; s <= std::min(n, rs + 1); ++s)
    for (std::uint32_t m : by_size[s]) {
      bool pruned = false;
      for (std::uint32_t c : found)
        if ((m & c) == c) {
          pruned = true;
          break;
        }
      if (pruned) continue;
      if (level_of_mask(rep, m) >= 0) found.push_back(m);
    }
  std::vector<GroundSubset> out;
  for (std::uint32_t m : found) out.push_back(set_of(m));
  std::sort(out.begin(), out.end());
  std::lock_guard<std::mutex> lock(rep.cache->mu);
  if (!rep.cache->circuits) rep.cache->circuits = std::move(out);
  return *rep.cache->circuits;
}

// Closure in the dual matroid; one sweep suffices because adding an element
// of closure leaves the dual rank of every superset test unchanged.
template <class K>
std::uint32_t dual_closure_mask(const Representation<K>& rep, std::uint32_t mask) {
  std::uint32_t out = mask;
  const int base = dual_rank_mask(rep, mask);
  for (int e = 0; e < rep.n(); ++e) {
    std::uint32_t b = std::uint32_t{1} << e;
    if (mask & b) continue;
    if (dual_rank_mask(rep, mask | b) == base) out |= b;
  }
  return out;
}

template <class K>
GroundSubset dual_closure(const Representation<K>& rep, const GroundSubset& x) {
  return set_of(dual_closure_mask(rep, checked_mask(rep, x)));
}

namespace detail {
template <class K>
void ensure_tflats(const Representation<K>& rep) {
  {
    std::lock_guard<std::mutex> lock(rep.cache->mu);
    if (rep.cache->tflats) return;
  }
  // Union-closure fixpoint of the circuit list: every union of circuits is
  // reachable one circuit at a time.
  std::vector<std::uint32_t> cmasks;
  for (const auto& c : circuits(rep)) cmasks.push_back(mask_of(c));
  std::set<std::uint32_t> closed(cmasks.begin(), cmasks.end());
  std::vector<std::uint32_t> queue(cmasks.begin(), cmasks.end());
  while (!queue.empty()) {
    std::uint32_t m = queue.back();
    queue.pop_back();
    for (std::uint32_t c : cmasks) {
      std::uint32_t u = m | c;
      if (closed.insert(u).second) queue.push_back(u);
    }
  }
  std::map<int, std::vector<TFlatRecord>> grouped;
  std::map<int, std::vector<std::uint32_t>> masks_by_level;
  for (std::uint32_t m : closed) {
    TFlatRecord rec;
    rec.set = set_of(m);
    rec.rank = rank_of_mask(rep, m);
    rec.level = size_of(m) - rec.rank - 1;
    grouped[rec.level].push_back(std::move(rec));
    masks_by_level[rec.level].push_back(m);
  }
  for (auto& [lvl, recs] : grouped) {
    std::sort(recs.begin(), recs.end(),
              [](const TFlatRecord& x, const TFlatRecord& y) { return x.set < y.set; });
    for (auto& rec : recs) {
      std::uint32_t m = mask_of(rec.set);
      if (lvl == 0) {
        for (int e : rec.set) rec.t_parts.push_back({e});
      } else {
        for (std::uint32_t sub : masks_by_level[lvl - 1])
          if ((m & sub) == sub) rec.t_parts.push_back(set_of(m & ~sub));
        std::sort(rec.t_parts.begin(), rec.t_parts.end(),
                  [](const GroundSubset& x, const GroundSubset& y) { return x[0] < y[0]; });
      }
    }
  }
  std::lock_guard<std::mutex> lock(rep.cache->mu);
  if (!rep.cache->tflats) {
    rep.cache->tflats = std::move(grouped);
    rep.cache->tflat_masks = std::move(closed);
  }
}
}  // namespace detail

template <class K>
const std::map<int, std::vector<TFlatRecord>>& t_flats(const Representation<K>& rep) {
  detail::ensure_tflats(rep);
  return *rep.cache->tflats;
}

template <class K>
bool is_t_flat(const Representation<K>& rep, const GroundSubset& a) {
  detail::ensure_tflats(rep);
  return rep.cache->tflat_masks->count(checked_mask(rep, a)) != 0;
}

template <class K>
std::vector<GroundSubset> t_parts(const Representation<K>& rep, const GroundSubset& a) {
  detail::ensure_tflats(rep);
  std::uint32_t m = checked_mask(rep, a);
  if (!rep.cache->tflat_masks->count(m))
    throw std::invalid_argument("t_parts: not a T-flat");
  int lvl = level_of_mask(rep, m);
  for (const auto& rec : rep.cache->tflats->at(lvl))
    if (rec.set == a) return rec.t_parts;
  throw std::logic_error("t_parts: record not found");
}

// Finest direct-sum decomposition: merge elements sharing a circuit inside A;
// what remains lies in no circuit of the restriction and splits off freely.
template <class K>
std::vector<GroundSubset> connected_components(const Representation<K>& rep,
                                               const GroundSubset& a) {
  std::uint32_t m = checked_mask(rep, a);
  std::map<int, int> parent;
  for (int e : a) parent[e] = e;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& c : circuits(rep)) {
    std::uint32_t cm = mask_of(c);
    if ((m & cm) != cm) continue;
    for (std::size_t i = 1; i < c.size(); ++i) {
      int ra = find(c[0]), rb = find(c[i]);
      if (ra != rb) parent[rb] = ra;
    }
  }
  std::map<int, GroundSubset> comps;
  for (int e : a) comps[find(e)].push_back(e);
  std::vector<GroundSubset> out;
  for (auto& [root, comp] : comps) out.push_back(std::move(comp));
  std::sort(out.begin(), out.end(),
            [](const GroundSubset& x, const GroundSubset& y) { return x[0] < y[0]; });
  return out;
}

// Greedy maximal independent subset in the global element order.
template <class K>
GroundSubset max_independent(const Representation<K>& rep, const GroundSubset& a) {
  std::uint32_t acc = 0;
  GroundSubset out;
  int r = 0;
  for (int e : a) {
    std::uint32_t cand = acc | (std::uint32_t{1} << e);
    int rc = rank_of_mask(rep, cand);
    if (rc > r) {
      acc = cand;
      r = rc;
      out.push_back(e);
    }
  }
  return out;
}

template <class K>
struct MinorView {
  enum class Kind { restriction, contraction };
  Kind kind = Kind::restriction;
  GroundSubset Y;
  Representation<K> derived;
  std::optional<Matrix<K>> pi;  // contraction chart W -> W/V_{S\Y}, kernel V_{S\Y}
};

template <class K>
MinorView<K> restrict_to(const Representation<K>& rep, const GroundSubset& y) {
  std::uint32_t m = checked_mask(rep, y);
  MinorView<K> mv;
  mv.kind = MinorView<K>::Kind::restriction;
  mv.Y = y;
  std::vector<std::string> names;
  for (int e : y) names.push_back(rep.labels[e]);
  mv.derived = Representation<K>(columns_of(rep, m), names, rep.n());
  return mv;
}

// The quotient W/V_{S\Y} in coordinates: project along V_{S\Y} onto the
// non-pivot coordinate positions of its reduced basis. The pivot positions
// of nested spans are nested, which makes iterated contraction charts agree
// with one-shot charts entry for entry.
template <class K>
Matrix<K> contraction_chart(const Representation<K>& rep, std::uint32_t removed_mask) {
  auto v = column_space(columns_of(rep, removed_mask));
  std::vector<bool> is_pivot(rep.w_dim, false);
  for (int p : v.pivots) is_pivot[p] = true;
  std::vector<int> q;
  for (int j = 0; j < rep.w_dim; ++j)
    if (!is_pivot[j]) q.push_back(j);
  Matrix<K> pi(static_cast<int>(q.size()), rep.w_dim);
  for (int k = 0; k < pi.rows; ++k) {
    for (int j = 0; j < rep.w_dim; ++j) pi.at(k, j) = K(0);
    pi.at(k, q[k]) = K(1);
    for (int i = 0; i < v.dim(); ++i) pi.at(k, v.pivots[i]) = -v.basis.at(i, q[k]);
  }
  return pi;
}

template <class K>
MinorView<K> contract(const Representation<K>& rep, const GroundSubset& y) {
  std::uint32_t m = checked_mask(rep, y);
  MinorView<K> mv;
  mv.kind = MinorView<K>::Kind::contraction;
  mv.Y = y;
  Matrix<K> pi = contraction_chart(rep, rep.full_mask() & ~m);
  std::vector<std::string> names;
  for (int e : y) names.push_back(rep.labels[e]);
  mv.derived = Representation<K>(mat_mul(pi, columns_of(rep, m)), names, rep.n());
  mv.pi = std::move(pi);
  return mv;
}

// The unique maximal T-flat of the ambient matroid meeting Y exactly in A.
template <class K>
GroundSubset b_of(const Representation<K>& rep, const GroundSubset& y, const GroundSubset& a) {
  std::uint32_t my = checked_mask(rep, y);
  std::uint32_t ma = checked_mask(rep, a);
  return set_of(rep.full_mask() & ~dual_closure_mask(rep, my & ~ma));
}

}  // namespace tres

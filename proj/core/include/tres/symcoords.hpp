#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "tres/matrix.hpp"

namespace tres {

// Coordinates on Sym^n of a w-dimensional space: monomials of total degree n
// listed by descending lexicographic exponent vector, so degree one matches
// the ambient coordinate order.
struct SymCoords {
  int w = 0;
  int degree = 0;
  std::vector<std::vector<int>> exponents;       // index -> exponent vector
  std::map<std::vector<int>, int> index_of_exp;  // exponent vector -> index

  int dim() const { return static_cast<int>(exponents.size()); }
  int index_of(const std::vector<int>& e) const {
    auto it = index_of_exp.find(e);
    if (it == index_of_exp.end()) throw std::invalid_argument("index_of: bad exponent");
    return it->second;
  }
};

namespace detail {
inline void enumerate_exponents(int w, int n, int pos, std::vector<int>& cur,
                                std::vector<std::vector<int>>& out) {
  if (pos == w - 1) {
    cur[pos] = n;
    out.push_back(cur);
    return;
  }
  for (int e = n; e >= 0; --e) {
    cur[pos] = e;
    enumerate_exponents(w, n - e, pos + 1, cur, out);
  }
}
}  // namespace detail

inline const SymCoords& sym_coords(int w, int n) {
  if (w < 0 || n < 0) throw std::invalid_argument("sym_coords: negative arguments");
  static std::map<std::pair<int, int>, SymCoords> memo;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find({w, n});
  if (it != memo.end()) return it->second;
  SymCoords sc;
  sc.w = w;
  sc.degree = n;
  if (w == 0) {
    if (n == 0) sc.exponents.push_back({});
  } else {
    std::vector<int> cur(w, 0);
    detail::enumerate_exponents(w, n, 0, cur, sc.exponents);
  }
  for (int i = 0; i < static_cast<int>(sc.exponents.size()); ++i)
    sc.index_of_exp[sc.exponents[i]] = i;
  return memo.emplace(std::make_pair(w, n), std::move(sc)).first->second;
}

// Product Sym^p x Sym^q -> Sym^{p+q} as coefficient convolution.
template <class K>
std::vector<K> sym_multiply(int w, int p, const std::vector<K>& u, int q,
                            const std::vector<K>& v) {
  const SymCoords& cp = sym_coords(w, p);
  const SymCoords& cq = sym_coords(w, q);
  const SymCoords& cr = sym_coords(w, p + q);
  if (static_cast<int>(u.size()) != cp.dim() || static_cast<int>(v.size()) != cq.dim())
    throw std::invalid_argument("sym_multiply: dimension mismatch");
  std::vector<K> out(cr.dim(), K(0));
  for (int i = 0; i < cp.dim(); ++i) {
    if (is_zero(u[i])) continue;
    for (int j = 0; j < cq.dim(); ++j) {
      if (is_zero(v[j])) continue;
      std::vector<int> e(w);
      for (int t = 0; t < w; ++t) e[t] = cp.exponents[i][t] + cq.exponents[j][t];
      out[cr.index_of(e)] += u[i] * v[j];
    }
  }
  return out;
}

}  // namespace tres

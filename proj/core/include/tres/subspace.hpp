#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "tres/matrix.hpp"

namespace tres {

// A subspace of k^ambient held as an RREF basis (rows). The RREF form makes
// equality of subspaces equality of matrices and pins every generator choice.
template <class K>
struct Subspace {
  int ambient = 0;
  Matrix<K> basis;          // dim x ambient, RREF, no zero rows
  std::vector<int> pivots;  // strictly increasing, one per basis row

  Subspace() = default;
  explicit Subspace(int ambient_dim) : ambient(ambient_dim), basis(0, ambient_dim) {}

  int dim() const { return basis.rows; }

  static Subspace from_rows(int ambient_dim, const Matrix<K>& rows) {
    if (rows.cols != ambient_dim && rows.rows > 0)
      throw std::invalid_argument("from_rows: ambient mismatch");
    auto rr = rref(rows.rows > 0 ? rows : Matrix<K>(0, ambient_dim));
    Subspace s;
    s.ambient = ambient_dim;
    const int d = static_cast<int>(rr.pivots.size());
    s.basis = Matrix<K>(d, ambient_dim);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < ambient_dim; ++j) s.basis.at(i, j) = rr.R.at(i, j);
    s.pivots = std::move(rr.pivots);
    return s;
  }

  // Coordinates of v in this basis, if v lies in the subspace. With an RREF
  // basis the candidate coordinates are just v at the pivot positions.
  std::optional<std::vector<K>> coords_of(const std::vector<K>& v) const {
    if (static_cast<int>(v.size()) != ambient)
      throw std::invalid_argument("coords_of: ambient mismatch");
    std::vector<K> c(dim());
    for (int i = 0; i < dim(); ++i) c[i] = v[pivots[i]];
    std::vector<K> r = v;
    for (int i = 0; i < dim(); ++i) {
      if (is_zero(c[i])) continue;
      for (int j = 0; j < ambient; ++j) r[j] = r[j] - c[i] * basis.at(i, j);
    }
    for (const auto& e : r)
      if (!is_zero(e)) return std::nullopt;
    return c;
  }

  bool contains(const std::vector<K>& v) const { return coords_of(v).has_value(); }

  friend bool operator==(const Subspace& x, const Subspace& y) {
    return x.ambient == y.ambient && x.basis == y.basis;
  }
};

template <class K>
Subspace<K> subspace_join(const Subspace<K>& x, const Subspace<K>& y) {
  if (x.ambient != y.ambient) throw std::invalid_argument("join: ambient mismatch");
  return Subspace<K>::from_rows(x.ambient, vstack(x.basis, y.basis));
}

// Intersection via the kernel of the stacked constraint system: a vector in
// both spaces is y^T X = z^T Y, so solve [X^T | -Y^T] on coefficient pairs.
template <class K>
Subspace<K> subspace_meet(const Subspace<K>& x, const Subspace<K>& y) {
  if (x.ambient != y.ambient) throw std::invalid_argument("meet: ambient mismatch");
  const int dx = x.dim(), dy = y.dim();
  if (dx == 0 || dy == 0) return Subspace<K>(x.ambient);
  Matrix<K> sys(x.ambient, dx + dy);
  for (int i = 0; i < dx; ++i)
    for (int j = 0; j < x.ambient; ++j) sys.at(j, i) = x.basis.at(i, j);
  for (int i = 0; i < dy; ++i)
    for (int j = 0; j < x.ambient; ++j) sys.at(j, dx + i) = -y.basis.at(i, j);
  auto rr = rref(std::move(sys));
  // free columns of the system parameterize the intersection
  std::vector<bool> is_pivot(dx + dy, false);
  for (int p : rr.pivots) is_pivot[p] = true;
  std::vector<std::vector<K>> gens;
  for (int f = 0; f < dx + dy; ++f) {
    if (is_pivot[f]) continue;
    std::vector<K> coef(dx + dy, K(0));
    coef[f] = K(1);
    for (std::size_t i = 0; i < rr.pivots.size(); ++i)
      coef[rr.pivots[i]] = -rr.R.at(static_cast<int>(i), f);
    std::vector<K> v(x.ambient, K(0));
    for (int i = 0; i < dx; ++i)
      if (!is_zero(coef[i]))
        for (int j = 0; j < x.ambient; ++j) v[j] += coef[i] * x.basis.at(i, j);
    gens.push_back(std::move(v));
  }
  Matrix<K> g(static_cast<int>(gens.size()), x.ambient);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (int j = 0; j < x.ambient; ++j) g.at(static_cast<int>(i), j) = gens[i][j];
  return Subspace<K>::from_rows(x.ambient, g);
}

// Right null space of m, free variables parameterized in column order.
template <class K>
Subspace<K> kernel_basis(const Matrix<K>& m) {
  auto rr = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int p : rr.pivots) is_pivot[p] = true;
  std::vector<std::vector<K>> gens;
  for (int f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<K> v(m.cols, K(0));
    v[f] = K(1);
    for (std::size_t i = 0; i < rr.pivots.size(); ++i)
      v[rr.pivots[i]] = -rr.R.at(static_cast<int>(i), f);
    gens.push_back(std::move(v));
  }
  Matrix<K> g(static_cast<int>(gens.size()), m.cols);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (int j = 0; j < m.cols; ++j) g.at(static_cast<int>(i), j) = gens[i][j];
  return Subspace<K>::from_rows(m.cols, g);
}

// Column span of m as a subspace of k^rows.
template <class K>
Subspace<K> column_space(const Matrix<K>& m) {
  return Subspace<K>::from_rows(m.rows, m.transpose());
}

}  // namespace tres

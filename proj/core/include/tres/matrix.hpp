#pragma once

#include <cassert>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tres/scalar.hpp"

namespace tres {

// Dense exact matrix, row-major. Empty shapes (0 x n, m x 0) are legal and
// behave as rank 0 throughout.
template <class K>
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<K> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
  Matrix(int r, int c, std::vector<K> data) : rows(r), cols(c), a(std::move(data)) {
    assert(static_cast<int>(a.size()) == rows * cols);
  }

  K& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const K& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = K(1);
    return m;
  }

  Matrix transpose() const {
    Matrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  std::vector<K> row(int i) const {
    return std::vector<K>(a.begin() + static_cast<std::size_t>(i) * cols,
                          a.begin() + static_cast<std::size_t>(i + 1) * cols);
  }

  std::vector<K> col(int j) const {
    std::vector<K> c(rows);
    for (int i = 0; i < rows; ++i) c[i] = at(i, j);
    return c;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

template <class K>
Matrix<K> mat_mul(const Matrix<K>& x, const Matrix<K>& y) {
  if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
  Matrix<K> z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const K& xik = x.at(i, k);
      if (is_zero(xik)) continue;
      for (int j = 0; j < y.cols; ++j) z.at(i, j) += xik * y.at(k, j);
    }
  return z;
}

template <class K>
std::vector<K> mat_apply(const Matrix<K>& m, const std::vector<K>& v) {
  if (static_cast<int>(v.size()) != m.cols)
    throw std::invalid_argument("mat_apply: shape mismatch");
  std::vector<K> w(m.rows, K(0));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (!is_zero(m.at(i, j))) w[i] += m.at(i, j) * v[j];
  return w;
}

template <class K>
Matrix<K> mat_scale(const Matrix<K>& m, const K& c) {
  Matrix<K> z = m;
  for (auto& e : z.a) e = e * c;
  return z;
}

template <class K>
Matrix<K> hstack(const Matrix<K>& x, const Matrix<K>& y) {
  if (x.rows != y.rows) throw std::invalid_argument("hstack: row mismatch");
  Matrix<K> z(x.rows, x.cols + y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int j = 0; j < x.cols; ++j) z.at(i, j) = x.at(i, j);
    for (int j = 0; j < y.cols; ++j) z.at(i, x.cols + j) = y.at(i, j);
  }
  return z;
}

template <class K>
Matrix<K> vstack(const Matrix<K>& x, const Matrix<K>& y) {
  if (x.cols != y.cols) throw std::invalid_argument("vstack: col mismatch");
  Matrix<K> z(x.rows + y.rows, x.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) z.at(i, j) = x.at(i, j);
  for (int i = 0; i < y.rows; ++i)
    for (int j = 0; j < x.cols; ++j) z.at(x.rows + i, j) = y.at(i, j);
  return z;
}

template <class K>
bool is_zero_matrix(const Matrix<K>& m) {
  for (const auto& e : m.a)
    if (!is_zero(e)) return false;
  return true;
}

template <class K>
struct RrefResult {
  Matrix<K> R;
  std::vector<int> pivots;  // pivot column of row i, strictly increasing
};

// Deterministic Gauss-Jordan: pivot = first nonzero column scanning left to
// right, candidate row = topmost unused row. No magnitude heuristics.
template <class K>
RrefResult<K> rref(Matrix<K> m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int sel = -1;
    for (int i = r; i < m.rows; ++i)
      if (!is_zero(m.at(i, c))) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
    const K inv = K(1) / m.at(r, c);
    for (int j = c; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || is_zero(m.at(i, c))) continue;
      const K f = m.at(i, c);
      for (int j = c; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <class K>
std::pair<Matrix<K>, int> rref_rank(const Matrix<K>& m) {
  auto rr = rref(m);
  return {std::move(rr.R), static_cast<int>(rr.pivots.size())};
}

template <class K>
int rank_of_matrix(const Matrix<K>& m) {
  return static_cast<int>(rref(m).pivots.size());
}

template <class K>
K det(Matrix<K> m) {
  if (m.rows != m.cols) throw std::invalid_argument("det: not square");
  K d(1);
  for (int c = 0; c < m.cols; ++c) {
    int sel = -1;
    for (int i = c; i < m.rows; ++i)
      if (!is_zero(m.at(i, c))) {
        sel = i;
        break;
      }
    if (sel < 0) return K(0);
    if (sel != c) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(c, j));
      d = -d;
    }
    d = d * m.at(c, c);
    const K inv = K(1) / m.at(c, c);
    for (int i = c + 1; i < m.rows; ++i) {
      if (is_zero(m.at(i, c))) continue;
      const K f = m.at(i, c) * inv;
      for (int j = c; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(c, j);
    }
  }
  return d;
}

// One consistent solution of A x = b (free variables set to 0), or nullopt.
template <class K>
std::optional<std::vector<K>> solve(const Matrix<K>& A, const std::vector<K>& b) {
  if (static_cast<int>(b.size()) != A.rows)
    throw std::invalid_argument("solve: shape mismatch");
  Matrix<K> aug(A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols) = b[i];
  }
  auto rr = rref(std::move(aug));
  std::vector<K> x(A.cols, K(0));
  for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
    if (rr.pivots[i] == A.cols) return std::nullopt;  // inconsistent row
    x[rr.pivots[i]] = rr.R.at(static_cast<int>(i), A.cols);
  }
  return x;
}

}  // namespace tres

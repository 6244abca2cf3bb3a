// Copyright 2026 the resolvalg authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Small dense vectors/matrices templated over the coordinate scalar
// (double or Rational).  Dimensions here are symplectic-space sized
// (<= a few dozen), so everything is plain row reduction; Eigen is used
// only on the numeric (double/complex) side of the project.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "resolvalg/rational.hpp"

namespace ralg {

template <class T>
using Vec = std::vector<T>;

template <class T>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, T(0)) {}

  T& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  Vec<T> col(int j) const {
    Vec<T> v(rows);
    for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
  }
};

template <class T>
struct ScalarOps;

/// Float-mode rank tolerance, relative to the largest entry magnitude of
/// the matrix at hand (within a dimension factor of the largest singular
/// value).  Default 1e-10; adjust for ill-scaled inputs.
inline double& float_rank_tolerance() {
  static double tol = 1e-10;
  return tol;
}

template <>
struct ScalarOps<double> {
  static constexpr bool exact = false;
  static bool is_zero(double x, double scale) {
    return std::abs(x) <= float_rank_tolerance() * (scale > 1.0 ? scale : 1.0);
  }
  static double mag(double x) { return std::abs(x); }
};

template <>
struct ScalarOps<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x, const Rational&) { return x == 0; }
  // Exact mode: any nonzero entry is an acceptable pivot; the minimal-index
  // rule then decides ties, so weight every nonzero equally.
  static double mag(const Rational& x) { return x == 0 ? 0.0 : 1.0; }
};

template <class T>
T max_abs(const Mat<T>& m) {
  T s(0);
  for (const T& x : m.a) {
    T ax = x < T(0) ? T(-x) : x;
    if (s < ax) s = ax;
  }
  return s;
}

template <class T>
Vec<T> matvec(const Mat<T>& m, const Vec<T>& v) {
  if (static_cast<int>(v.size()) != m.cols) throw std::invalid_argument("matvec: dimension mismatch");
  Vec<T> r(m.rows, T(0));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r[i] += m(i, j) * v[j];
  return r;
}

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  T s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
Mat<T> matmul(const Mat<T>& x, const Mat<T>& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matmul: dimension mismatch");
  Mat<T> r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const T& xik = x(i, k);
      if (xik == T(0)) continue;
      for (int j = 0; j < y.cols; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

template <class T>
Mat<T> transpose(const Mat<T>& m) {
  Mat<T> r(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r(j, i) = m(i, j);
  return r;
}

/// In-place reduced row echelon form. Returns pivot column indices.
/// Float mode pivots by magnitude; exact mode takes the first nonzero
/// entry (minimal row index).
template <class T>
std::vector<int> rref(Mat<T>& m) {
  using Ops = ScalarOps<T>;
  const T scale = max_abs(m);
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int best = -1;
    double best_mag = 0.0;
    for (int i = row; i < m.rows; ++i) {
      if (Ops::is_zero(m(i, col), scale)) continue;
      double w = Ops::mag(m(i, col));
      if (best < 0 || w > best_mag) {
        best = i;
        best_mag = w;
        if (Ops::exact) break;  // minimal index
      }
    }
    if (best < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m(row, j), m(best, j));
    T inv = T(1) / m(row, col);
    for (int j = 0; j < m.cols; ++j) m(row, j) = m(row, j) * inv;
    m(row, col) = T(1);
    for (int i = 0; i < m.rows; ++i) {
      if (i == row) continue;
      T f = m(i, col);
      if (f == T(0)) continue;
      for (int j = 0; j < m.cols; ++j) m(i, j) -= f * m(row, j);
      m(i, col) = T(0);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class T>
int rank(Mat<T> m) {
  return static_cast<int>(rref(m).size());
}

/// Basis of the null space of m (as columns of the returned matrix).
template <class T>
Mat<T> kernel_basis(Mat<T> m) {
  std::vector<int> piv = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : piv) is_pivot[c] = true;
  int nfree = m.cols - static_cast<int>(piv.size());
  Mat<T> k(m.cols, nfree);
  int idx = 0;
  for (int c = 0; c < m.cols; ++c) {
    if (is_pivot[c]) continue;
    k(c, idx) = T(1);
    for (size_t r = 0; r < piv.size(); ++r) k(piv[r], idx) = -m(static_cast<int>(r), c);
    ++idx;
  }
  return k;
}

/// Solve A x = b; throws if inconsistent. Free variables are set to zero
/// (minimal-index solution).
template <class T>
Vec<T> solve(Mat<T> a, Vec<T> b) {
  using Ops = ScalarOps<T>;
  if (static_cast<int>(b.size()) != a.rows) throw std::invalid_argument("solve: dimension mismatch");
  Mat<T> aug(a.rows, a.cols + 1);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) aug(i, j) = a(i, j);
    aug(i, a.cols) = b[i];
  }
  std::vector<int> piv = rref(aug);
  const T scale = max_abs(aug);
  Vec<T> x(a.cols, T(0));
  for (size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] == a.cols) throw std::runtime_error("solve: inconsistent system");
    x[piv[r]] = aug(static_cast<int>(r), a.cols);
  }
  // Guard against an inconsistent row below the pivot block.
  for (int i = static_cast<int>(piv.size()); i < a.rows; ++i)
    if (!Ops::is_zero(aug(i, a.cols), scale)) throw std::runtime_error("solve: inconsistent system");
  return x;
}

template <class T>
bool is_invertible(const Mat<T>& m) {
  return m.rows == m.cols && rank(m) == m.rows;
}

/// Inverse via row reduction of [m | I]; caller guarantees invertibility.
template <class T>
Mat<T> inverse(const Mat<T>& m) {
  if (m.rows != m.cols) throw std::invalid_argument("inverse: not square");
  int n = m.rows;
  Mat<T> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = T(1);
  }
  std::vector<int> piv = rref(aug);
  if (static_cast<int>(piv.size()) != n || piv[n - 1] != n - 1)
    throw std::runtime_error("inverse: singular matrix");
  Mat<T> r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
  return r;
}

template <class T>
Mat<T> hcat(const Mat<T>& x, const Mat<T>& y) {
  if (x.rows != y.rows) throw std::invalid_argument("hcat: row mismatch");
  Mat<T> r(x.rows, x.cols + y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int j = 0; j < x.cols; ++j) r(i, j) = x(i, j);
    for (int j = 0; j < y.cols; ++j) r(i, x.cols + j) = y(i, j);
  }
  return r;
}

template <class T>
Mat<T> from_columns(const std::vector<Vec<T>>& cols, int dim) {
  Mat<T> m(dim, static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    if (static_cast<int>(cols[j].size()) != dim) throw std::invalid_argument("from_columns: bad vector length");
    for (int i = 0; i < dim; ++i) m(i, static_cast<int>(j)) = cols[j][i];
  }
  return m;
}

}  // namespace ralg

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

// Finite-dimensional symplectic linear algebra: forms, complements, basis
// construction/completion and the regularity decomposition
// X = Q + (Q^perp ∩ X_R) + (Q^perp ∩ X_R^perp).
//
// Everything is templated over the coordinate scalar: Rational for the
// exact default mode, double for the float fallback.  Sign convention
// throughout: sigma(p_i, q_j) = delta_ij.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "resolvalg/linalg.hpp"

namespace ralg {

template <class T>
class SymplecticSpace {
 public:
  explicit SymplecticSpace(Mat<T> form) : form_(std::move(form)) {
    if (form_.rows != form_.cols || form_.rows <= 0)
      throw std::invalid_argument("SymplecticSpace: form must be square and nonempty");
    const T scale = max_abs(form_);
    for (int i = 0; i < form_.rows; ++i)
      for (int j = 0; j < form_.cols; ++j) {
        T defect = form_(i, j) + form_(j, i);
        // Exact in rational mode, <= 1e-12 relative in float mode.
        bool ok;
        if constexpr (ScalarOps<T>::exact)
          ok = defect == T(0);
        else
          ok = std::abs(defect) <= 1e-12 * std::max(1.0, to_double(scale));
        if (!ok) throw std::invalid_argument("SymplecticSpace: form is not antisymmetric");
      }
    if (!is_invertible(form_))
      throw std::invalid_argument("SymplecticSpace: form is degenerate");
  }

  /// Standard form on R^{2n}: block-diagonal [[0,1],[-1,0]], i.e.
  /// sigma(e_{2k}, e_{2k+1}) = 1 on the coordinate basis.
  static SymplecticSpace standard(int n_modes) {
    Mat<T> f(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
      f(2 * k, 2 * k + 1) = T(1);
      f(2 * k + 1, 2 * k) = T(-1);
    }
    return SymplecticSpace(std::move(f));
  }

  int dim() const { return form_.rows; }
  const Mat<T>& form() const { return form_; }

 private:
  Mat<T> form_;
};

template <class T>
T sigma(const SymplecticSpace<T>& space, const Vec<T>& f, const Vec<T>& g) {
  if (static_cast<int>(f.size()) != space.dim() || static_cast<int>(g.size()) != space.dim())
    throw std::invalid_argument("sigma: vector does not conform to space");
  return dot(f, matvec(space.form(), g));
}

template <class T>
class Subspace {
 public:
  Subspace(const SymplecticSpace<T>& space, Mat<T> basis) : basis_(std::move(basis)) {
    if (basis_.cols == 0) basis_.rows = space.dim();
    if (basis_.rows != space.dim())
      throw std::invalid_argument("Subspace: basis does not conform to space");
    if (rank(basis_) != basis_.cols)
      throw std::invalid_argument("Subspace: basis vectors are dependent");
  }

  static Subspace zero(const SymplecticSpace<T>& space) { return Subspace(space, Mat<T>(space.dim(), 0)); }

  int dim() const { return basis_.cols; }
  const Mat<T>& basis() const { return basis_; }
  Vec<T> basis_vector(int j) const { return basis_.col(j); }

  bool contains(const Vec<T>& v) const {
    Mat<T> ext = hcat(basis_, from_columns<T>({v}, basis_.rows));
    return rank(ext) == basis_.cols;
  }

 private:
  Mat<T> basis_;
};

namespace detail {

// v minus its projection onto the span of the pairs built so far:
// v - sum_i ( sigma(v, q_i) p_i + sigma(p_i, v) q_i ).
template <class T>
Vec<T> symplectic_project_out(const SymplecticSpace<T>& space, const Vec<T>& v,
                              const std::vector<Vec<T>>& qs, const std::vector<Vec<T>>& ps) {
  Vec<T> r = v;
  for (size_t i = 0; i < qs.size(); ++i) {
    T cq = sigma(space, v, qs[i]);
    T cp = sigma(space, ps[i], v);
    for (int k = 0; k < static_cast<int>(r.size()); ++k) r[k] -= cq * ps[i][k] + cp * qs[i][k];
  }
  return r;
}

template <class T>
Vec<T> unit_vector(int dim, int m) {
  Vec<T> e(dim, T(0));
  e[m] = T(1);
  return e;
}

}  // namespace detail

/// Symplectic basis {q1,p1; ...; qn,pn} of the whole space, returned in
/// the flat order [q1, p1, q2, p2, ...].  Pivots follow the minimal-index
/// rule: the next seed is the smallest m with e_m outside the current span.
template <class T>
std::vector<Vec<T>> symplectic_basis(const SymplecticSpace<T>& space) {
  const int d = space.dim();
  if (d % 2 != 0)
    throw std::invalid_argument("symplectic_basis: odd dimension admits no symplectic basis");
  std::vector<Vec<T>> qs, ps;
  while (static_cast<int>(qs.size() + ps.size()) < d) {
    Mat<T> span = from_columns([&] {
      std::vector<Vec<T>> all = qs;
      all.insert(all.end(), ps.begin(), ps.end());
      return all;
    }(), d);
    int m = -1;
    for (int cand = 0; cand < d; ++cand) {
      Mat<T> ext = hcat(span, from_columns<T>({detail::unit_vector<T>(d, cand)}, d));
      if (rank(ext) > span.cols) {
        m = cand;
        break;
      }
    }
    if (m < 0) throw std::runtime_error("symplectic_basis: span exhausted early");
    Vec<T> p = detail::symplectic_project_out(space, detail::unit_vector<T>(d, m), qs, ps);
    int l = -1;
    const T scale = max_abs(space.form());
    for (int cand = 0; cand < d; ++cand) {
      if (!ScalarOps<T>::is_zero(sigma(space, p, detail::unit_vector<T>(d, cand)), scale)) {
        l = cand;
        break;
      }
    }
    if (l < 0) throw std::invalid_argument("symplectic_basis: degenerate form");
    Vec<T> qt = detail::symplectic_project_out(space, detail::unit_vector<T>(d, l), qs, ps);
    T s = sigma(space, p, qt);
    Vec<T> q(d);
    for (int k = 0; k < d; ++k) q[k] = qt[k] / s;
    qs.push_back(std::move(q));
    ps.push_back(std::move(p));
  }
  std::vector<Vec<T>> out;
  for (size_t i = 0; i < qs.size(); ++i) {
    out.push_back(qs[i]);
    out.push_back(ps[i]);
  }
  return out;
}

/// Conjugates {p_1,...,p_k} for a linearly independent, pairwise
/// sigma-null set {q_1,...,q_k}, so that the union is a symplectic basis
/// of its span: sigma(p_i, q_j) = delta_ij, sigma(p_i, p_j) = 0.
template <class T>
std::vector<Vec<T>> complete_to_symplectic(const SymplecticSpace<T>& space,
                                           const std::vector<Vec<T>>& qs) {
  const int d = space.dim();
  const int k = static_cast<int>(qs.size());
  Mat<T> qmat = from_columns(qs, d);
  if (rank(qmat) != k)
    throw std::invalid_argument("complete_to_symplectic: input vectors are dependent");
  const T scale = max_abs(space.form());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (!ScalarOps<T>::is_zero(sigma(space, qs[i], qs[j]), scale))
        throw std::invalid_argument("complete_to_symplectic: input set is not isotropic");

  std::vector<Vec<T>> ps;
  for (int j = 0; j < k; ++j) {
    // sigma(p, q_i) = delta_ij and sigma(p, p_i) = 0 for i < j; each
    // constraint row is (F g)^T for the corresponding vector g.
    Mat<T> a(k + j, d);
    Vec<T> b(k + j, T(0));
    for (int i = 0; i < k; ++i) {
      Vec<T> row = matvec(space.form(), qs[i]);
      for (int c = 0; c < d; ++c) a(i, c) = row[c];
      if (i == j) b[i] = T(1);
    }
    for (int i = 0; i < j; ++i) {
      Vec<T> row = matvec(space.form(), ps[i]);
      for (int c = 0; c < d; ++c) a(k + i, c) = row[c];
    }
    ps.push_back(solve(a, b));
  }
  return ps;
}

/// sigma-annihilator of s: { f : sigma(f, s) = 0 }.
template <class T>
Subspace<T> symplectic_complement(const SymplecticSpace<T>& space, const Subspace<T>& s) {
  if (s.dim() == 0) return Subspace<T>(space, Mat<T>::identity(space.dim()));
  // sigma(f, s_j) = f . (F s_j), so the annihilator is the kernel of (F S)^T.
  Mat<T> a = transpose(matmul(space.form(), s.basis()));
  Mat<T> k = kernel_basis(a);
  return Subspace<T>(space, std::move(k));
}

template <class T>
Subspace<T> subspace_intersection(const SymplecticSpace<T>& space, const Subspace<T>& x,
                                  const Subspace<T>& y) {
  if (x.dim() == 0 || y.dim() == 0) return Subspace<T>::zero(space);
  Mat<T> stacked(space.dim(), x.dim() + y.dim());
  for (int i = 0; i < space.dim(); ++i) {
    for (int j = 0; j < x.dim(); ++j) stacked(i, j) = x.basis()(i, j);
    for (int j = 0; j < y.dim(); ++j) stacked(i, x.dim() + j) = -y.basis()(i, j);
  }
  Mat<T> k = kernel_basis(stacked);
  if (k.cols == 0) return Subspace<T>::zero(space);
  std::vector<Vec<T>> gens;
  for (int c = 0; c < k.cols; ++c) {
    Vec<T> u(x.dim());
    for (int i = 0; i < x.dim(); ++i) u[i] = k(i, c);
    gens.push_back(matvec(x.basis(), u));
  }
  // Reduce the generators to an independent set.
  Mat<T> g = transpose(from_columns(gens, space.dim()));
  std::vector<int> piv = rref(g);
  Mat<T> basis(space.dim(), static_cast<int>(piv.size()));
  for (size_t r = 0; r < piv.size(); ++r)
    for (int i = 0; i < space.dim(); ++i) basis(i, static_cast<int>(r)) = g(static_cast<int>(r), i);
  return Subspace<T>(space, std::move(basis));
}

template <class T>
struct RegularityDecomposition {
  Subspace<T> q;     ///< Span of x_t and its symplectic conjugates.
  Subspace<T> reg;   ///< Q^perp ∩ X_R: genuinely regular part.
  Subspace<T> sing;  ///< Q^perp ∩ X_R^perp: singular part.
};

/// Decomposition X = Q + (Q^perp ∩ X_R) + (Q^perp ∩ X_R^perp) from the
/// regularity data (X_R, X_T) of a factorial representation.  The
/// consistency conditions sigma(X_T, X_T) = 0, sigma(X_T, X_R) = 0 and
/// X_T ⊆ X_R are checked; data violating them (or for which the three
/// parts fail to reconstruct X) is rejected as inconsistent.
template <class T>
RegularityDecomposition<T> regularity_decomposition(const SymplecticSpace<T>& space,
                                                    const Subspace<T>& x_r, const Subspace<T>& x_t) {
  const T scale = max_abs(space.form());
  for (int j = 0; j < x_t.dim(); ++j)
    if (!x_r.contains(x_t.basis_vector(j)))
      throw std::invalid_argument("regularity_decomposition: inconsistent-regularity-data (X_T not inside X_R)");
  for (int i = 0; i < x_t.dim(); ++i)
    for (int j = 0; j < x_r.dim(); ++j)
      if (!ScalarOps<T>::is_zero(sigma(space, x_t.basis_vector(i), x_r.basis_vector(j)), scale))
        throw std::invalid_argument("regularity_decomposition: inconsistent-regularity-data (sigma(X_T, X_R) != 0)");

  std::vector<Vec<T>> qs;
  for (int j = 0; j < x_t.dim(); ++j) qs.push_back(x_t.basis_vector(j));
  std::vector<Vec<T>> ps = complete_to_symplectic(space, qs);
  std::vector<Vec<T>> qcols = qs;
  qcols.insert(qcols.end(), ps.begin(), ps.end());
  Subspace<T> q = qcols.empty() ? Subspace<T>::zero(space)
                                : Subspace<T>(space, from_columns(qcols, space.dim()));
  Subspace<T> qperp = symplectic_complement(space, q);
  Subspace<T> xrperp = symplectic_complement(space, x_r);
  Subspace<T> reg = subspace_intersection(space, qperp, x_r);
  Subspace<T> sing = subspace_intersection(space, qperp, xrperp);

  if (q.dim() + reg.dim() + sing.dim() != space.dim())
    throw std::invalid_argument("regularity_decomposition: inconsistent-regularity-data (parts do not reconstruct X)");
  auto check_orth = [&](const Subspace<T>& a, const Subspace<T>& b) {
    for (int i = 0; i < a.dim(); ++i)
      for (int j = 0; j < b.dim(); ++j)
        if (!ScalarOps<T>::is_zero(sigma(space, a.basis_vector(i), b.basis_vector(j)), scale))
          throw std::invalid_argument("regularity_decomposition: inconsistent-regularity-data (parts not sigma-orthogonal)");
  };
  check_orth(q, reg);
  check_orth(q, sing);
  check_orth(reg, sing);
  return {std::move(q), std::move(reg), std::move(sing)};
}

inline Mat<double> to_double_mat(const Mat<Rational>& m) {
  Mat<double> r(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r(i, j) = to_double(m(i, j));
  return r;
}

inline Vec<double> to_double_vec(const Vec<Rational>& v) {
  Vec<double> r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = to_double(v[i]);
  return r;
}

}  // namespace ralg

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

// Symbolic *-algebra of resolvent generators R(z, f), Re z != 0.
//
// Elements are complex-linear combinations of ordered products of
// generators.  Two normalizations are applied eagerly at construction:
//   R(z, 0)        ->  -i/z * 1          (identity relation)
//   R(z, f)        ->  nu * R(nu z, nu f) with the leading coordinate of
//                      nu f scaled to exactly 1  (homogeneity relation)
// so every stored generator carries a canonical ray direction.
//
// The scalar field is a template parameter: FieldF64 (complex doubles,
// 1e-12 merge tolerance) is the default; FieldFQ (exact rational complex
// coefficients over a rational symplectic space) is available when all
// spectral parameters and form values are rational.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "resolvalg/symplectic.hpp"

namespace ralg {

struct FieldF64 {
  using R = double;
  using C = std::complex<double>;
  static constexpr bool exact = false;

  static constexpr double component_eps = 1e-9;
  static constexpr double merge_tol = 1e-12;

  static C imag_unit() { return C(0.0, 1.0); }
  static C conj(C c) { return std::conj(c); }
  static R re(C c) { return c.real(); }
  static R im(C c) { return c.imag(); }
  static C from_real(R x) { return C(x, 0.0); }
  static double approx_abs(C c) { return std::abs(c); }

  static bool r_eq(R a, R b) {
    double s = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= component_eps * s;
  }
  static bool r_less(R a, R b) { return !r_eq(a, b) && a < b; }
  static bool coeff_is_zero(C c, double scale) { return std::abs(c) <= merge_tol * std::max(1.0, scale); }
  static bool valid_parameter(C z) { return std::abs(z.real()) > 1e-14; }
};

/// Exact complex scalar over the rationals.
struct QComplex {
  Rational re, im;
  QComplex() : re(0), im(0) {}
  QComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  explicit QComplex(long r) : re(r), im(0) {}

  QComplex operator+(const QComplex& o) const { return {re + o.re, im + o.im}; }
  QComplex operator-(const QComplex& o) const { return {re - o.re, im - o.im}; }
  QComplex operator-() const { return {-re, -im}; }
  QComplex operator*(const QComplex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  QComplex operator/(const QComplex& o) const {
    Rational d = o.re * o.re + o.im * o.im;
    if (d == 0) throw std::domain_error("QComplex: division by zero");
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  QComplex& operator+=(const QComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  QComplex& operator*=(const QComplex& o) { return *this = *this * o; }
  bool operator==(const QComplex& o) const { return re == o.re && im == o.im; }
};

struct FieldFQ {
  using R = Rational;
  using C = QComplex;
  static constexpr bool exact = true;

  static C imag_unit() { return {Rational(0), Rational(1)}; }
  static C conj(const C& c) { return {c.re, -c.im}; }
  static R re(const C& c) { return c.re; }
  static R im(const C& c) { return c.im; }
  static C from_real(R x) { return {std::move(x), Rational(0)}; }
  static double approx_abs(const C& c) {
    double r = to_double(c.re), i = to_double(c.im);
    return std::sqrt(r * r + i * i);
  }

  static bool r_eq(const R& a, const R& b) { return a == b; }
  static bool r_less(const R& a, const R& b) { return a < b; }
  static bool coeff_is_zero(const C& c, double) { return c.re == 0 && c.im == 0; }
  static bool valid_parameter(const C& z) { return z.re != 0; }
};

template <class F>
struct Generator {
  typename F::C z;
  Vec<typename F::R> f;  ///< canonical ray direction, leading coordinate == 1
};

template <class F>
bool generator_eq(const Generator<F>& a, const Generator<F>& b) {
  if (a.f.size() != b.f.size()) return false;
  for (size_t k = 0; k < a.f.size(); ++k)
    if (!F::r_eq(a.f[k], b.f[k])) return false;
  return F::r_eq(F::re(a.z), F::re(b.z)) && F::r_eq(F::im(a.z), F::im(b.z));
}

/// Total order on generators: lexicographic on (f coordinates, Re z, Im z).
template <class F>
int generator_cmp(const Generator<F>& a, const Generator<F>& b) {
  for (size_t k = 0; k < a.f.size(); ++k) {
    if (F::r_less(a.f[k], b.f[k])) return -1;
    if (F::r_less(b.f[k], a.f[k])) return 1;
  }
  if (F::r_less(F::re(a.z), F::re(b.z))) return -1;
  if (F::r_less(F::re(b.z), F::re(a.z))) return 1;
  if (F::r_less(F::im(a.z), F::im(b.z))) return -1;
  if (F::r_less(F::im(b.z), F::im(a.z))) return 1;
  return 0;
}

template <class F>
int factor_seq_cmp(const std::vector<Generator<F>>& a, const std::vector<Generator<F>>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i) {
    int c = generator_cmp(a[i], b[i]);
    if (c != 0) return c;
  }
  return 0;
}

template <class F>
struct Monomial {
  typename F::C coeff;
  std::vector<Generator<F>> factors;  ///< empty = multiple of the identity
  int degree() const { return static_cast<int>(factors.size()); }
};

template <class F>
class Poly {
 public:
  using C = typename F::C;
  using R = typename F::R;

  explicit Poly(int dim) : dim_(dim) {}

  static Poly zero(int dim) { return Poly(dim); }

  static Poly identity(int dim) {
    Poly p(dim);
    p.terms_.push_back({F::from_real(R(1)), {}});
    return p;
  }

  static Poly scalar(int dim, C c) {
    Poly p(dim);
    p.terms_.push_back({c, {}});
    p.normalize();
    return p;
  }

  /// R(z, f) with the construction-time relations applied.
  static Poly resolvent(int dim, C z, const Vec<R>& f) {
    if (static_cast<int>(f.size()) != dim) throw std::invalid_argument("Poly: vector does not conform");
    if (!F::valid_parameter(z)) throw std::invalid_argument("Poly: spectral parameter on the imaginary axis");
    Poly p(dim);
    Monomial<F> m{F::from_real(R(1)), {}};
    append_canonical_factor(m, z, f);
    p.terms_.push_back(std::move(m));
    p.normalize();
    return p;
  }

  int dim() const { return dim_; }
  const std::vector<Monomial<F>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int max_degree() const {
    int d = 0;
    for (const auto& m : terms_) d = std::max(d, m.degree());
    return d;
  }

  Poly operator+(const Poly& o) const {
    check_dim(o);
    Poly r(dim_);
    r.terms_ = terms_;
    r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
    r.normalize();
    return r;
  }

  Poly operator-(const Poly& o) const { return *this + o.scaled(F::from_real(R(-1))); }

  Poly scaled(C c) const {
    Poly r(dim_);
    r.terms_ = terms_;
    for (auto& m : r.terms_) m.coeff *= c;
    r.normalize();
    return r;
  }

  Poly operator*(const Poly& o) const {
    check_dim(o);
    Poly r(dim_);
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) {
        Monomial<F> m{a.coeff * b.coeff, a.factors};
        m.factors.insert(m.factors.end(), b.factors.begin(), b.factors.end());
        r.terms_.push_back(std::move(m));
      }
    r.normalize();
    return r;
  }

  /// Involution: reverses factor order, conjugates coefficients,
  /// maps each generator z -> -conj(z).
  Poly adjoint() const {
    Poly r(dim_);
    for (const auto& m : terms_) {
      Monomial<F> a{F::conj(m.coeff), {}};
      for (auto it = m.factors.rbegin(); it != m.factors.rend(); ++it)
        a.factors.push_back({-F::conj(it->z), it->f});
      r.terms_.push_back(std::move(a));
    }
    r.normalize();
    return r;
  }

  /// Raw-monomial insertion; factors are canonicalized one by one.
  void add_raw_monomial(C coeff, const std::vector<std::pair<C, Vec<R>>>& raw_factors) {
    Monomial<F> m{coeff, {}};
    for (const auto& [z, f] : raw_factors) {
      if (!F::valid_parameter(z)) throw std::invalid_argument("Poly: spectral parameter on the imaginary axis");
      append_canonical_factor(m, z, f);
    }
    terms_.push_back(std::move(m));
    normalize();
  }

  /// Internal-use insertion of already-canonical factors (no re-scaling).
  void add_canonical_monomial(Monomial<F> m) {
    terms_.push_back(std::move(m));
    normalize();
  }

  double coeff_scale() const {
    double s = 1.0;
    for (const auto& m : terms_) s = std::max(s, F::approx_abs(m.coeff));
    return s;
  }

  /// Canonicalize a raw (z, f) into m: zero directions contract to a
  /// scalar via R(z,0) = -i/z, otherwise the ray is scaled so a pivot
  /// coordinate is exactly 1 and the scale factor nu joins the
  /// coefficient.  Exact mode pivots on the first nonzero coordinate;
  /// float mode pivots on the first near-maximal coordinate, which keeps
  /// direction entries and coefficients at the working scale.
  static void append_canonical_factor(Monomial<F>& m, C z, Vec<R> f) {
    int lead = -1;
    if constexpr (F::exact) {
      for (size_t k = 0; k < f.size(); ++k)
        if (f[k] != R(0)) {
          lead = static_cast<int>(k);
          break;
        }
    } else {
      double mx = 0.0;
      for (double x : f) mx = std::max(mx, std::abs(x));
      if (mx > 1e-14) {
        for (size_t k = 0; k < f.size(); ++k)
          if (std::abs(f[k]) >= (1.0 - 1e-6) * mx) {
            lead = static_cast<int>(k);
            break;
          }
      }
    }
    if (lead < 0) {
      // R(z, 0) = -i/z * 1
      m.coeff *= -F::imag_unit() / z;
      return;
    }
    R nu = R(1) / f[lead];
    for (auto& x : f) x = x * nu;
    f[lead] = R(1);
    m.coeff *= F::from_real(nu);
    m.factors.push_back({F::from_real(nu) * z, std::move(f)});
  }

  void normalize() {
    std::stable_sort(terms_.begin(), terms_.end(), [](const Monomial<F>& a, const Monomial<F>& b) {
      return factor_seq_cmp(a.factors, b.factors) < 0;
    });
    // Merge tolerance is taken relative to the pre-merge maximum, so a
    // cancellation between large coefficients prunes its own roundoff.
    double scale = 1.0;
    for (const auto& m : terms_) scale = std::max(scale, F::approx_abs(m.coeff));
    std::vector<Monomial<F>> merged;
    for (auto& m : terms_) {
      if (!merged.empty() && factor_seq_cmp(merged.back().factors, m.factors) == 0)
        merged.back().coeff += m.coeff;
      else
        merged.push_back(std::move(m));
    }
    terms_.clear();
    for (auto& m : merged)
      if (!F::coeff_is_zero(m.coeff, scale)) terms_.push_back(std::move(m));
  }

 private:
  void check_dim(const Poly& o) const {
    if (o.dim_ != dim_) throw std::invalid_argument("Poly: dimension mismatch");
  }

  int dim_;
  std::vector<Monomial<F>> terms_;
};

using PolyD = Poly<FieldF64>;
using PolyQ = Poly<FieldFQ>;

/// alpha(R(z,f)) = R(z, Tf) for symplectic T; *-automorphism.
template <class F>
Poly<F> apply_symplectic_automorphism(const SymplecticSpace<typename F::R>& space, const Poly<F>& p,
                                      const Mat<typename F::R>& t) {
  using R = typename F::R;
  if (t.rows != space.dim() || t.cols != space.dim())
    throw std::invalid_argument("apply_symplectic_automorphism: map does not conform");
  // T must preserve the form: T^t F T = F.
  Mat<R> lhs = matmul(transpose(t), matmul(space.form(), t));
  const R scale = max_abs(space.form());
  for (int i = 0; i < space.dim(); ++i)
    for (int j = 0; j < space.dim(); ++j)
      if (!ScalarOps<R>::is_zero(lhs(i, j) - space.form()(i, j), scale))
        throw std::invalid_argument("apply_symplectic_automorphism: map is not symplectic");
  Poly<F> r(p.dim());
  for (const auto& m : p.terms()) {
    Monomial<F> out{m.coeff, {}};
    for (const auto& g : m.factors) Poly<F>::append_canonical_factor(out, g.z, matvec(t, g.f));
    r.add_canonical_monomial(std::move(out));
  }
  return r;
}

/// beta_h(R(z,f)) = R(z + i h(f), f) for a real linear functional h.
template <class F>
Poly<F> apply_shift_automorphism(const Poly<F>& p, const Vec<typename F::R>& h) {
  if (static_cast<int>(h.size()) != p.dim())
    throw std::invalid_argument("apply_shift_automorphism: covector does not conform");
  Poly<F> r(p.dim());
  for (const auto& m : p.terms()) {
    Monomial<F> out{m.coeff, {}};
    for (const auto& g : m.factors) {
      typename F::C znew = g.z + F::imag_unit() * F::from_real(dot(h, g.f));
      out.factors.push_back({znew, g.f});
    }
    r.add_canonical_monomial(std::move(out));
  }
  return r;
}

struct VonNeumannExpansion {
  PolyD series;
  double tail_bound;
};

/// Partial von Neumann series of R(lambda, f) around lambda0 with the
/// closed-form geometric tail bound; valid on |lambda0 - lambda| < |lambda0|.
inline VonNeumannExpansion von_neumann_expand(int dim, double lambda, const Vec<double>& f,
                                              double lambda0, int order) {
  if (lambda == 0.0 || lambda0 == 0.0)
    throw std::invalid_argument("von_neumann_expand: parameters must be real nonzero");
  double rho = std::abs(lambda0 - lambda) / std::abs(lambda0);
  if (rho >= 1.0)
    throw std::invalid_argument("von_neumann_expand: |lambda0 - lambda| >= |lambda0| (outside the disk)");
  if (order < 0) throw std::invalid_argument("von_neumann_expand: order must be >= 0");
  PolyD base = PolyD::resolvent(dim, {lambda0, 0.0}, f);
  PolyD series = PolyD::zero(dim);
  PolyD power = base;
  std::complex<double> c(1.0, 0.0);
  const std::complex<double> step = std::complex<double>(0.0, 1.0) * (lambda0 - lambda);
  for (int n = 0; n <= order; ++n) {
    series = series + power.scaled(c);
    c *= step;
    power = power * base;
  }
  double tail = std::pow(rho, order + 1) / (std::abs(lambda0) * (1.0 - rho));
  return {std::move(series), tail};
}

}  // namespace ralg

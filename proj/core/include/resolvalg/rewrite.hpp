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

// Directed rewriting for resolvent polynomials.
//
// Phase 1 applies a terminating contraction system:
//   - resolvent-equation contraction on adjacent same-direction factors,
//       R(z,f)R(w,f) -> (R(z,f) - R(w,f)) / (i(w-z)),   z != w
//   - sandwich contraction on the commutation pattern,
//       R(z,f)R(w,g)^2 R(z,f) -> (R(z,f)R(w,g) - R(w,g)R(z,f)) / (i sigma(f,g))
//   - order-restoring swaps of sigma-commuting adjacent factors.
// Every step replaces a monomial by monomials that are smaller under the
// multiset degree order (or reduce inversions), so phase 1 terminates.
//
// Phase 2 applies additivity moves: an adjacent pair may be expanded by
// the sum relation onto a direction already present in the polynomial,
//   R(z1,d1)R(z2,d2) = ab R(az1+bz2, e)[R(az1,ad1) + R(bz2,bd2)
//                       + i sigma(ad1,bd2) R(az1,ad1)^2 R(bz2,bd2)],
// with e = a d1 + b d2, and the move is kept only if the renormalized
// polynomial is strictly smaller.  Sound by construction, terminating by
// the strict decrease; no unique-normal-form claim is made.

#include <functional>
#include <optional>
#include <vector>

#include "resolvalg/poly.hpp"

namespace ralg {

template <class F>
struct SimplifyOptions {
  int budget = 20000;   ///< total rewrite steps before flagging
  int degree_cap = 12;  ///< monomial degree bound during expansion
  bool additivity_moves = true;
  std::function<void(const Poly<F>&)> trace;  ///< called after each applied step
};

template <class F>
struct SimplifyResult {
  Poly<F> poly;
  bool fully_normalized = true;  ///< false when the budget or degree cap was hit
  int steps = 0;
};

namespace detail {

template <class F>
bool direction_eq(const Vec<typename F::R>& a, const Vec<typename F::R>& b) {
  for (size_t k = 0; k < a.size(); ++k)
    if (!F::r_eq(a[k], b[k])) return false;
  return true;
}

template <class F>
bool param_eq(const typename F::C& a, const typename F::C& b) {
  return F::r_eq(F::re(a), F::re(b)) && F::r_eq(F::im(a), F::im(b));
}

template <class F>
bool sigma_nonzero(const SymplecticSpace<typename F::R>& space, const Vec<typename F::R>& a,
                   const Vec<typename F::R>& b, typename F::R* out) {
  using R = typename F::R;
  R s = sigma(space, a, b);
  *out = s;
  return !ScalarOps<R>::is_zero(s, max_abs(space.form()));
}

/// One phase-1 rewrite of the given monomial, if any applies.  Returns
/// the replacement monomials.
template <class F>
std::optional<std::vector<Monomial<F>>> phase1_step(const SymplecticSpace<typename F::R>& space,
                                                    const Monomial<F>& m) {
  using C = typename F::C;
  using R = typename F::R;
  const auto& fs = m.factors;
  const int n = m.degree();
  for (int i = 0; i + 1 < n; ++i) {
    const Generator<F>& a = fs[i];
    const Generator<F>& b = fs[i + 1];
    if (direction_eq<F>(a.f, b.f)) {
      if (param_eq<F>(a.z, b.z)) continue;  // a genuine power; nothing to do
      // R(z,f)R(w,f) = (R(z,f) - R(w,f)) / (i(w-z))
      C inv = F::from_real(R(1)) / (F::imag_unit() * (b.z - a.z));
      Monomial<F> keep_a{m.coeff * inv, {}}, keep_b{-(m.coeff * inv), {}};
      for (int k = 0; k < n; ++k) {
        if (k == i + 1) continue;
        keep_a.factors.push_back(fs[k]);
        keep_b.factors.push_back(k == i ? b : fs[k]);
      }
      return std::vector<Monomial<F>>{std::move(keep_a), std::move(keep_b)};
    }
    R s;
    if (i + 3 < n && generator_eq<F>(fs[i], fs[i + 3]) && generator_eq<F>(fs[i + 1], fs[i + 2]) &&
        sigma_nonzero<F>(space, a.f, b.f, &s)) {
      // R(z,f)R(w,g)^2R(z,f) = [R(z,f), R(w,g)] / (i sigma(f,g))
      C inv = F::from_real(R(1)) / (F::imag_unit() * F::from_real(s));
      Monomial<F> fg{m.coeff * inv, {}}, gf{-(m.coeff * inv), {}};
      for (int k = 0; k < i; ++k) {
        fg.factors.push_back(fs[k]);
        gf.factors.push_back(fs[k]);
      }
      fg.factors.push_back(fs[i]);
      fg.factors.push_back(fs[i + 1]);
      gf.factors.push_back(fs[i + 1]);
      gf.factors.push_back(fs[i]);
      for (int k = i + 4; k < n; ++k) {
        fg.factors.push_back(fs[k]);
        gf.factors.push_back(fs[k]);
      }
      return std::vector<Monomial<F>>{std::move(fg), std::move(gf)};
    }
    if (!sigma_nonzero<F>(space, a.f, b.f, &s) && generator_cmp(a, b) > 0) {
      Monomial<F> swapped = m;
      std::swap(swapped.factors[i], swapped.factors[i + 1]);
      return std::vector<Monomial<F>>{std::move(swapped)};
    }
  }
  return std::nullopt;
}

template <class F>
long long poly_measure(const Poly<F>& p) {
  long long deg_sum = 0;
  for (const auto& m : p.terms()) deg_sum += m.degree();
  // Lexicographic (degree sum, term count) packed into one integer;
  // term counts stay far below the packing radix in practice.
  return deg_sum * 1000000 + static_cast<long long>(p.terms().size());
}

template <class F>
bool run_phase1(const SymplecticSpace<typename F::R>& space, Poly<F>& p, int* steps, int budget,
                const std::function<void(const Poly<F>&)>& trace) {
  for (;;) {
    bool changed = false;
    const auto& terms = p.terms();
    for (size_t ti = 0; ti < terms.size(); ++ti) {
      auto rewritten = phase1_step<F>(space, terms[ti]);
      if (!rewritten) continue;
      if (*steps >= budget) return false;
      ++*steps;
      Poly<F> next(p.dim());
      std::vector<Monomial<F>> keep;
      for (size_t tj = 0; tj < terms.size(); ++tj)
        if (tj != ti) keep.push_back(terms[tj]);
      keep.insert(keep.end(), rewritten->begin(), rewritten->end());
      for (auto& mm : keep) next.add_canonical_monomial(std::move(mm));
      p = std::move(next);
      if (trace) trace(p);
      changed = true;
      break;
    }
    if (!changed) return true;
  }
}

/// Directions (canonical rays) appearing in the polynomial, deduplicated.
template <class F>
std::vector<Vec<typename F::R>> poly_directions(const Poly<F>& p) {
  std::vector<Vec<typename F::R>> dirs;
  for (const auto& m : p.terms())
    for (const auto& g : m.factors) {
      bool found = false;
      for (const auto& d : dirs)
        if (direction_eq<F>(d, g.f)) {
          found = true;
          break;
        }
      if (!found) dirs.push_back(g.f);
    }
  return dirs;
}

}  // namespace detail

template <class F>
SimplifyResult<F> simplify(const SymplecticSpace<typename F::R>& space, const Poly<F>& input,
                           const SimplifyOptions<F>& opt = {}) {
  using C = typename F::C;
  using R = typename F::R;
  SimplifyResult<F> res{input, true, 0};
  res.fully_normalized = detail::run_phase1<F>(space, res.poly, &res.steps, opt.budget, opt.trace);
  if (!res.fully_normalized || !opt.additivity_moves) return res;

  bool improved = true;
  while (improved && !res.poly.is_zero()) {
    improved = false;
    const long long current = detail::poly_measure(res.poly);
    auto dirs = detail::poly_directions(res.poly);
    const auto& terms = res.poly.terms();
    for (size_t ti = 0; ti < terms.size() && !improved; ++ti) {
      const Monomial<F>& m = terms[ti];
      for (int i = 0; i + 1 < m.degree() && !improved; ++i) {
        const Generator<F>& g1 = m.factors[i];
        const Generator<F>& g2 = m.factors[i + 1];
        if (detail::direction_eq<F>(g1.f, g2.f)) continue;
        for (const auto& e : dirs) {
          if (detail::direction_eq<F>(e, g1.f) || detail::direction_eq<F>(e, g2.f)) continue;
          if (res.steps >= opt.budget) {
            res.fully_normalized = false;
            return res;
          }
          ++res.steps;
          // Solve e = a*d1 + b*d2.
          Mat<R> sys = from_columns<R>({g1.f, g2.f}, res.poly.dim());
          Vec<R> ab;
          try {
            ab = solve(sys, e);
          } catch (const std::runtime_error&) {
            continue;  // e outside span{d1, d2}
          }
          const R a = ab[0], b = ab[1];
          const R scale = R(1);
          if (ScalarOps<R>::is_zero(a, scale) || ScalarOps<R>::is_zero(b, scale)) continue;
          C za = F::from_real(a) * g1.z;
          C zb = F::from_real(b) * g2.z;
          C zs = za + zb;
          if (!F::valid_parameter(zs)) continue;
          if (m.degree() + 2 > opt.degree_cap) continue;
          Vec<R> fa = g1.f, fb = g2.f;
          for (auto& x : fa) x = x * a;
          for (auto& x : fb) x = x * b;
          R s = sigma(space, fa, fb);
          C pref = m.coeff * F::from_real(a) * F::from_real(b);

          auto make = [&](C coeff, const std::vector<std::pair<C, Vec<R>>>& mid) {
            Monomial<F> out{coeff, {}};
            for (int k = 0; k < i; ++k) out.factors.push_back(m.factors[k]);
            for (const auto& [z, f] : mid) Poly<F>::append_canonical_factor(out, z, f);
            for (int k = i + 2; k < m.degree(); ++k) out.factors.push_back(m.factors[k]);
            return out;
          };
          std::vector<Monomial<F>> repl;
          repl.push_back(make(pref, {{zs, e}, {za, fa}}));
          repl.push_back(make(pref, {{zs, e}, {zb, fb}}));
          repl.push_back(make(pref * F::imag_unit() * F::from_real(s),
                              {{zs, e}, {za, fa}, {za, fa}, {zb, fb}}));

          Poly<F> candidate(res.poly.dim());
          for (size_t tj = 0; tj < terms.size(); ++tj)
            if (tj != ti) candidate.add_canonical_monomial(terms[tj]);
          for (auto& mm : repl) candidate.add_canonical_monomial(std::move(mm));
          int cand_steps = res.steps;
          bool ok = detail::run_phase1<F>(space, candidate, &cand_steps, opt.budget, nullptr);
          if (!ok) {
            res.steps = cand_steps;
            res.fully_normalized = false;
            return res;
          }
          if (detail::poly_measure(candidate) < current) {
            res.steps = cand_steps;
            res.poly = std::move(candidate);
            if (opt.trace) opt.trace(res.poly);
            improved = true;
            break;
          }
        }
      }
    }
  }
  return res;
}

}  // namespace ralg

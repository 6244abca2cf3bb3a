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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "resolvalg/identity_check.hpp"
#include "resolvalg/rewrite.hpp"
#include "resolvalg/serialize.hpp"

using namespace ralg;

namespace {

std::mt19937_64 rng(777);

double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double nonzero(double lo, double hi) {
  double x;
  do {
    x = uniform(lo, hi);
  } while (std::abs(x) < 0.2);
  return x;
}

Vec<double> random_vec(int dim) {
  Vec<double> f(dim);
  for (auto& x : f) x = uniform(-2.0, 2.0);
  return f;
}

bool simplifies_to_zero(const SymplecticSpace<double>& s, const PolyD& p) {
  return simplify<FieldF64>(s, p).poly.is_zero();
}

}  // namespace

TEST_CASE("generator validity") {
  CHECK_THROWS_AS(PolyD::resolvent(2, {0.0, 1.0}, Vec<double>{1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(PolyD::resolvent(2, {1.0, 0.0}, Vec<double>{1.0}), std::invalid_argument);
}

TEST_CASE("identity relation at construction") {
  PolyD p = PolyD::resolvent(2, {2.0, 0.0}, Vec<double>{0.0, 0.0});
  REQUIRE(p.terms().size() == 1);
  CHECK(p.terms()[0].degree() == 0);
  CHECK(p.terms()[0].coeff.real() == doctest::Approx(0.0));
  CHECK(p.terms()[0].coeff.imag() == doctest::Approx(-0.5));  // -i/2
}

TEST_CASE("homogeneity relation at construction") {
  // 2 R(2*3, 2f) = R(3, f)
  Vec<double> f{0.5, -1.0};
  Vec<double> twof{1.0, -2.0};
  PolyD lhs = PolyD::resolvent(2, {6.0, 0.0}, twof).scaled({2.0, 0.0});
  PolyD rhs = PolyD::resolvent(2, {3.0, 0.0}, f);
  CHECK((lhs - rhs).is_zero());
}

TEST_CASE("adjoint maps R(1,f) to R(-1,f)") {
  Vec<double> f{1.0, 0.0};
  PolyD a = PolyD::resolvent(2, {1.0, 0.0}, f).adjoint();
  PolyD b = PolyD::resolvent(2, {-1.0, 0.0}, f);
  CHECK((a - b).is_zero());
}

TEST_CASE("adjoint is an anti-homomorphism") {
  Vec<double> f{1.0, 0.0}, g{0.0, 1.0};
  PolyD rf = PolyD::resolvent(2, {1.0, 0.0}, f);
  PolyD rg = PolyD::resolvent(2, {2.0, 0.0}, g);
  CHECK(((rf * rg).adjoint() - rg.adjoint() * rf.adjoint()).is_zero());
}

TEST_CASE("adjoint of a complex parameter") {
  // R(1+2i, f)* = R(-conj(1+2i), f) = R(-1+2i, f)
  Vec<double> f{1.0, 1.0};
  PolyD a = PolyD::resolvent(2, {1.0, 2.0}, f).adjoint();
  PolyD b = PolyD::resolvent(2, {-1.0, 2.0}, f);
  CHECK((a - b).is_zero());
}

TEST_CASE("adjoint is involutive on random polynomials") {
  auto s = SymplecticSpace<double>::standard(2);
  for (int trial = 0; trial < 50; ++trial) {
    PolyD p = PolyD::resolvent(4, {nonzero(-3, 3), uniform(-1, 1)}, random_vec(4)) *
              PolyD::resolvent(4, {nonzero(-3, 3), uniform(-1, 1)}, random_vec(4));
    p = p.scaled({uniform(-1, 1), uniform(-1, 1)});
    CHECK((p.adjoint().adjoint() - p).is_zero());
  }
}

TEST_CASE("simplify: resolvent equation instance") {
  auto s = SymplecticSpace<double>::standard(1);
  Vec<double> f{1.0, 0.5};
  double lam = 1.0, mu = 2.0;
  PolyD rl = PolyD::resolvent(2, {lam, 0.0}, f);
  PolyD rm = PolyD::resolvent(2, {mu, 0.0}, f);
  PolyD e4 = rl - rm - (rl * rm).scaled({0.0, mu - lam});
  CHECK(simplifies_to_zero(s, e4));
}

TEST_CASE("simplify: all defining relations on random instances") {
  auto s = SymplecticSpace<double>::standard(2);
  const int kTrials = 60;
  for (int trial = 0; trial < kTrials; ++trial) {
    Vec<double> f = random_vec(4), g = random_vec(4);
    double lam = nonzero(-3, 3), mu = nonzero(-3, 3), nu = nonzero(-2, 2);
    double sg = sigma(s, f, g);
    PolyD rf = PolyD::resolvent(4, {lam, 0.0}, f);
    PolyD rg = PolyD::resolvent(4, {mu, 0.0}, g);

    // (1) R(lam, 0) = -i/lam
    PolyD e1 = PolyD::resolvent(4, {lam, 0.0}, Vec<double>(4, 0.0)) -
               PolyD::scalar(4, Complex(0.0, -1.0 / lam));
    CHECK(e1.is_zero());

    // (2) R(lam,f)* = R(-lam,f)
    CHECK((rf.adjoint() - PolyD::resolvent(4, {-lam, 0.0}, f)).is_zero());

    // (3) nu R(nu lam, nu f) = R(lam, f)
    Vec<double> nf = f;
    for (auto& x : nf) x *= nu;
    CHECK((PolyD::resolvent(4, {nu * lam, 0.0}, nf).scaled({nu, 0.0}) - rf).is_zero());

    // (4) R(lam,f) - R(mu,f) = i(mu-lam) R(lam,f) R(mu,f)
    PolyD rmf = PolyD::resolvent(4, {mu, 0.0}, f);
    CHECK(simplifies_to_zero(s, rf - rmf - (rf * rmf).scaled({0.0, mu - lam})));

    // (5) [R(lam,f), R(mu,g)] = i sigma(f,g) R(lam,f) R(mu,g)^2 R(lam,f)
    CHECK(simplifies_to_zero(s, rf * rg - rg * rf - (rf * rg * rg * rf).scaled({0.0, sg})));

    // (6) sum relation, lam + mu != 0
    if (std::abs(lam + mu) > 0.25) {
      Vec<double> fg(4);
      for (int k = 0; k < 4; ++k) fg[k] = f[k] + g[k];
      PolyD rh = PolyD::resolvent(4, {lam + mu, 0.0}, fg);
      CHECK(simplifies_to_zero(s, rf * rg - rh * (rf + rg + (rf * rf * rg).scaled({0.0, sg}))));
    }

    // (7) R - R* = -2 i lam R R*
    CHECK(simplifies_to_zero(s, rf - rf.adjoint() + (rf * rf.adjoint()).scaled({0.0, 2.0 * lam})));
  }
}

TEST_CASE("simplify in exact rational mode") {
  auto s = SymplecticSpace<Rational>::standard(2);
  Vec<Rational> f{Rational(1), Rational(0), Rational(2), Rational(0)};
  Vec<Rational> g{Rational(0), Rational(1), Rational(0), Rational(-1)};
  QComplex lam{Rational(1), Rational(0)}, mu{Rational(3, 2), Rational(0)};
  PolyQ rf = PolyQ::resolvent(4, lam, f);
  PolyQ rg = PolyQ::resolvent(4, mu, g);
  Rational sg = sigma(s, f, g);
  PolyQ e5 = rf * rg - rg * rf -
             (rf * rg * rg * rf).scaled(QComplex{Rational(0), sg});
  auto res = simplify<FieldFQ>(s, e5);
  CHECK(res.poly.is_zero());
  CHECK(res.fully_normalized);

  // Additivity relation, exact zero through the phase-2 moves.
  Vec<Rational> fg(4);
  for (int k = 0; k < 4; ++k) fg[k] = f[k] + g[k];
  PolyQ rh = PolyQ::resolvent(4, lam + mu, fg);
  PolyQ e6 =
      rf * rg - rh * (rf + rg + (rf * rf * rg).scaled(QComplex{Rational(0), sg}));
  auto res6 = simplify<FieldFQ>(s, e6);
  CHECK(res6.poly.is_zero());

  // Exact-rational star-difference combination.
  PolyQ e7 = rf - rf.adjoint() +
             (rf * rf.adjoint()).scaled(QComplex{Rational(0), Rational(2)});
  CHECK(simplify<FieldFQ>(s, e7).poly.is_zero());
}

TEST_CASE("budget exhaustion is flagged, not fatal") {
  auto s = SymplecticSpace<double>::standard(1);
  Vec<double> f{1.0, 0.0};
  PolyD rf = PolyD::resolvent(2, {1.0, 0.0}, f);
  PolyD rm = PolyD::resolvent(2, {2.0, 0.0}, f);
  SimplifyOptions<FieldF64> opt;
  opt.budget = 0;
  auto res = simplify<FieldF64>(s, rf * rm, opt);
  CHECK_FALSE(res.fully_normalized);
  CHECK_FALSE(res.poly.is_zero());
}

TEST_CASE("shift automorphism basics") {
  Vec<double> f{1.0, 2.0};
  PolyD rf = PolyD::resolvent(2, {1.5, 0.0}, f);
  Vec<double> h0{0.0, 0.0};
  CHECK((apply_shift_automorphism(rf, h0) - rf).is_zero());
  Vec<double> h{0.3, -0.7}, hneg{-0.3, 0.7};
  CHECK((apply_shift_automorphism(apply_shift_automorphism(rf, h), hneg) - rf).is_zero());
}

TEST_CASE("shift automorphisms compose additively") {
  for (int trial = 0; trial < 50; ++trial) {
    PolyD p = PolyD::resolvent(4, {nonzero(-2, 2), 0.0}, random_vec(4)) *
              PolyD::resolvent(4, {nonzero(-2, 2), 0.0}, random_vec(4));
    Vec<double> h = random_vec(4), k = random_vec(4), hk(4);
    for (int i = 0; i < 4; ++i) hk[i] = h[i] + k[i];
    PolyD lhs = apply_shift_automorphism(apply_shift_automorphism(p, k), h);
    PolyD rhs = apply_shift_automorphism(p, hk);
    CHECK((lhs - rhs).is_zero());
  }
}

TEST_CASE("symplectic automorphism checks the map") {
  auto s = SymplecticSpace<double>::standard(1);
  PolyD rf = PolyD::resolvent(2, {1.0, 0.0}, Vec<double>{1.0, 0.0});
  CHECK((apply_symplectic_automorphism<FieldF64>(s, rf, Mat<double>::identity(2)) - rf).is_zero());
  Mat<double> bad = Mat<double>::identity(2);
  bad(0, 0) = 2.0;
  bad(1, 1) = 2.0;  // scales the form by 4
  CHECK_THROWS_AS(apply_symplectic_automorphism<FieldF64>(s, rf, bad), std::invalid_argument);
}

TEST_CASE("symplectic rotation preserves the commutation relation") {
  auto s = SymplecticSpace<double>::standard(1);
  Vec<double> f{1.0, 0.0}, g{0.0, 1.0};
  double sg = sigma(s, f, g);
  PolyD rf = PolyD::resolvent(2, {1.0, 0.0}, f);
  PolyD rg = PolyD::resolvent(2, {2.0, 0.0}, g);
  PolyD lhs = rf * rg - rg * rf;
  PolyD rhs = (rf * rg * rg * rf).scaled({0.0, sg});
  double th = 0.7;
  Mat<double> rot(2, 2);
  rot(0, 0) = std::cos(th);
  rot(0, 1) = -std::sin(th);
  rot(1, 0) = std::sin(th);
  rot(1, 1) = std::cos(th);
  PolyD alhs = apply_symplectic_automorphism<FieldF64>(s, lhs, rot);
  PolyD arhs = apply_symplectic_automorphism<FieldF64>(s, rhs, rot);
  CHECK(simplifies_to_zero(s, alhs - arhs));
}

TEST_CASE("von Neumann expansion edge cases") {
  Vec<double> f{1.0, 0.0};
  auto exact = von_neumann_expand(2, 1.0, f, 1.0, 5);
  CHECK(exact.tail_bound == 0.0);
  CHECK((exact.series - PolyD::resolvent(2, {1.0, 0.0}, f)).is_zero());

  auto expanded = von_neumann_expand(2, 1.5, f, 1.0, 20);
  CHECK(expanded.tail_bound == doctest::Approx(std::pow(0.5, 20)).epsilon(1e-12));
  CHECK(expanded.series.max_degree() == 21);

  CHECK_THROWS_AS(von_neumann_expand(2, 2.5, f, 1.0, 10), std::invalid_argument);
}

TEST_CASE("check_identity: proved, confirmed or refuted") {
  auto s = SymplecticSpace<double>::standard(1);
  Vec<double> f{1.0, 0.0}, g{0.0, 1.0};
  PolyD rf = PolyD::resolvent(2, {1.0, 0.0}, f);
  PolyD rg = PolyD::resolvent(2, {1.0, 0.0}, g);

  // The star-difference identity R - R* = -2 i lam R R*.
  PolyD lhs7 = rf - rf.adjoint();
  PolyD rhs7 = (rf * rf.adjoint()).scaled({0.0, -2.0});
  CHECK(check_identity(s, lhs7, rhs7).verdict == Verdict::SymbolicallyProved);

  // R(lam,f) R(mu,g)^2 R(lam,f) = R(mu,g) R(lam,f)^2 R(mu,g).
  PolyD rg2 = PolyD::resolvent(2, {2.0, 0.0}, g);
  auto both = check_identity(s, rf * rg2 * rg2 * rf, rg2 * rf * rf * rg2);
  CHECK((both.verdict == Verdict::SymbolicallyProved ||
         both.verdict == Verdict::NumericallyConfirmed));

  // Deliberately false: R(1,f) R(1,g) = R(1,g) R(1,f) with sigma(f,g) = 1.
  IdentityCheckOptions opt;
  opt.cutoff_lo = 24;
  opt.cutoff_hi = 48;
  auto refuted = check_identity(s, rf * rg, rg * rf, opt);
  CHECK(refuted.verdict == Verdict::Refuted);
  CHECK(refuted.residual_hi > 1e-3);
}

TEST_CASE("automorphisms preserve provability") {
  auto s = SymplecticSpace<double>::standard(1);
  for (int trial = 0; trial < 10; ++trial) {
    Vec<double> f = random_vec(2), g = random_vec(2);
    double lam = nonzero(-2, 2), mu = nonzero(-2, 2);
    double sg = sigma(s, f, g);
    PolyD rf = PolyD::resolvent(2, {lam, 0.0}, f);
    PolyD rg = PolyD::resolvent(2, {mu, 0.0}, g);
    PolyD lhs = rf * rg - rg * rf;
    PolyD rhs = (rf * rg * rg * rf).scaled({0.0, sg});
    REQUIRE(simplifies_to_zero(s, lhs - rhs));
    double th = uniform(-2, 2);
    Mat<double> rot(2, 2);
    rot(0, 0) = std::cos(th);
    rot(0, 1) = -std::sin(th);
    rot(1, 0) = std::sin(th);
    rot(1, 1) = std::cos(th);
    PolyD tl = apply_symplectic_automorphism<FieldF64>(s, lhs, rot);
    PolyD tr = apply_symplectic_automorphism<FieldF64>(s, rhs, rot);
    CHECK(simplifies_to_zero(s, tl - tr));
    Vec<double> h = random_vec(2);
    CHECK(simplifies_to_zero(s, apply_shift_automorphism(lhs, h) - apply_shift_automorphism(rhs, h)));
  }
}

TEST_CASE("polynomial JSON round trip") {
  PolyD p = PolyD::resolvent(4, {1.0, 0.5}, Vec<double>{1.0, -2.0, 0.0, 3.0}) *
                PolyD::resolvent(4, {-2.0, 0.0}, Vec<double>{0.0, 1.0, 1.0, 0.0}) +
            PolyD::identity(4).scaled({0.25, -1.0});
  PolyD back = poly_from_json(poly_to_json(p));
  CHECK((p - back).is_zero());
  CHECK(poly_to_json(p).at("terms").size() == p.terms().size());
}

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

#include "resolvalg/symplectic.hpp"

using namespace ralg;

namespace {

std::mt19937_64 rng(12345);

Mat<Rational> random_rational_form(int dim) {
  std::uniform_int_distribution<int> entry(-5, 5);
  for (;;) {
    Mat<Rational> f(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) {
        Rational v(entry(rng));
        f(i, j) = v;
        f(j, i) = -v;
      }
    if (rank(f) == dim) return f;
  }
}

Mat<double> random_symplectic_conjugation(int dim) {
  // T^t J T for random invertible integer T stays antisymmetric and
  // nondegenerate.
  std::uniform_int_distribution<int> entry(-3, 3);
  auto j = SymplecticSpace<double>::standard(dim / 2).form();
  for (;;) {
    Mat<double> t(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) t(r, c) = entry(rng);
    if (rank(t) != dim) continue;
    return matmul(transpose(t), matmul(j, t));
  }
}

// Oracle shared by basis construction tests: evaluate sigma on all output
// pairs and compare with the canonical Gram matrix.
template <class T>
void check_canonical_gram(const SymplecticSpace<T>& space, const std::vector<Vec<T>>& flat,
                          double tol) {
  const int pairs = static_cast<int>(flat.size()) / 2;
  for (int i = 0; i < pairs; ++i)
    for (int j = 0; j < pairs; ++j) {
      double pq = to_double(sigma(space, flat[2 * i + 1], flat[2 * j]));
      double qq = to_double(sigma(space, flat[2 * i], flat[2 * j]));
      double pp = to_double(sigma(space, flat[2 * i + 1], flat[2 * j + 1]));
      CHECK(std::abs(pq - (i == j ? 1.0 : 0.0)) <= tol);
      CHECK(std::abs(qq) <= tol);
      CHECK(std::abs(pp) <= tol);
    }
}

}  // namespace

TEST_CASE("space construction validates the form") {
  Mat<double> notskew(2, 2);
  notskew(0, 1) = 1.0;
  notskew(1, 0) = 1.0;
  CHECK_THROWS_AS((SymplecticSpace<double>(notskew)), std::invalid_argument);
  Mat<double> singular(4, 4);
  singular(0, 1) = 1.0;
  singular(1, 0) = -1.0;  // q2,p2 block missing
  CHECK_THROWS_AS((SymplecticSpace<double>(singular)), std::invalid_argument);
}

TEST_CASE("sigma on the standard plane") {
  auto s = SymplecticSpace<double>::standard(1);
  Vec<double> f{1.0, 0.0}, g{0.0, 1.0};
  CHECK(sigma(s, f, g) == doctest::Approx(1.0));
  CHECK(sigma(s, f, f) == 0.0);
  CHECK_THROWS_AS(sigma(s, Vec<double>{1.0}, g), std::invalid_argument);
}

TEST_CASE("sigma antisymmetry on random pairs") {
  auto s = SymplecticSpace<Rational>::standard(2);
  std::uniform_int_distribution<int> entry(-9, 9);
  for (int trial = 0; trial < 100; ++trial) {
    Vec<Rational> f(4), g(4);
    for (int k = 0; k < 4; ++k) {
      f[k] = Rational(entry(rng));
      g[k] = Rational(entry(rng));
    }
    CHECK(sigma(s, f, g) == -sigma(s, g, f));  // exact
  }
}

TEST_CASE("symplectic basis of the standard plane") {
  auto s = SymplecticSpace<Rational>::standard(1);
  auto basis = symplectic_basis(s);
  REQUIRE(basis.size() == 2);
  // Up to the sign convention sigma(p, q) = +1 this is the coordinate pair.
  CHECK(sigma(s, basis[1], basis[0]) == Rational(1));
  CHECK(rank(from_columns(basis, 2)) == 2);
}

TEST_CASE("symplectic basis rejects odd dimension") {
  Mat<Rational> f(3, 3);
  f(0, 1) = 1;
  f(1, 0) = -1;
  f(0, 2) = 1;
  f(2, 0) = -1;
  f(1, 2) = 1;
  f(2, 1) = -1;
  // Odd antisymmetric forms are singular, so construction already rejects.
  CHECK_THROWS_AS((SymplecticSpace<Rational>(f)), std::invalid_argument);
}

TEST_CASE("symplectic basis of conjugated forms, float mode") {
  for (int trial = 0; trial < 20; ++trial) {
    SymplecticSpace<double> s(random_symplectic_conjugation(4));
    auto basis = symplectic_basis(s);
    REQUIRE(basis.size() == 4);
    check_canonical_gram(s, basis, 1e-10);
    CHECK(rank(from_columns(basis, 4)) == 4);
  }
}

TEST_CASE("symplectic basis exact in rational mode") {
  for (int dim : {2, 4, 6, 8}) {
    for (int trial = 0; trial < 5; ++trial) {
      SymplecticSpace<Rational> s(random_rational_form(dim));
      auto basis = symplectic_basis(s);
      REQUIRE(static_cast<int>(basis.size()) == dim);
      const int pairs = dim / 2;
      for (int i = 0; i < pairs; ++i)
        for (int j = 0; j < pairs; ++j) {
          CHECK(sigma(s, basis[2 * i + 1], basis[2 * j]) == Rational(i == j ? 1 : 0));
          CHECK(sigma(s, basis[2 * i], basis[2 * j]) == Rational(0));
          CHECK(sigma(s, basis[2 * i + 1], basis[2 * j + 1]) == Rational(0));
        }
      CHECK(rank(from_columns(basis, dim)) == dim);
    }
  }
}

TEST_CASE("minimal-index rule makes construction reproducible") {
  SymplecticSpace<Rational> s(random_rational_form(6));
  auto b1 = symplectic_basis(s);
  auto b2 = symplectic_basis(s);
  CHECK(b1 == b2);
}

TEST_CASE("complete_to_symplectic on a coordinate direction") {
  auto s = SymplecticSpace<double>::standard(2);
  Vec<double> q1{1.0, 0.0, 0.0, 0.0};
  auto ps = complete_to_symplectic(s, {q1});
  REQUIRE(ps.size() == 1);
  CHECK(sigma(s, ps[0], q1) == doctest::Approx(1.0));
}

TEST_CASE("complete_to_symplectic reproduces conjugates for a q-part") {
  SymplecticSpace<Rational> s(random_rational_form(6));
  auto basis = symplectic_basis(s);
  std::vector<Vec<Rational>> qs{basis[0], basis[2], basis[4]};
  auto ps = complete_to_symplectic(s, qs);
  REQUIRE(ps.size() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(sigma(s, ps[i], qs[j]) == Rational(i == j ? 1 : 0));
      CHECK(sigma(s, ps[i], ps[j]) == Rational(0));
    }
}

TEST_CASE("complete_to_symplectic rejects bad input") {
  auto s = SymplecticSpace<double>::standard(2);
  Vec<double> f{1.0, 0.0, 1.0, 0.0}, twof{2.0, 0.0, 2.0, 0.0};
  CHECK_THROWS_AS(complete_to_symplectic(s, {f, twof}), std::invalid_argument);
  Vec<double> q{1.0, 0.0, 0.0, 0.0}, p{0.0, 1.0, 0.0, 0.0};  // sigma(q,p) = 1 != 0
  CHECK_THROWS_AS(complete_to_symplectic(s, {q, p}), std::invalid_argument);
}

TEST_CASE("symplectic complement of a block") {
  auto s = SymplecticSpace<double>::standard(2);
  Mat<double> b(4, 2);
  b(0, 0) = 1.0;
  b(1, 1) = 1.0;  // span{e1, e2}
  Subspace<double> sub(s, b);
  auto comp = symplectic_complement(s, sub);
  CHECK(comp.dim() == 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(sigma(s, comp.basis_vector(i), sub.basis_vector(j))) <= 1e-12);
  CHECK(comp.contains(Vec<double>{0.0, 0.0, 1.0, 0.0}));
  CHECK(comp.contains(Vec<double>{0.0, 0.0, 0.0, 1.0}));
}

TEST_CASE("complement of a degenerate subspace is permitted") {
  // An isotropic line lies inside its own complement; no direct-sum
  // property is asserted in that case.
  auto s = SymplecticSpace<double>::standard(2);
  Mat<double> line(4, 1);
  line(0, 0) = 1.0;
  Subspace<double> iso(s, line);
  auto comp = symplectic_complement(s, iso);
  CHECK(comp.dim() == 3);
  CHECK(comp.contains(Vec<double>{1.0, 0.0, 0.0, 0.0}));
}

TEST_CASE("complement of the whole space is zero") {
  auto s = SymplecticSpace<double>::standard(2);
  Subspace<double> whole(s, Mat<double>::identity(4));
  CHECK(symplectic_complement(s, whole).dim() == 0);
}

TEST_CASE("complement of a random nondegenerate plane in dim 6") {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto s = SymplecticSpace<double>::standard(3);
  for (int trial = 0; trial < 25; ++trial) {
    Mat<double> b(6, 2);
    for (int i = 0; i < 6; ++i) {
      b(i, 0) = u(rng);
      b(i, 1) = u(rng);
    }
    Subspace<double> sub(s, b);
    if (std::abs(sigma(s, sub.basis_vector(0), sub.basis_vector(1))) < 1e-3) continue;  // keep nondegenerate
    auto comp = symplectic_complement(s, sub);
    CHECK(comp.dim() == 4);
    for (int i = 0; i < comp.dim(); ++i)
      for (int j = 0; j < sub.dim(); ++j)
        CHECK(std::abs(sigma(s, comp.basis_vector(i), sub.basis_vector(j))) <= 1e-10);

    // Direct-sum reconstruction: a random vector splits uniquely.
    Vec<double> v(6);
    for (auto& x : v) x = u(rng);
    Mat<double> all = hcat(sub.basis(), comp.basis());
    Vec<double> coef = solve(all, v);
    Vec<double> back = matvec(all, coef);
    for (int i = 0; i < 6; ++i) CHECK(std::abs(back[i] - v[i]) <= 1e-10);
  }
}

TEST_CASE("regularity decomposition: fully regular data") {
  auto s = SymplecticSpace<double>::standard(2);
  Subspace<double> xr(s, Mat<double>::identity(4));
  auto dec = regularity_decomposition(s, xr, Subspace<double>::zero(s));
  CHECK(dec.q.dim() == 0);
  CHECK(dec.reg.dim() == 4);
  CHECK(dec.sing.dim() == 0);
}

TEST_CASE("regularity decomposition: trivially regular line") {
  auto s = SymplecticSpace<Rational>::standard(2);
  auto basis = symplectic_basis(s);
  Mat<Rational> line = from_columns<Rational>({basis[0]}, 4);
  Subspace<Rational> xt(s, line), xr(s, line);
  auto dec = regularity_decomposition(s, xr, xt);
  CHECK(dec.q.dim() == 2);
  CHECK(dec.reg.dim() == 0);
  CHECK(dec.sing.dim() == 2);
  CHECK(dec.q.contains(basis[0]));
  CHECK(dec.sing.contains(basis[2]));
  CHECK(dec.sing.contains(basis[3]));
}

TEST_CASE("regularity decomposition rejects sigma(X_T, X_R) != 0") {
  auto s = SymplecticSpace<double>::standard(2);
  Mat<double> b(4, 2);
  b(0, 0) = 1.0;  // q-like
  b(1, 1) = 1.0;  // its conjugate: sigma != 0
  Subspace<double> xr(s, b);
  Mat<double> t(4, 1);
  t(0, 0) = 1.0;
  Subspace<double> xt(s, t);
  CHECK_THROWS_AS(regularity_decomposition(s, xr, xt), std::invalid_argument);
}

TEST_CASE("regularity decomposition property over random admissible data") {
  for (int trial = 0; trial < 40; ++trial) {
    int dim = 2 * (2 + static_cast<int>(rng() % 3));  // 4, 6, 8
    SymplecticSpace<Rational> s(random_rational_form(dim));
    auto basis = symplectic_basis(s);
    const int modes = dim / 2;
    // Disjoint mode sets: T contributes isotropic directions, R full pairs.
    std::vector<Vec<Rational>> t_vecs{basis[0]};
    std::vector<Vec<Rational>> r_vecs;
    for (int m = 1; m < modes; ++m) {
      switch (rng() % 3) {
        case 0:
          t_vecs.push_back(basis[2 * m]);
          break;
        case 1:
          r_vecs.push_back(basis[2 * m]);
          r_vecs.push_back(basis[2 * m + 1]);
          break;
        default:
          break;
      }
    }
    std::vector<Vec<Rational>> xr_vecs = t_vecs;
    xr_vecs.insert(xr_vecs.end(), r_vecs.begin(), r_vecs.end());
    Subspace<Rational> xt(s, from_columns(t_vecs, dim));
    Subspace<Rational> xr(s, from_columns(xr_vecs, dim));
    auto dec = regularity_decomposition(s, xr, xt);
    CHECK(dec.q.dim() + dec.reg.dim() + dec.sing.dim() == dim);
    CHECK(dec.q.dim() == 2 * static_cast<int>(t_vecs.size()));
    CHECK(dec.reg.dim() == static_cast<int>(r_vecs.size()));
    // Pairwise sigma-orthogonality is exact in rational mode.
    for (int i = 0; i < dec.q.dim(); ++i)
      for (int j = 0; j < dec.reg.dim(); ++j)
        CHECK(sigma(s, dec.q.basis_vector(i), dec.reg.basis_vector(j)) == Rational(0));
    for (int i = 0; i < dec.q.dim(); ++i)
      for (int j = 0; j < dec.sing.dim(); ++j)
        CHECK(sigma(s, dec.q.basis_vector(i), dec.sing.basis_vector(j)) == Rational(0));
    for (int i = 0; i < dec.reg.dim(); ++i)
      for (int j = 0; j < dec.sing.dim(); ++j)
        CHECK(sigma(s, dec.reg.basis_vector(i), dec.sing.basis_vector(j)) == Rational(0));
  }
}

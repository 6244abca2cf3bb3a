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

#include <Eigen/Eigenvalues>
#include <cstdio>
#include <random>

#include "resolvalg/fock.hpp"
#include "resolvalg/rewrite.hpp"

using namespace ralg;

namespace {

std::mt19937_64 rng(4242);

double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double op_norm(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

struct OneMode {
  SymplecticSpace<double> space = SymplecticSpace<double>::standard(1);
  std::vector<Vec<double>> basis = symplectic_basis(space);
};

}  // namespace

TEST_CASE("single-mode ladder matrices") {
  OneMode om;
  TruncatedRep rep(om.space, om.basis, 4);
  CHECK(rep.dim() == 4);
  // Q real symmetric tridiagonal with sqrt((k+1)/2) off-diagonals.
  CHECK(rep.mode_q()(0, 1).real() == doctest::Approx(std::sqrt(0.5)));
  CHECK(rep.mode_q()(1, 2).real() == doctest::Approx(1.0));
  CHECK(rep.mode_p()(1, 0).imag() == doctest::Approx(std::sqrt(0.5)));
  // Commutator defect confined to the (N-1, N-1) entry.
  Eigen::MatrixXcd comm = rep.mode_q() * rep.mode_p() - rep.mode_p() * rep.mode_q();
  Eigen::MatrixXcd defect = comm - Complex(0, 1) * Eigen::MatrixXcd::Identity(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != 3 || j != 3) CHECK(std::abs(defect(i, j)) <= 1e-14);
  CHECK(std::abs(defect(3, 3)) > 1.0);
}

TEST_CASE("vacuum is annihilated exactly") {
  OneMode om;
  TruncatedRep rep(om.space, om.basis, 16);
  // (Q + iP) Omega = 0 in the truncated matrices.
  Eigen::VectorXcd v =
      rep.mode_q().col(0) + Complex(0, 1) * rep.mode_p().col(0);
  CHECK(v.norm() == 0.0);
}

TEST_CASE("oscillator spectrum on the compression") {
  OneMode om;
  const int n = 12;
  TruncatedRep rep(om.space, om.basis, n);
  Eigen::MatrixXcd hosc = rep.mode_p() * rep.mode_p() + rep.mode_q() * rep.mode_q();
  // Edge defects live in the last level; compress to levels < N-1 first.
  Eigen::MatrixXcd block = hosc.topLeftCorner(n - 1, n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block);
  for (int k = 0; k + 1 < n; ++k)
    CHECK(es.eigenvalues()(k) == doctest::Approx(2 * k + 1).epsilon(1e-10));
}

TEST_CASE("two-mode tensor structure") {
  auto space = SymplecticSpace<double>::standard(2);
  auto basis = symplectic_basis(space);
  TruncatedRep rep(space, basis, 3);
  CHECK(rep.dim() == 9);
  // Fields on different modes commute exactly.
  Eigen::MatrixXcd q1 = field_matrix(rep, basis[1]).mat;  // phi(p_1)
  Eigen::MatrixXcd q2 = field_matrix(rep, basis[3]).mat;
  Eigen::MatrixXcd p2 = field_matrix(rep, basis[2]).mat;
  CHECK((q1 * q2 - q2 * q1).cwiseAbs().maxCoeff() == 0.0);
  CHECK((q1 * p2 - p2 * q1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("field matrix is real-linear and Hermitian") {
  auto space = SymplecticSpace<double>::standard(2);
  auto basis = symplectic_basis(space);
  TruncatedRep rep(space, basis, 6);
  Vec<double> zero(4, 0.0);
  CHECK(field_matrix(rep, zero).mat.cwiseAbs().maxCoeff() == 0.0);
  for (int trial = 0; trial < 5; ++trial) {
    Vec<double> f(4), twof(4);
    for (int k = 0; k < 4; ++k) {
      f[k] = uniform(-2, 2);
      twof[k] = 2.0 * f[k];
    }
    Eigen::MatrixXcd m = field_matrix(rep, f).mat;
    CHECK((field_matrix(rep, twof).mat - 2.0 * m).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((Eigen::MatrixXcd(field_sparse(rep, f)) - m).cwiseAbs().maxCoeff() <= 1e-14);
    // Mode application agrees with the dense matrix.
    Eigen::VectorXcd v(rep.dim());
    for (long i = 0; i < rep.dim(); ++i) v(i) = Complex(uniform(-1, 1), uniform(-1, 1));
    CHECK((apply_field(rep, f, v) - m * v).norm() <= 1e-12 * v.norm());
  }
}

TEST_CASE("resolvent of the zero direction") {
  OneMode om;
  TruncatedRep rep(om.space, om.basis, 8);
  Complex z{2.0, 1.0};
  Eigen::MatrixXcd r = resolvent_matrix(rep, z, Vec<double>{0.0, 0.0}).mat;
  Eigen::MatrixXcd expect = (-Complex(0, 1) / z) * Eigen::MatrixXcd::Identity(8, 8);
  CHECK((r - expect).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("norm law at odd cutoff") {
  OneMode om;
  TruncatedRep rep(om.space, om.basis, 129);
  // 0 is an eigenvalue of the truncated field at odd N (odd Hermite root),
  // so the resolvent norm attains 1/|lambda| exactly.
  double nrm = op_norm(resolvent_matrix(rep, {2.0, 0.0}, om.basis[0]).mat);
  CHECK(std::abs(nrm - 0.5) <= 1e-10);
}

TEST_CASE("resolvent adjoint consistency and norm bound") {
  OneMode om;
  TruncatedRep rep(om.space, om.basis, 48);
  for (int trial = 0; trial < 5; ++trial) {
    Vec<double> f{uniform(-2, 2), uniform(-2, 2)};
    double lam = uniform(0.4, 3.0);
    Eigen::MatrixXcd r = resolvent_matrix(rep, {lam, 0.0}, f).mat;
    Eigen::MatrixXcd rm = resolvent_matrix(rep, {-lam, 0.0}, f).mat;
    CHECK((r.adjoint() - rm).cwiseAbs().maxCoeff() <= 1e-12);
    Complex z{uniform(-2, 2) + (uniform(0, 1) > 0.5 ? 0.5 : -0.5), uniform(-2, 2)};
    CHECK(op_norm(resolvent_matrix(rep, z, f).mat) <= 1.0 / std::abs(z.real()) + 1e-12);
  }
}

TEST_CASE("weyl matrices are unitary and satisfy the compressed relation") {
  OneMode om;
  const int n = 64;
  TruncatedRep rep(om.space, om.basis, n);
  CHECK((weyl_matrix(rep, Vec<double>{0.0, 0.0}).mat -
         Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-14);
  Vec<double> f{1.0, 0.0}, h{0.3, -0.8}, fh{1.3, -0.8};
  Eigen::MatrixXcd wf = weyl_matrix(rep, f).mat;
  CHECK((wf * wf.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-10);
  Eigen::MatrixXcd wh = weyl_matrix(rep, h).mat;
  Eigen::MatrixXcd wfh = weyl_matrix(rep, fh).mat;
  double s = sigma(om.space, f, h);
  Eigen::MatrixXcd defect = wf * wh - std::exp(Complex(0, -s / 2.0)) * wfh;
  CHECK(op_norm(low_level_block(rep, defect, n / 4)) <= 1e-10);

  // Compressed adjoint action W(f) R(lam,h) W(f)^{-1} = R(lam + i sigma(h,f), h).
  Eigen::MatrixXcd rh = resolvent_matrix(rep, {2.0, 0.0}, h).mat;
  Eigen::MatrixXcd shifted = resolvent_matrix(rep, Complex(2.0, sigma(om.space, h, f)), h).mat;
  Eigen::MatrixXcd ad = wf * rh * wf.adjoint() - shifted;
  CHECK(op_norm(low_level_block(rep, ad, n / 4)) <= 1e-10);
}

TEST_CASE("laplace transform reproduces the resolvent") {
  OneMode om;
  const int n = 64;
  TruncatedRep rep(om.space, om.basis, n);
  // Zero direction: -i/lambda identity within quadrature tolerance.
  auto zero = laplace_resolvent(rep, 1.5, Vec<double>{0.0, 0.0});
  CHECK(zero.converged);
  CHECK((zero.op.mat - Complex(0, -1.0 / 1.5) * Eigen::MatrixXcd::Identity(n, n))
            .cwiseAbs()
            .maxCoeff() <= 1e-8);
  for (double lam : {1.0, -1.0, 2.0, -2.0}) {
    auto lap = laplace_resolvent(rep, lam, om.basis[0]);
    CHECK(lap.converged);
    Eigen::MatrixXcd direct = resolvent_matrix(rep, {lam, 0.0}, om.basis[0]).mat;
    CHECK(op_norm(lap.op.mat - direct) <= 1e-6);
  }
}

TEST_CASE("laplace reports non-convergence with an estimate") {
  OneMode om;
  TruncatedRep rep(om.space, om.basis, 32);
  LaplaceOptions strict;
  strict.tol = 1e-16;
  strict.max_segments = 4;
  auto res = laplace_resolvent(rep, 1.0, om.basis[0], strict);
  CHECK_FALSE(res.converged);
  CHECK(res.error_estimate > 0.0);
}

TEST_CASE("regular limit defect") {
  OneMode om;
  const int n = 64;
  TruncatedRep rep(om.space, om.basis, n);
  Vec<double> f = om.basis[0];
  // On an eigenvector of phi(f) with eigenvalue v the defect is exactly
  // |v| / sqrt(lambda^2 + v^2).
  FieldEigensystem fe = field_eigensystem(rep, f);
  int mid = n / 2;
  Eigen::VectorXcd psi = fe.u.col(mid);
  double v = fe.d(mid), lam = 3.0;
  CHECK(regular_limit_defect(rep, lam, f, psi) ==
        doctest::Approx(std::abs(v) / std::sqrt(lam * lam + v * v)).epsilon(1e-10));

  Eigen::VectorXcd vac = rep.vacuum();
  CHECK(regular_limit_defect(rep, 1e4, f, vac) < 1e-3);
  double prev = 1e300;
  for (double l : {10.0, 100.0, 1000.0, 10000.0}) {
    double d = regular_limit_defect(rep, l, f, vac);
    CHECK(d <= prev);
    prev = d;
  }
}

TEST_CASE("compact pair products have stable HS norms") {
  OneMode om;
  TruncatedRep rep64(om.space, om.basis, 64);
  TruncatedRep rep128(om.space, om.basis, 128);
  std::vector<BasisPairFactor> pairs{{1.0, om.basis[1], 1.0, om.basis[0]}};
  double h64 = compact_product_hs(rep64, pairs);
  double h128 = compact_product_hs(rep128, pairs);
  // N^{-1/2} convergence toward the analytic limit
  // tr[(1+Q^2)^{-1}(1+P^2)^{-1}]^{1/2} = sqrt(pi/2).
  const double limit = std::sqrt(M_PI / 2.0);
  CHECK(std::abs(h128 - h64) / h128 < 0.02);
  CHECK(std::abs(limit - h128) < std::abs(limit - h64));
  CHECK(std::abs(limit - h128) < 0.06);

  // Negative control: a single resolvent factor is not Hilbert-Schmidt;
  // its Frobenius norm keeps growing with the cutoff (like (2N)^{1/4}).
  double s64 = product_hs_norm(rep64, {{Complex(1.0, 0.0), om.basis[0]}});
  double s128 = product_hs_norm(rep128, {{Complex(1.0, 0.0), om.basis[0]}});
  CHECK(s128 > 1.15 * s64);
  CHECK(Eigen::MatrixXcd::Identity(64, 64).norm() == doctest::Approx(8.0));
}

TEST_CASE("two-mode four-factor product stabilizes") {
  auto space = SymplecticSpace<double>::standard(2);
  auto basis = symplectic_basis(space);
  std::vector<BasisPairFactor> pairs{{1.0, basis[1], 1.0, basis[0]},
                                     {1.5, basis[3], 0.5, basis[2]}};
  auto hs_at = [&](int n) {
    TruncatedRep rep(space, basis, n);
    return compact_product_hs(rep, pairs);
  };
  double h16 = hs_at(16), h24 = hs_at(24), h32 = hs_at(32), h48 = hs_at(48);
  double change_a = std::abs(h32 - h16) / h32;
  double change_b = std::abs(h48 - h24) / h48;
  CHECK(change_a < 0.08);
  CHECK(change_b < change_a);
}

TEST_CASE("evaluate_state basics") {
  OneMode om;
  TruncatedRep rep(om.space, om.basis, 64);
  Eigen::VectorXcd vac = rep.vacuum();
  CHECK(evaluate_state(rep, vac, PolyD::identity(2)).real() == doctest::Approx(1.0));
  Complex r0 = evaluate_state(rep, vac, PolyD::resolvent(2, {2.0, 0.0}, Vec<double>{0.0, 0.0}));
  CHECK(std::abs(r0 - Complex(0.0, -0.5)) <= 1e-14);
  // The star-difference combination R - R* + 2 i lam R R* vanishes.
  PolyD rf = PolyD::resolvent(2, {1.0, 0.0}, om.basis[0]);
  PolyD e7 = rf - rf.adjoint() + (rf * rf.adjoint()).scaled({0.0, 2.0});
  CHECK(std::abs(evaluate_state(rep, vac, e7)) <= 1e-10);
}

TEST_CASE("matrix resolvent equation is cutoff independent") {
  OneMode om;
  TruncatedRep rep(om.space, om.basis, 32);
  Vec<double> f{1.0, 0.7};
  Eigen::MatrixXcd r1 = resolvent_matrix(rep, {1.0, 0.0}, f).mat;
  Eigen::MatrixXcd r3 = resolvent_matrix(rep, {3.0, 0.0}, f).mat;
  Eigen::MatrixXcd resid = r1 - r3 - Complex(0, 2.0) * (r1 * r3);
  CHECK(resid.cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("commutation relation residual decreases with the cutoff") {
  OneMode om;
  Vec<double> f = om.basis[0], g = om.basis[1];
  double s = sigma(om.space, f, g);
  double prev = 1e300;
  for (int n : {64, 128}) {
    TruncatedRep rep(om.space, om.basis, n);
    Eigen::MatrixXcd rf = resolvent_matrix(rep, {1.0, 0.0}, f).mat;
    Eigen::MatrixXcd rg = resolvent_matrix(rep, {2.0, 0.0}, g).mat;
    Eigen::MatrixXcd resid = rf * rg - rg * rf - Complex(0, s) * (rf * rg * rg * rf);
    double low = op_norm(low_level_block(rep, resid, n / 4));
    CHECK(low < (n == 64 ? 1e-5 : 1e-6));
    CHECK(low < prev);
    prev = low;
  }
}

TEST_CASE("von Neumann partial sum is within the closed-form tail") {
  OneMode om;
  TruncatedRep rep(om.space, om.basis, 32);
  Vec<double> f = om.basis[0];
  auto exp20 = von_neumann_expand(2, 1.5, f, 1.0, 20);
  // Realize the series and the target in the truncated representation.
  Eigen::MatrixXcd series = Eigen::MatrixXcd::Zero(32, 32);
  Eigen::MatrixXcd base = resolvent_matrix(rep, {1.0, 0.0}, f).mat;
  Eigen::MatrixXcd power = base;
  Complex c = 1.0;
  for (int k = 0; k <= 20; ++k) {
    series += c * power;
    c *= Complex(0, 1) * (1.0 - 1.5);
    power = power * base;
  }
  Eigen::MatrixXcd target = resolvent_matrix(rep, {1.5, 0.0}, f).mat;
  CHECK(op_norm(series - target) <= exp20.tail_bound);
}

TEST_CASE("rewrite steps preserve the truncated value") {
  OneMode om;
  TruncatedRep rep(om.space, om.basis, 64);
  Eigen::VectorXcd probe = rep.vacuum();
  Vec<double> f = om.basis[0], g = om.basis[1];
  double s = sigma(om.space, f, g);
  PolyD rf = PolyD::resolvent(2, {1.0, 0.0}, f);
  PolyD rg = PolyD::resolvent(2, {2.0, 0.0}, g);
  PolyD e5 = rf * rg - rg * rf - (rf * rg * rg * rf).scaled({0.0, s});
  Complex prev = evaluate_state(rep, probe, e5);
  int steps = 0;
  SimplifyOptions<FieldF64> opt;
  opt.trace = [&](const PolyD& p) {
    Complex now = evaluate_state(rep, probe, p);
    CHECK(std::abs(now - prev) < 1e-8);
    prev = now;
    ++steps;
  };
  auto res = simplify<FieldF64>(om.space, e5, opt);
  CHECK(res.poly.is_zero());
  CHECK(steps == res.steps);
}

TEST_CASE("binary dump round trip") {
  OneMode om;
  TruncatedRep rep(om.space, om.basis, 8);
  OperatorMatrix m = resolvent_matrix(rep, {1.0, 0.5}, om.basis[0]);
  std::string path = "fock_dump_test.bin";
  write_matrix_dump(path, m);
  OperatorMatrix back = read_matrix_dump(path);
  CHECK(back.modes == m.modes);
  CHECK(back.cutoff == m.cutoff);
  CHECK((back.mat - m.mat).cwiseAbs().maxCoeff() == 0.0);
  std::remove(path.c_str());
}

TEST_CASE("quadrature rules sanity") {
  auto gl = gauss_legendre(16);
  double acc = 0.0;
  for (int i = 0; i < 16; ++i) acc += gl.weights[i] * gl.nodes[i] * gl.nodes[i];
  CHECK(acc == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  auto gh = gauss_hermite(32);
  double wsum = 0.0;
  for (double w : gh.weights) wsum += w;
  CHECK(wsum == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
  auto res = adaptive_gk15_real([](double x) { return std::exp(-x); }, 0.0, 30.0, 1e-12);
  CHECK(res.value == doctest::Approx(1.0).epsilon(1e-10));
}

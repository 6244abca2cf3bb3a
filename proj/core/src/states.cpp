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

#include "resolvalg/states.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "resolvalg/quadrature.hpp"

namespace ralg {

namespace {
constexpr Complex kI{0.0, 1.0};
}

QuasifreeCovariance::QuasifreeCovariance(const SymplecticSpace<double>& space, Eigen::MatrixXcd c)
    : space_(space), c_(std::move(c)) {
  const int d = space_.dim();
  if (c_.rows() != d || c_.cols() != d)
    throw std::invalid_argument("QuasifreeCovariance: matrix does not conform to space");
  double scale = std::max(1.0, c_.cwiseAbs().maxCoeff());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Complex want = kI * space_.form()(i, j);
      if (std::abs(c_(i, j) - c_(j, i) - want) > 1e-12 * scale)
        throw std::invalid_argument("QuasifreeCovariance: <f|g> - <g|f> != i sigma(f,g)");
    }
  Eigen::MatrixXcd herm = 0.5 * (c_ + c_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  if (es.eigenvalues().minCoeff() < -1e-10 * scale)
    throw std::invalid_argument("QuasifreeCovariance: Hermitian part not positive semidefinite");
  norm_ = c_.operatorNorm();
}

Complex QuasifreeCovariance::pairing(const Vec<double>& f, const Vec<double>& g) const {
  if (static_cast<int>(f.size()) != space_.dim() || static_cast<int>(g.size()) != space_.dim())
    throw std::invalid_argument("QuasifreeCovariance: vector does not conform");
  Complex s = 0.0;
  for (int i = 0; i < space_.dim(); ++i) {
    if (f[i] == 0.0) continue;
    for (int j = 0; j < space_.dim(); ++j) s += f[i] * c_(i, j) * g[j];
  }
  return s;
}

Complex quasifree_weyl_value(const QuasifreeCovariance& cov, const Vec<double>& f) {
  return std::exp(-0.5 * cov.pairing(f, f));
}

namespace {

struct ChainIntegrand {
  // exp(-sum_k t_k lambda_k - sum_{k<l} t_k t_l M_kl - 1/2 sum_l t_l^2 M_ll)
  std::vector<double> lambda;
  Eigen::MatrixXcd m;

  Complex eval(const std::vector<double>& t) const {
    const int n = static_cast<int>(lambda.size());
    Complex expo = 0.0;
    for (int k = 0; k < n; ++k) expo -= t[k] * lambda[k];
    for (int k = 0; k < n; ++k)
      for (int l = k + 1; l < n; ++l) expo -= t[k] * t[l] * m(k, l);
    for (int l = 0; l < n; ++l) expo -= 0.5 * t[l] * t[l] * m(l, l);
    return std::exp(expo);
  }
};

// Iterated 1-D adaptive panels over the orthant with per-axis tail
// cutoffs T_k = (12 + 6 ||cov||) / lambda_k.
struct ChainQuadrature {
  const ChainIntegrand* g;
  std::vector<double> horizon;
  double axis_tol;
  int outer_segments, inner_segments;
  mutable std::vector<double> t;
  mutable double worst_inner_error = 0.0;
  mutable bool converged = true;

  Complex axis(int k) const {
    const int n = static_cast<int>(horizon.size());
    auto f = [&](double x) -> Complex {
      t[k] = x;
      if (k + 1 == n) return g->eval(t);
      return axis(k + 1);
    };
    auto res = adaptive_gk15(f, 0.0, horizon[k], axis_tol,
                             k == 0 ? outer_segments : inner_segments);
    if (!res.converged) converged = false;
    worst_inner_error = std::max(worst_inner_error, res.error);
    return res.value;
  }
};

}  // namespace

QuasifreeValue quasifree_resolvent_value(const QuasifreeCovariance& cov,
                                         std::vector<ChainEntry> chain,
                                         const QuasifreeOptions& opt) {
  const int n = static_cast<int>(chain.size());
  if (n == 0) return {Complex(1.0, 0.0), 0.0, true};
  if (n > opt.max_chain)
    throw std::invalid_argument("quasifree_resolvent_value: chain longer than configured maximum");
  double sign = 1.0;
  for (auto& e : chain) {
    if (e.lambda == 0.0)
      throw std::invalid_argument("quasifree_resolvent_value: lambda must be nonzero");
    if (static_cast<int>(e.f.size()) != cov.space().dim())
      throw std::invalid_argument("quasifree_resolvent_value: vector does not conform");
    if (e.lambda < 0.0) {
      // R(lambda, f) = -R(-lambda, -f)
      sign = -sign;
      e.lambda = -e.lambda;
      for (auto& x : e.f) x = -x;
    }
  }
  ChainIntegrand g;
  g.lambda.resize(n);
  g.m.resize(n, n);
  for (int k = 0; k < n; ++k) {
    g.lambda[k] = chain[k].lambda;
    for (int l = 0; l < n; ++l) g.m(k, l) = cov.pairing(chain[k].f, chain[l].f);
  }
  ChainQuadrature q;
  q.g = &g;
  q.axis_tol = opt.axis_tol;
  q.outer_segments = opt.max_segments_outer;
  q.inner_segments = opt.max_segments_inner;
  q.t.resize(n);
  for (int k = 0; k < n; ++k) q.horizon.push_back((12.0 + 6.0 * cov.norm()) / g.lambda[k]);
  Complex integral = q.axis(0);
  Complex pref = sign;
  for (int k = 0; k < n; ++k) pref *= -kI;
  double volume = 1.0;
  for (int k = 1; k < n; ++k) volume *= q.horizon[k];
  double err = q.worst_inner_error * std::max(1.0, volume);
  return {pref * integral, err, q.converged};
}

QuasifreeCovariance fock_covariance(const SymplecticSpace<double>& space,
                                    const std::vector<Vec<double>>& basis) {
  // Entries involve at most two ladder steps, so cutoff 4 is exact.
  TruncatedRep rep(space, basis, 4);
  const int d = space.dim();
  Eigen::VectorXcd vac = rep.vacuum();
  std::vector<Eigen::VectorXcd> fields(d);
  for (int i = 0; i < d; ++i) {
    Vec<double> e(d, 0.0);
    e[i] = 1.0;
    fields[i] = apply_field(rep, e, vac);
  }
  Eigen::MatrixXcd c(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) c(i, j) = fields[i].dot(fields[j]);
  return QuasifreeCovariance(space, std::move(c));
}

DiracConstraintSet::DiracConstraintSet(const SymplecticSpace<double>& space, Subspace<double> c)
    : c_(std::move(c)) {
  if (c_.dim() == 0) throw std::invalid_argument("DiracConstraintSet: constraint subspace is empty");
  const double scale = max_abs(space.form());
  for (int i = 0; i < c_.dim(); ++i)
    for (int j = 0; j < c_.dim(); ++j)
      if (!ScalarOps<double>::is_zero(sigma(space, c_.basis_vector(i), c_.basis_vector(j)), scale))
        throw std::invalid_argument("DiracConstraintSet: sigma(C, C) != 0 (second-class constraints)");
}

bool DiracConstraintSet::in_span(const Vec<double>& f) const { return c_.contains(f); }

bool DiracConstraintSet::sigma_vanishes_on_c(const SymplecticSpace<double>& space,
                                             const Vec<double>& f) const {
  const double scale = max_abs(space.form());
  for (int j = 0; j < c_.dim(); ++j)
    if (!ScalarOps<double>::is_zero(sigma(space, f, c_.basis_vector(j)), scale)) return false;
  return true;
}

DiracValue dirac_state_value(const DiracConstraintSet& constraints, const Monomial<FieldF64>& m,
                             const SymplecticSpace<double>& space) {
  for (const auto& g : m.factors)
    if (std::abs(g.z.imag()) > 1e-12)
      throw std::invalid_argument("dirac_state_value: generator parameters must be real");
  // A single factor with sigma(f, C) != 0 kills the whole monomial.
  for (const auto& g : m.factors)
    if (!constraints.sigma_vanishes_on_c(space, g.f)) return {DiracStatus::Determined, 0.0};
  Complex value = m.coeff;
  for (const auto& g : m.factors) {
    if (!constraints.in_span(g.f)) return {DiracStatus::Undetermined, 0.0};
    value *= 1.0 / (kI * g.z);
  }
  return {DiracStatus::Determined, value};
}

double dirac_derivative_defect(const TruncatedRep& rep, double mu, const Vec<double>& g,
                               double h) {
  if (mu == 0.0) throw std::invalid_argument("dirac_derivative_defect: mu must be nonzero");
  Eigen::MatrixXcd rp = resolvent_matrix(rep, {mu + h, 0.0}, g).mat;
  Eigen::MatrixXcd rm = resolvent_matrix(rep, {mu - h, 0.0}, g).mat;
  Eigen::MatrixXcd r = resolvent_matrix(rep, {mu, 0.0}, g).mat;
  Eigen::MatrixXcd defect = kI * (rp - rm) / (2.0 * h) - r * r;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(defect);
  return svd.singularValues()(0);
}

}  // namespace ralg

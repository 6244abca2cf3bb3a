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

#include "resolvalg/fock.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <stdexcept>

namespace ralg {

namespace {

constexpr Complex kI{0.0, 1.0};

Eigen::MatrixXcd single_mode_q(int n) {
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    double v = std::sqrt((k + 1) / 2.0);
    q(k, k + 1) = v;
    q(k + 1, k) = v;
  }
  return q;
}

Eigen::MatrixXcd single_mode_p(int n) {
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    double v = std::sqrt((k + 1) / 2.0);
    p(k + 1, k) = kI * v;   // i a'
    p(k, k + 1) = -kI * v;  // -i a
  }
  return p;
}

long ipow(long base, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

TruncatedRep::TruncatedRep(SymplecticSpace<double> space, std::vector<Vec<double>> basis,
                           int cutoff)
    : space_(std::move(space)), basis_(std::move(basis)), cutoff_(cutoff) {
  const int d = space_.dim();
  if (cutoff_ < 2) throw std::invalid_argument("TruncatedRep: cutoff >= 2 required");
  if (static_cast<int>(basis_.size()) != d || d % 2 != 0)
    throw std::invalid_argument("TruncatedRep: basis must be a full symplectic basis");
  modes_ = d / 2;
  // Validate the canonical Gram structure sigma(p_i, q_j) = delta_ij.
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = sigma(space_, basis_[i], basis_[j]);
      double want = 0.0;
      if (i / 2 == j / 2) {
        if (i % 2 == 0 && j % 2 == 1) want = -1.0;  // sigma(q, p) = -1
        if (i % 2 == 1 && j % 2 == 0) want = 1.0;   // sigma(p, q) = +1
      }
      if (std::abs(s - want) > 1e-9)
        throw std::invalid_argument("TruncatedRep: basis is not symplectic for the space");
    }
  Mat<double> b(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) b(i, j) = basis_[j][i];
  Mat<double> binv = inverse(b);
  coeff_map_ = Eigen::MatrixXd(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) coeff_map_(i, j) = binv(i, j);
  dim_ = ipow(cutoff_, modes_);
  qm_ = single_mode_q(cutoff_);
  pm_ = single_mode_p(cutoff_);
}

Eigen::VectorXd TruncatedRep::mode_coefficients(const Vec<double>& f) const {
  if (static_cast<int>(f.size()) != space_.dim())
    throw std::invalid_argument("TruncatedRep: vector does not conform to space");
  Eigen::VectorXd fv(space_.dim());
  for (int i = 0; i < space_.dim(); ++i) fv(i) = f[i];
  return coeff_map_ * fv;
}

Eigen::VectorXcd TruncatedRep::vacuum() const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim_);
  v(0) = 1.0;
  return v;
}

TruncatedRep build_rep(const SymplecticSpace<double>& space, const std::vector<Vec<double>>& basis,
                       int cutoff) {
  return TruncatedRep(space, basis, cutoff);
}

Eigen::VectorXcd apply_mode_operator(const TruncatedRep& rep, const Eigen::MatrixXcd& op, int mode,
                                     const Eigen::VectorXcd& v) {
  const int n = rep.cutoff();
  const long dim = rep.dim();
  const long post = ipow(n, rep.modes() - 1 - mode);
  const long pre = dim / (post * n);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  for (long a = 0; a < pre; ++a)
    for (long c = 0; c < post; ++c) {
      const long base = a * n * post + c;
      for (int r = 0; r < n; ++r) {
        Complex acc = 0.0;
        for (int s = 0; s < n; ++s) acc += op(r, s) * v(base + s * post);
        out(base + r * post) = acc;
      }
    }
  return out;
}

Eigen::VectorXcd apply_field(const TruncatedRep& rep, const Vec<double>& f,
                             const Eigen::VectorXcd& v) {
  Eigen::VectorXd u = rep.mode_coefficients(f);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(rep.dim());
  for (int l = 0; l < rep.modes(); ++l) {
    const double x = u(2 * l), y = u(2 * l + 1);
    if (x == 0.0 && y == 0.0) continue;
    Eigen::MatrixXcd op = x * rep.mode_p() + y * rep.mode_q();
    out += apply_mode_operator(rep, op, l, v);
  }
  return out;
}

OperatorMatrix field_matrix(const TruncatedRep& rep, const Vec<double>& f) {
  const long dim = rep.dim();
  if (dim > 4096)
    throw std::invalid_argument(
        "field_matrix: dimension exceeds the dense budget; use field_sparse or apply_field");
  Eigen::VectorXd u = rep.mode_coefficients(f);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int l = 0; l < rep.modes(); ++l) {
    const double x = u(2 * l), y = u(2 * l + 1);
    if (x == 0.0 && y == 0.0) continue;
    Eigen::MatrixXcd op = x * rep.mode_p() + y * rep.mode_q();
    // Embed op at tensor position l.
    const int n = rep.cutoff();
    const long post = ipow(n, rep.modes() - 1 - l);
    const long pre = dim / (post * n);
    for (long a = 0; a < pre; ++a)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          if (op(r, s) == Complex(0.0, 0.0)) continue;
          for (long c = 0; c < post; ++c)
            m(a * n * post + r * post + c, a * n * post + s * post + c) += op(r, s);
        }
  }
  return {std::move(m), rep.modes(), rep.cutoff()};
}

Eigen::SparseMatrix<Complex> field_sparse(const TruncatedRep& rep, const Vec<double>& f) {
  const long dim = rep.dim();
  Eigen::VectorXd u = rep.mode_coefficients(f);
  std::vector<Eigen::Triplet<Complex>> trips;
  const int n = rep.cutoff();
  for (int l = 0; l < rep.modes(); ++l) {
    const double x = u(2 * l), y = u(2 * l + 1);
    if (x == 0.0 && y == 0.0) continue;
    Eigen::MatrixXcd op = x * rep.mode_p() + y * rep.mode_q();
    const long post = ipow(n, rep.modes() - 1 - l);
    const long pre = dim / (post * n);
    for (long a = 0; a < pre; ++a)
      for (int r = 0; r < n; ++r)
        for (int s = std::max(0, r - 1); s <= std::min(n - 1, r + 1); ++s) {
          if (op(r, s) == Complex(0.0, 0.0)) continue;
          for (long c = 0; c < post; ++c)
            trips.emplace_back(a * n * post + r * post + c, a * n * post + s * post + c, op(r, s));
        }
  }
  Eigen::SparseMatrix<Complex> m(dim, dim);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

OperatorMatrix resolvent_matrix(const TruncatedRep& rep, Complex z, const Vec<double>& f) {
  if (std::abs(z.real()) < 1e-14)
    throw std::invalid_argument("resolvent_matrix: Re z must be nonzero");
  if (rep.dim() > 4096)
    throw std::invalid_argument(
        "resolvent_matrix: dimension exceeds the dense budget; use apply_resolvent");
  OperatorMatrix phi = field_matrix(rep, f);
  const long dim = rep.dim();
  Eigen::MatrixXcd a = kI * z * Eigen::MatrixXcd::Identity(dim, dim) - phi.mat;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  Eigen::MatrixXcd r = lu.solve(Eigen::MatrixXcd::Identity(dim, dim));
  double resid = (a * r - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (resid > 1e-12) throw std::runtime_error("resolvent_matrix: solve residual above tolerance");
  return {std::move(r), rep.modes(), rep.cutoff()};
}

ResolventSolver::ResolventSolver(const TruncatedRep& rep, Complex z, const Vec<double>& f) {
  if (std::abs(z.real()) < 1e-14)
    throw std::invalid_argument("ResolventSolver: Re z must be nonzero");
  const long dim = rep.dim();
  Eigen::SparseMatrix<Complex> id(dim, dim);
  id.setIdentity();
  a_ = Eigen::SparseMatrix<Complex>(kI * z * id - field_sparse(rep, f));
  a_.makeCompressed();
  lu_.compute(a_);
  if (lu_.info() != Eigen::Success) throw std::runtime_error("ResolventSolver: factorization failed");
}

Eigen::VectorXcd ResolventSolver::solve(const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd x = lu_.solve(v);
  return x;
}

Eigen::VectorXcd apply_resolvent(const TruncatedRep& rep, Complex z, const Vec<double>& f,
                                 const Eigen::VectorXcd& v) {
  return ResolventSolver(rep, z, f).solve(v);
}

FieldEigensystem field_eigensystem(const TruncatedRep& rep, const Vec<double>& f) {
  OperatorMatrix phi = field_matrix(rep, f);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(phi.mat);
  if (es.info() != Eigen::Success) throw std::runtime_error("field_eigensystem: eigensolver failed");
  return {es.eigenvectors(), es.eigenvalues()};
}

OperatorMatrix weyl_from_eigensystem(const TruncatedRep& rep, const FieldEigensystem& fe,
                                     double t) {
  Eigen::VectorXcd phase(fe.d.size());
  for (int k = 0; k < fe.d.size(); ++k) phase(k) = std::exp(kI * (t * fe.d(k)));
  Eigen::MatrixXcd w = fe.u * phase.asDiagonal() * fe.u.adjoint();
  return {std::move(w), rep.modes(), rep.cutoff()};
}

OperatorMatrix weyl_matrix(const TruncatedRep& rep, const Vec<double>& f) {
  return weyl_from_eigensystem(rep, field_eigensystem(rep, f), 1.0);
}

LaplaceResult laplace_resolvent(const TruncatedRep& rep, double lambda, const Vec<double>& f,
                                const LaplaceOptions& opt) {
  if (lambda == 0.0) throw std::invalid_argument("laplace_resolvent: lambda must be nonzero");
  FieldEigensystem fe = field_eigensystem(rep, f);
  // e^{-|lambda| T} < 1e-12 truncates the Laplace tail.
  const double horizon = 28.0 / std::abs(lambda);
  const double sgn = lambda > 0 ? 1.0 : -1.0;
  auto integrand = [&](double t) -> Eigen::MatrixXcd {
    // sigma = sign(lambda): Int_0^{sigma inf} e^{-lambda t} W(-t f) dt
    // reparametrized by t = sigma s, s in [0, horizon].
    double tt = sgn * t;
    return std::exp(-lambda * tt) * weyl_from_eigensystem(rep, fe, -tt).mat;
  };
  auto res = adaptive_gk15_matrix(integrand, 0.0, horizon, opt.tol, opt.max_segments);
  Eigen::MatrixXcd val = -kI * sgn * res.value;
  return {{std::move(val), rep.modes(), rep.cutoff()}, res.error, res.converged};
}

double regular_limit_defect(const TruncatedRep& rep, double lambda, const Vec<double>& f,
                            const Eigen::VectorXcd& psi) {
  Eigen::VectorXcd r = apply_resolvent(rep, {lambda, 0.0}, f, psi);
  return (kI * lambda * r - psi).norm();
}

double product_hs_norm(const TruncatedRep& rep, const std::vector<ResolventFactor>& factors) {
  const long dim = rep.dim();
  std::vector<std::unique_ptr<ResolventSolver>> solvers;
  solvers.reserve(factors.size());
  for (const auto& fac : factors) solvers.push_back(std::make_unique<ResolventSolver>(rep, fac.z, fac.f));
  double sum = 0.0;
  Eigen::VectorXcd col(dim);
  for (long j = 0; j < dim; ++j) {
    col.setZero();
    col(j) = 1.0;
    for (auto it = solvers.rbegin(); it != solvers.rend(); ++it) col = (*it)->solve(col);
    sum += col.squaredNorm();
  }
  return std::sqrt(sum);
}

double compact_product_hs(const TruncatedRep& rep, const std::vector<BasisPairFactor>& pairs) {
  std::vector<ResolventFactor> factors;
  for (const auto& pr : pairs) {
    factors.push_back({{pr.lambda, 0.0}, pr.p});
    factors.push_back({{pr.mu, 0.0}, pr.q});
  }
  return product_hs_norm(rep, factors);
}

Complex evaluate_state(const TruncatedRep& rep, const Eigen::VectorXcd& psi, const PolyD& p) {
  if (p.dim() != rep.space().dim())
    throw std::invalid_argument("evaluate_state: polynomial does not conform to space");
  // Factorizations are shared across monomials of the same polynomial.
  std::map<std::pair<std::pair<double, double>, Vec<double>>, std::unique_ptr<ResolventSolver>>
      cache;
  Complex total = 0.0;
  for (const auto& m : p.terms()) {
    Eigen::VectorXcd v = psi;
    for (auto it = m.factors.rbegin(); it != m.factors.rend(); ++it) {
      auto key = std::make_pair(std::make_pair(it->z.real(), it->z.imag()), it->f);
      auto found = cache.find(key);
      if (found == cache.end())
        found = cache.emplace(key, std::make_unique<ResolventSolver>(rep, it->z, it->f)).first;
      v = found->second->solve(v);
    }
    total += m.coeff * psi.dot(v);
  }
  return total;
}

Eigen::VectorXcd apply_poly(const TruncatedRep& rep, const PolyD& p, const Eigen::VectorXcd& v) {
  if (p.dim() != rep.space().dim())
    throw std::invalid_argument("apply_poly: polynomial does not conform to space");
  std::map<std::pair<std::pair<double, double>, Vec<double>>, std::unique_ptr<ResolventSolver>>
      cache;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(rep.dim());
  for (const auto& m : p.terms()) {
    Eigen::VectorXcd w = v;
    for (auto it = m.factors.rbegin(); it != m.factors.rend(); ++it) {
      auto key = std::make_pair(std::make_pair(it->z.real(), it->z.imag()), it->f);
      auto found = cache.find(key);
      if (found == cache.end())
        found = cache.emplace(key, std::make_unique<ResolventSolver>(rep, it->z, it->f)).first;
      w = found->second->solve(w);
    }
    out += m.coeff * w;
  }
  return out;
}

Eigen::MatrixXcd low_level_block(const TruncatedRep& rep, const Eigen::MatrixXcd& m, int k) {
  const int n = rep.cutoff();
  if (k > n) k = n;
  const long small_dim = ipow(k, rep.modes());
  std::vector<long> idx;
  idx.reserve(small_dim);
  for (long i = 0; i < rep.dim(); ++i) {
    long rem = i;
    bool low = true;
    for (int l = 0; l < rep.modes(); ++l) {
      long digit = (rem / ipow(n, rep.modes() - 1 - l)) % n;
      if (digit >= k) {
        low = false;
        break;
      }
    }
    if (low) idx.push_back(i);
  }
  Eigen::MatrixXcd b(idx.size(), idx.size());
  for (size_t r = 0; r < idx.size(); ++r)
    for (size_t c = 0; c < idx.size(); ++c) b(r, c) = m(idx[r], idx[c]);
  return b;
}

void write_matrix_dump(const std::string& path, const OperatorMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_matrix_dump: cannot open " + path);
  uint32_t header[4] = {static_cast<uint32_t>(m.mat.rows()), static_cast<uint32_t>(m.mat.cols()),
                        static_cast<uint32_t>(m.modes), static_cast<uint32_t>(m.cutoff)};
  out.write(reinterpret_cast<const char*>(header), sizeof(header));
  for (long i = 0; i < m.mat.rows(); ++i)
    for (long j = 0; j < m.mat.cols(); ++j) {
      double re = m.mat(i, j).real(), im = m.mat(i, j).imag();
      out.write(reinterpret_cast<const char*>(&re), sizeof(double));
      out.write(reinterpret_cast<const char*>(&im), sizeof(double));
    }
}

OperatorMatrix read_matrix_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_matrix_dump: cannot open " + path);
  uint32_t header[4];
  in.read(reinterpret_cast<char*>(header), sizeof(header));
  OperatorMatrix m;
  m.mat.resize(header[0], header[1]);
  m.modes = static_cast<int>(header[2]);
  m.cutoff = static_cast<int>(header[3]);
  for (uint32_t i = 0; i < header[0]; ++i)
    for (uint32_t j = 0; j < header[1]; ++j) {
      double re, im;
      in.read(reinterpret_cast<char*>(&re), sizeof(double));
      in.read(reinterpret_cast<char*>(&im), sizeof(double));
      m.mat(i, j) = Complex(re, im);
    }
  if (!in) throw std::runtime_error("read_matrix_dump: truncated file");
  return m;
}

}  // namespace ralg

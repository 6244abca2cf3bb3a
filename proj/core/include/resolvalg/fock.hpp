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

// Truncated multi-mode Fock representation.  Given a symplectic basis
// {q_1,p_1;...;q_n,p_n} the per-mode matrices are
//   Q_l = phi(p_l) = (a + a')/sqrt2          (real tridiagonal)
//   P_l = phi(q_l) = i (a' - a)/sqrt2
// so that [Q_l, P_l] = i away from the truncation edge and
// (Q_l + i P_l) Omega_0 = 0 holds exactly in the truncated matrices.
// For f = sum_l (x_l q_l + y_l p_l) the field is
// phi(f) = sum_l (x_l P_l + y_l Q_l).

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <string>
#include <vector>

#include "resolvalg/poly.hpp"
#include "resolvalg/quadrature.hpp"
#include "resolvalg/symplectic.hpp"

namespace ralg {

using Complex = std::complex<double>;

struct OperatorMatrix {
  Eigen::MatrixXcd mat;
  int modes = 0;
  int cutoff = 0;
};

class TruncatedRep {
 public:
  /// basis is the flat (q1, p1, q2, p2, ...) list as produced by
  /// symplectic_basis; cutoff N >= 2 levels per mode.
  TruncatedRep(SymplecticSpace<double> space, std::vector<Vec<double>> basis, int cutoff);

  int modes() const { return modes_; }
  int cutoff() const { return cutoff_; }
  long dim() const { return dim_; }
  const SymplecticSpace<double>& space() const { return space_; }
  const std::vector<Vec<double>>& basis() const { return basis_; }

  const Eigen::MatrixXcd& mode_q() const { return qm_; }
  const Eigen::MatrixXcd& mode_p() const { return pm_; }

  /// Coefficients (x_1, y_1, ..., x_n, y_n) of f in the symplectic basis.
  Eigen::VectorXd mode_coefficients(const Vec<double>& f) const;

  Eigen::VectorXcd vacuum() const;

 private:
  SymplecticSpace<double> space_;
  std::vector<Vec<double>> basis_;
  Eigen::MatrixXd coeff_map_;
  int modes_, cutoff_;
  long dim_;
  Eigen::MatrixXcd qm_, pm_;
};

TruncatedRep build_rep(const SymplecticSpace<double>& space, const std::vector<Vec<double>>& basis,
                       int cutoff);

/// Apply the single-mode operator op along tensor axis `mode`.
Eigen::VectorXcd apply_mode_operator(const TruncatedRep& rep, const Eigen::MatrixXcd& op, int mode,
                                     const Eigen::VectorXcd& v);

Eigen::VectorXcd apply_field(const TruncatedRep& rep, const Vec<double>& f,
                             const Eigen::VectorXcd& v);

OperatorMatrix field_matrix(const TruncatedRep& rep, const Vec<double>& f);

Eigen::SparseMatrix<Complex> field_sparse(const TruncatedRep& rep, const Vec<double>& f);

/// Dense resolvent (iz - phi(f))^{-1}; hard error if the solve residual
/// exceeds tolerance.
OperatorMatrix resolvent_matrix(const TruncatedRep& rep, Complex z, const Vec<double>& f);

/// (iz - phi(f))^{-1} v via a sparse factorization.
Eigen::VectorXcd apply_resolvent(const TruncatedRep& rep, Complex z, const Vec<double>& f,
                                 const Eigen::VectorXcd& v);

/// Reusable factorization of (iz - phi(f)).
class ResolventSolver {
 public:
  ResolventSolver(const TruncatedRep& rep, Complex z, const Vec<double>& f);
  Eigen::VectorXcd solve(const Eigen::VectorXcd& v) const;

 private:
  Eigen::SparseMatrix<Complex> a_;
  Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu_;
};

/// Eigensystem of the Hermitian field matrix, cached for Weyl families.
struct FieldEigensystem {
  Eigen::MatrixXcd u;
  Eigen::VectorXd d;
};
FieldEigensystem field_eigensystem(const TruncatedRep& rep, const Vec<double>& f);

/// W(f) = exp(i phi(f)) via the Hermitian eigendecomposition.
OperatorMatrix weyl_matrix(const TruncatedRep& rep, const Vec<double>& f);

OperatorMatrix weyl_from_eigensystem(const TruncatedRep& rep, const FieldEigensystem& fe, double t);

struct LaplaceOptions {
  double tol = 1e-9;
  int max_segments = 600;
};

struct LaplaceResult {
  OperatorMatrix op;
  double error_estimate = 0.0;
  bool converged = true;
};

/// R(lambda, f) as the Laplace transform of the Weyl family,
///   -i Int_0^{sigma * inf} e^{-lambda t} W(-t f) dt,  sigma = sign(lambda).
LaplaceResult laplace_resolvent(const TruncatedRep& rep, double lambda, const Vec<double>& f,
                                const LaplaceOptions& opt = {});

/// || i lambda R(lambda, f) psi - psi ||.
double regular_limit_defect(const TruncatedRep& rep, double lambda, const Vec<double>& f,
                            const Eigen::VectorXcd& psi);

struct ResolventFactor {
  Complex z;
  Vec<double> f;
};

/// Frobenius norm of a product of resolvent factors.
double product_hs_norm(const TruncatedRep& rep, const std::vector<ResolventFactor>& factors);

/// Hilbert-Schmidt norm of prod_i R(lambda_i, p_i) R(mu_i, q_i) for basis
/// pairs (lambda_i, p_i, mu_i, q_i).
struct BasisPairFactor {
  double lambda;
  Vec<double> p;
  double mu;
  Vec<double> q;
};
double compact_product_hs(const TruncatedRep& rep, const std::vector<BasisPairFactor>& pairs);

/// <psi, pi(p) psi> evaluated by applying resolvent factors to psi.
Complex evaluate_state(const TruncatedRep& rep, const Eigen::VectorXcd& psi, const PolyD& p);

/// pi(p) v by right-to-left application of the resolvent factors.
Eigen::VectorXcd apply_poly(const TruncatedRep& rep, const PolyD& p, const Eigen::VectorXcd& v);

/// Compression to product states with every mode level < k.
Eigen::MatrixXcd low_level_block(const TruncatedRep& rep, const Eigen::MatrixXcd& m, int k);

/// Debug dump: 16-byte header (rows, cols, modes, cutoff as uint32 LE),
/// then row-major complex128.
void write_matrix_dump(const std::string& path, const OperatorMatrix& m);
OperatorMatrix read_matrix_dump(const std::string& path);

}  // namespace ralg

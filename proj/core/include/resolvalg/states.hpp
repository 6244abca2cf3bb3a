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

// Quasifree states via the iterated Laplace-transform integral and Dirac
// constraint states for linear bosonic constraints.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "resolvalg/fock.hpp"
#include "resolvalg/poly.hpp"
#include "resolvalg/symplectic.hpp"

namespace ralg {

/// Covariance <.|.>_omega on the coordinate basis.  Constraints checked at
/// construction: C - C^T = i * form, Hermitian part positive semidefinite.
class QuasifreeCovariance {
 public:
  QuasifreeCovariance(const SymplecticSpace<double>& space, Eigen::MatrixXcd c);

  const SymplecticSpace<double>& space() const { return space_; }
  const Eigen::MatrixXcd& matrix() const { return c_; }
  double norm() const { return norm_; }

  Complex pairing(const Vec<double>& f, const Vec<double>& g) const;

 private:
  SymplecticSpace<double> space_;
  Eigen::MatrixXcd c_;
  double norm_;
};

/// omega(delta_f) = exp(-1/2 <f|f>).
Complex quasifree_weyl_value(const QuasifreeCovariance& cov, const Vec<double>& f);

struct ChainEntry {
  double lambda;
  Vec<double> f;
};

struct QuasifreeOptions {
  double axis_tol = 1e-8;
  int max_chain = 4;
  int max_segments_outer = 64;
  int max_segments_inner = 16;
};

struct QuasifreeValue {
  Complex value;
  double error = 0.0;
  bool converged = true;
};

/// omega(R(lambda_1,f_1) ... R(lambda_n,f_n)) by adaptive quadrature over
/// the positive orthant.  Negative lambda_k are reduced via
/// R(lambda,f) = -R(-lambda,-f) before integrating.
QuasifreeValue quasifree_resolvent_value(const QuasifreeCovariance& cov,
                                         std::vector<ChainEntry> chain,
                                         const QuasifreeOptions& opt = {});

/// Covariance of the Fock product state for the given symplectic basis,
/// computed from truncated vacuum expectations <Omega, phi phi Omega>.
QuasifreeCovariance fock_covariance(const SymplecticSpace<double>& space,
                                    const std::vector<Vec<double>>& basis);

/// First-class constraint subspace C with sigma(C, C) = 0.
class DiracConstraintSet {
 public:
  DiracConstraintSet(const SymplecticSpace<double>& space, Subspace<double> c);
  const Subspace<double>& constraints() const { return c_; }

  bool in_span(const Vec<double>& f) const;
  bool sigma_vanishes_on_c(const SymplecticSpace<double>& space, const Vec<double>& f) const;

 private:
  Subspace<double> c_;
};

enum class DiracStatus { Determined, Undetermined };

struct DiracValue {
  DiracStatus status = DiracStatus::Determined;
  Complex value = 0.0;
};

/// Dirac state value of a monomial: the character prod 1/(i lambda_k) on
/// factors inside span C, zero when any factor fails to sigma-commute
/// with C, and Undetermined otherwise (the Hahn-Banach extension does not
/// pin those values).
DiracValue dirac_state_value(const DiracConstraintSet& constraints,
                             const Monomial<FieldF64>& m, const SymplecticSpace<double>& space);

/// || i (R(mu+h,g) - R(mu-h,g)) / (2h) - R(mu,g)^2 ||; O(h^2) by the
/// derivative identity i d/dmu R(mu,g) = R(mu,g)^2.
double dirac_derivative_defect(const TruncatedRep& rep, double mu, const Vec<double>& g,
                               double h = 1e-3);

}  // namespace ralg

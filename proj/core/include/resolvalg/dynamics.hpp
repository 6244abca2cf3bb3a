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

// Dynamics and lattice analytics: interaction cocycle kernels and their
// Hilbert-Schmidt norms, Dyson expansions with the finite-volume bounds,
// the 1-D oscillator-lattice Hamiltonians and ground-state sequence, the
// sandwich inequality, and the Hermite matrix-element suite.

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "resolvalg/fock.hpp"

namespace ralg {

class Potential {
 public:
  /// Closed-form potential with an optional closed-form Fourier transform
  /// (convention Vtilde(w) = (2 pi)^{-1/2} Int V(x) e^{-iwx} dx).
  static Potential closed_form(std::function<double(double)> v,
                               std::function<double(double)> vtilde, double sup_norm);
  static Potential closed_form(std::function<double(double)> v, double sup_norm);
  /// Fourier data only; evaluating V(x) on such a potential throws.
  static Potential from_fourier(std::function<double(double)> vtilde);
  /// Sampled values on a grid, evaluated by a natural cubic spline and
  /// zero outside the grid.
  static Potential sampled(std::vector<double> x, std::vector<double> values);
  /// a * exp(-x^2 / w^2); Fourier transform available.
  static Potential gaussian_bump(double amplitude, double width);

  double operator()(double x) const;
  double fourier(double w) const;
  bool has_fourier() const { return static_cast<bool>(vtilde_); }
  bool has_position_form() const { return static_cast<bool>(v_); }
  double norm() const { return norm_; }

 private:
  Potential() = default;
  std::function<double(double)> v_, vtilde_;
  double norm_ = 0.0;
};

/// Integral kernel of Int_0^t ds V_s in momentum space,
/// (u, v) -> (i/sqrt(2 pi)) (1 - e^{it(u^2-v^2)})/(u^2-v^2) Vtilde(u-v),
/// with the removable singularity filled by its limit.  Requires the
/// Vtilde(0) = 0 class.
class CocycleKernel {
 public:
  CocycleKernel(const Potential& v, double t);
  Complex operator()(double u, double w) const;
  double time() const { return t_; }

 private:
  const Potential* v_;
  double t_;
};

CocycleKernel cocycle_kernel(const Potential& v, double t);

struct HsNormResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

/// || Int_0^t ds V_s ||_2^2 = |t| Int dw |Vtilde(w)|^2 / (2|w|) by 1-D
/// adaptive quadrature.  Throws when Vtilde(0) != 0 (divergent integrand).
HsNormResult cocycle_hs_norm_sq(const Potential& v, double t, double window = 30.0,
                                double tol = 1e-10);

/// Independent 2-D oracle: grid/adaptive quadrature of |kernel|^2 over
/// the (u, v) plane in rotated coordinates.
HsNormResult cocycle_hs_norm_sq_2d(const Potential& v, double t, double window = 30.0,
                                   double rel_tol = 1e-4);

struct DysonOptions {
  int panels = 8;        ///< Gauss-Legendre panels per unit interval pass
  double tail_tol = 1e-8;
};

struct DysonResult {
  Eigen::MatrixXcd gamma;
  double tail_bound = 0.0;       ///< sum_{n > order} (|t| ||V||)^n / n!
  double quadrature_error = 0.0; ///< panel-refinement estimate
  bool tail_ok = true;
};

/// Partial Dyson series of the interaction cocycle
/// Gamma_V(t) = sum_n i^n Int_{0<=t_1<=...<=t_n<=t} V_{t_1}...V_{t_n},
/// V_s = e^{isH0} V e^{-isH0}, by nested Gauss-Legendre collocation.
DysonResult dyson_cocycle(const Eigen::MatrixXcd& h0, const Eigen::MatrixXcd& vop, double t,
                          int order, const DysonOptions& opt = {});

/// Continuity-in-V bound ||G_{V1}(t) - G_{V2}(t)|| <=
/// ||V1-V2|| (e^{|t|(||V1||+||V2||)} - 1)/(||V1||+||V2||).
double dyson_continuity_bound(double v1_norm, double v2_norm, double diff_norm, double t);

/// e^{itH} R(z, f) e^{-itH} for Hermitian H.
OperatorMatrix evolved_resolvent(const TruncatedRep& rep, const Eigen::MatrixXcd& h, double t,
                                 Complex z, const Vec<double>& f);

/// 1-D oscillator chain: sites [first_site, last_site], per-mode cutoff,
/// nearest-neighbour interaction V(Q_l - Q_{l+1}).
struct LatticeModel {
  int first_site = 0;
  int last_site = 0;
  int cutoff = 8;
  Potential v = Potential::closed_form([](double) { return 0.0; }, 0.0);
  long dense_budget = 4096;

  int sites() const { return last_site - first_site + 1; }
};

struct SiteInterval {
  int lo = 0, hi = 0;
  int sites() const { return hi - lo + 1; }
};

/// H_Lambda = sum_l (P_l^2 + Q_l^2) + sum_{l,l+1} V(Q_l - Q_{l+1}); real
/// symmetric.  Errors out above the dense budget (use the Lanczos path in
/// ground_state instead).
Eigen::MatrixXd lattice_hamiltonian(const LatticeModel& model, const SiteInterval& interval);

Eigen::VectorXd apply_lattice_hamiltonian(const LatticeModel& model, const SiteInterval& interval,
                                          const Eigen::VectorXd& x);

struct GroundStateResult {
  double energy = 0.0;
  Eigen::VectorXd vec;
  double gap = 0.0;
  double residual = 0.0;
  bool used_lanczos = false;
};

GroundStateResult ground_state(const LatticeModel& model, const SiteInterval& interval);

struct SandwichResult {
  double lower = 0.0;  ///< (mu + 4||V||)^{-1}
  double value = 0.0;  ///< <Omega_n, (mu + H~_m)^{-1} Omega_n>
  double upper = 0.0;  ///< mu^{-1}
  bool holds = false;
};

/// Sandwich check: the renormalized sub-interval resolvent in
/// the interval-n ground state is pinched between (mu+4||V||)^{-1} and
/// mu^{-1}.
SandwichResult sandwich_check(const LatticeModel& model, const SiteInterval& n,
                              const SiteInterval& m, double mu);

struct SuperadditivityResult {
  double value = 0.0;  ///< E_m + E_{n\m} - E_n
  double bound = 0.0;  ///< -2||V||
  bool holds = false;
};

SuperadditivityResult energy_superadditivity_check(const LatticeModel& model,
                                                   const SiteInterval& n, const SiteInterval& m);

/// ||e^{-Q^2/2} Phi_n||^2 = (1/sqrt2) (2n)!/(2^{2n} (n!)^2), by the
/// stable product recurrence.
double hermite_weighted_norm_sq(int n);

struct HermiteElements {
  Eigen::MatrixXcd c;
  double k_const = 0.0;        ///< sup |V(sqrt2 x) e^{x^2}| (finite for compact support)
  double quadrature_defect = 0.0;
  bool quadrature_ok = true;
};

/// Matrix elements C_{mn} = w_t(m-n) (Phi_m, V(sqrt2 Q) Phi_n) with
/// w_t(k) = (e^{2itk} - 1)/(2ik), w_t(0) = t, by Gauss-Hermite quadrature
/// over recurrence-evaluated Hermite functions.
HermiteElements hermite_matrix_elements(const Potential& v, double t, int m_cutoff);

/// Bound |C_{mn}| <= bound_entry(K, t, m, n) from the finite-volume
/// commutator estimate table.
double hermite_bound_entry(double k_const, double t, int m, int n);

struct CommutatorBoundResult {
  double term = 0.0;  ///< n-th term bound (|t|^n/n!) 4^n (n0+1)...(n0+n) ||V||^n ||R0||
  double tail = 0.0;  ///< sum of the bounds from n+1 on
  bool converges = true;
};

/// Finite-volume commutator bounds; the tail converges iff
/// |t| < 1/(4||V||) and is flagged divergent otherwise.
CommutatorBoundResult finite_volume_commutator_bound(int n0, int n, double t, double v_norm,
                                                     double r0_norm);

}  // namespace ralg

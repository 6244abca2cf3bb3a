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

#include "resolvalg/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <limits>
#include <memory>
#include <random>
#include <stdexcept>

#include "resolvalg/quadrature.hpp"

namespace ralg {

namespace {

constexpr Complex kI{0.0, 1.0};

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

long ipow(long base, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Natural cubic spline on a sorted grid; zero outside.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const int n = static_cast<int>(x_.size());
    if (n < 3) throw std::invalid_argument("Potential::sampled: need at least 3 samples");
    for (int i = 0; i + 1 < n; ++i)
      if (x_[i + 1] <= x_[i]) throw std::invalid_argument("Potential::sampled: grid not increasing");
    m_.assign(n, 0.0);
    std::vector<double> a(n, 0.0), b(n, 1.0), c(n, 0.0), d(n, 0.0);
    for (int i = 1; i + 1 < n; ++i) {
      double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
      a[i] = h0 / 6.0;
      b[i] = (h0 + h1) / 3.0;
      c[i] = h1 / 6.0;
      d[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
    }
    for (int i = 1; i < n; ++i) {
      double w = a[i] / b[i - 1];
      b[i] -= w * c[i - 1];
      d[i] -= w * d[i - 1];
    }
    for (int i = n - 2; i >= 1; --i) m_[i] = (d[i] - c[i] * m_[i + 1]) / b[i];
  }

  double operator()(double t) const {
    const int n = static_cast<int>(x_.size());
    if (t < x_.front() || t > x_.back()) return 0.0;
    int lo = 0, hi = n - 1;
    while (hi - lo > 1) {
      int mid = (lo + hi) / 2;
      (x_[mid] <= t ? lo : hi) = mid;
    }
    double h = x_[hi] - x_[lo], u = (t - x_[lo]) / h;
    return (1 - u) * y_[lo] + u * y_[hi] +
           h * h / 6.0 * ((std::pow(1 - u, 3) - (1 - u)) * m_[lo] + (std::pow(u, 3) - u) * m_[hi]);
  }

 private:
  std::vector<double> x_, y_;
  std::vector<double> m_;
};

Eigen::MatrixXd real_part(const Eigen::MatrixXcd& m) { return m.real(); }

}  // namespace

Potential Potential::closed_form(std::function<double(double)> v,
                                 std::function<double(double)> vtilde, double sup_norm) {
  Potential p;
  p.v_ = std::move(v);
  p.vtilde_ = std::move(vtilde);
  p.norm_ = sup_norm;
  return p;
}

Potential Potential::closed_form(std::function<double(double)> v, double sup_norm) {
  Potential p;
  p.v_ = std::move(v);
  p.norm_ = sup_norm;
  return p;
}

Potential Potential::from_fourier(std::function<double(double)> vtilde) {
  Potential p;
  p.vtilde_ = std::move(vtilde);
  return p;
}

Potential Potential::sampled(std::vector<double> x, std::vector<double> values) {
  double sup = 0.0;
  for (double y : values) sup = std::max(sup, std::abs(y));
  auto spline = std::make_shared<CubicSpline>(std::move(x), std::move(values));
  Potential p;
  p.v_ = [spline](double t) { return (*spline)(t); };
  p.norm_ = sup;
  return p;
}

Potential Potential::gaussian_bump(double amplitude, double width) {
  if (width <= 0.0) throw std::invalid_argument("Potential::gaussian_bump: width must be positive");
  Potential p;
  p.v_ = [amplitude, width](double x) { return amplitude * std::exp(-x * x / (width * width)); };
  // Vtilde(w) = (2 pi)^{-1/2} Int V = a (width/sqrt2) e^{-width^2 w^2/4}
  p.vtilde_ = [amplitude, width](double w) {
    return amplitude * width / std::sqrt(2.0) * std::exp(-width * width * w * w / 4.0);
  };
  p.norm_ = std::abs(amplitude);
  return p;
}

double Potential::operator()(double x) const {
  if (!v_) throw std::logic_error("Potential: no position-space form available");
  return v_(x);
}

double Potential::fourier(double w) const {
  if (!vtilde_) throw std::logic_error("Potential: no Fourier transform available");
  return vtilde_(w);
}

CocycleKernel::CocycleKernel(const Potential& v, double t) : v_(&v), t_(t) {
  if (!v.has_fourier()) throw std::invalid_argument("cocycle_kernel: potential has no Fourier form");
  if (std::abs(v.fourier(0.0)) > 1e-10)
    throw std::invalid_argument("cocycle_kernel: Vtilde(0) != 0 outside the admissible class");
}

Complex CocycleKernel::operator()(double u, double w) const {
  // (i/sqrt(2pi)) (1 - e^{itx})/x Vtilde(u-w), x = u^2 - w^2, rewritten as
  // (t/sqrt(2pi)) e^{itx/2} sinc(tx/2) Vtilde(u-w), which carries the
  // removable singularity along |u| = |w|.
  const double x = u * u - w * w;
  const double half = 0.5 * t_ * x;
  return t_ / std::sqrt(2.0 * std::numbers::pi) * std::exp(kI * half) * sinc(half) *
         v_->fourier(u - w);
}

CocycleKernel cocycle_kernel(const Potential& v, double t) { return CocycleKernel(v, t); }

HsNormResult cocycle_hs_norm_sq(const Potential& v, double t, double window, double tol) {
  if (!v.has_fourier())
    throw std::invalid_argument("cocycle_hs_norm_sq: potential has no Fourier form");
  if (std::abs(v.fourier(0.0)) > 1e-10)
    throw std::domain_error("cocycle_hs_norm_sq: Vtilde(0) != 0, integrand diverges");
  auto f = [&](double w) {
    if (w == 0.0) return 0.0;
    double a = v.fourier(w);
    return a * a / (2.0 * std::abs(w));
  };
  auto res = adaptive_gk15_real(f, -window, window, tol);
  return {std::abs(t) * res.value, std::abs(t) * res.error, res.converged};
}

HsNormResult cocycle_hs_norm_sq_2d(const Potential& v, double t, double window, double rel_tol) {
  if (std::abs(v.fourier(0.0)) > 1e-10)
    throw std::domain_error("cocycle_hs_norm_sq_2d: Vtilde(0) != 0, integrand diverges");
  // In coordinates w = u - v, s = u + v (Jacobian 1/2):
  // |K|^2 = (1/2pi) 4 sin^2(t w s / 2) / (w s)^2 |Vtilde(w)|^2.
  const double at = std::abs(t);
  bool converged = true;
  double err_acc = 0.0;
  auto inner = [&](double w) -> double {
    if (w == 0.0) return 0.0;
    const double vt = v.fourier(w);
    if (vt == 0.0) return 0.0;
    const double pref = vt * vt / (2.0 * std::numbers::pi) / (w * w) * 0.5;  // 1/2 = Jacobian
    const double s_max = std::max(400.0, 4000.0 / std::max(1e-3, at * std::abs(w)));
    auto g = [&](double s) {
      if (s == 0.0) return pref * t * t * w * w;  // limit 4 sin^2(tws/2)/(ws)^2 -> t^2 w^2
      double arg = 0.5 * t * w * s;
      double sn = std::sin(arg);
      return pref * 4.0 * sn * sn / (s * s);
    };
    auto res = adaptive_gk15_real(g, 0.0, s_max, rel_tol * pref * at * std::abs(w), 6000);
    if (!res.converged) converged = false;
    err_acc = std::max(err_acc, res.error);
    // Average-value tail beyond s_max: mean sin^2 = 1/2.
    double tail = pref * 2.0 / s_max;
    return 2.0 * res.value + 2.0 * tail;  // both signs of s
  };
  auto outer = adaptive_gk15_real(inner, -window, window, rel_tol, 800);
  if (!outer.converged) converged = false;
  return {outer.value, outer.error + err_acc, converged};
}

namespace {

// Values of the Lagrange-basis antiderivatives Int_{-1}^{x_i} l_j on the
// Gauss-Legendre nodes, used for collocation integration within a panel.
struct PanelRule {
  QuadratureRule gl;
  Eigen::MatrixXd cumulative;  // (n+1) x n; last row = full-panel weights

  explicit PanelRule(int n) : gl(gauss_legendre(n)) {
    QuadratureRule fine = gauss_legendre(4 * n);
    cumulative.resize(n + 1, n);
    auto lagrange = [&](int j, double x) {
      double r = 1.0;
      for (int k = 0; k < n; ++k)
        if (k != j) r *= (x - gl.nodes[k]) / (gl.nodes[j] - gl.nodes[k]);
      return r;
    };
    for (int i = 0; i <= n; ++i) {
      double upper = i < n ? gl.nodes[i] : 1.0;
      for (int j = 0; j < n; ++j) {
        // Map the fine rule from [-1, 1] to [-1, upper].
        double acc = 0.0;
        double h = 0.5 * (upper + 1.0);
        for (size_t q = 0; q < fine.nodes.size(); ++q)
          acc += fine.weights[q] * h * lagrange(j, -1.0 + h * (fine.nodes[q] + 1.0));
        cumulative(i, j) = acc;
      }
    }
  }
};

DysonResult dyson_cocycle_fixed(const Eigen::MatrixXcd& h0, const Eigen::MatrixXcd& vop, double t,
                                int order, int panels) {
  const int nodes_per_panel = 16;
  static const PanelRule rule(nodes_per_panel);
  const long d = h0.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h0);
  if (es.info() != Eigen::Success) throw std::runtime_error("dyson_cocycle: eigensolver failed");
  const Eigen::MatrixXcd u = es.eigenvectors();
  const Eigen::VectorXd ev = es.eigenvalues();
  const Eigen::MatrixXcd vt = u.adjoint() * vop * u;

  // All work happens in the H0 eigenbasis where V_s is an entrywise phase.
  auto v_at = [&](double s) {
    Eigen::MatrixXcd m(d, d);
    for (long r = 0; r < d; ++r)
      for (long c = 0; c < d; ++c) m(r, c) = std::exp(kI * (s * (ev(r) - ev(c)))) * vt(r, c);
    return m;
  };

  const int total_nodes = panels * nodes_per_panel;
  std::vector<double> s_nodes(total_nodes);
  std::vector<Eigen::MatrixXcd> vs(total_nodes);
  for (int p = 0; p < panels; ++p) {
    double a = t * p / panels, b = t * (p + 1) / panels;
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int i = 0; i < nodes_per_panel; ++i) {
      s_nodes[p * nodes_per_panel + i] = c + h * rule.gl.nodes[i];
      vs[p * nodes_per_panel + i] = v_at(s_nodes[p * nodes_per_panel + i]);
    }
  }

  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  std::vector<Eigen::MatrixXcd> tk(total_nodes, id);  // T_{k-1} at nodes
  Eigen::MatrixXcd gamma = id;                        // sum over orders at final time
  Eigen::MatrixXcd t_end = id;                        // T_k(t) for current order
  Complex ipow_acc = 1.0;
  for (int k = 1; k <= order; ++k) {
    std::vector<Eigen::MatrixXcd> gk(total_nodes);
    for (int j = 0; j < total_nodes; ++j) gk[j] = tk[j] * vs[j];
    std::vector<Eigen::MatrixXcd> next(total_nodes);
    Eigen::MatrixXcd carry = Eigen::MatrixXcd::Zero(d, d);
    for (int p = 0; p < panels; ++p) {
      double h = 0.5 * (t / panels);
      for (int i = 0; i < nodes_per_panel; ++i) {
        Eigen::MatrixXcd acc = carry;
        for (int j = 0; j < nodes_per_panel; ++j)
          acc += h * rule.cumulative(i, j) * gk[p * nodes_per_panel + j];
        next[p * nodes_per_panel + i] = std::move(acc);
      }
      Eigen::MatrixXcd panel_total = Eigen::MatrixXcd::Zero(d, d);
      for (int j = 0; j < nodes_per_panel; ++j)
        panel_total += h * rule.cumulative(nodes_per_panel, j) * gk[p * nodes_per_panel + j];
      carry += panel_total;
    }
    t_end = carry;
    tk = std::move(next);
    ipow_acc *= kI;
    gamma += ipow_acc * t_end;
  }
  DysonResult out;
  out.gamma = u * gamma * u.adjoint();
  return out;
}

}  // namespace

DysonResult dyson_cocycle(const Eigen::MatrixXcd& h0, const Eigen::MatrixXcd& vop, double t,
                          int order, const DysonOptions& opt) {
  if (order < 0) throw std::invalid_argument("dyson_cocycle: order must be >= 0");
  DysonResult coarse = dyson_cocycle_fixed(h0, vop, t, order, opt.panels);
  DysonResult fine = dyson_cocycle_fixed(h0, vop, t, order, 2 * opt.panels);
  fine.quadrature_error = (coarse.gamma - fine.gamma).norm();
  const double vnorm = vop.selfadjointView<Eigen::Lower>().operatorNorm();
  const double x = std::abs(t) * vnorm;
  double term = 1.0, tail = 0.0;
  for (int n = 1; n <= order; ++n) term *= x / n;
  for (int n = order + 1; n < order + 400; ++n) {
    term *= x / n;
    tail += term;
    if (term < 1e-18 * std::max(tail, 1.0)) break;
  }
  fine.tail_bound = tail;
  fine.tail_ok = tail <= opt.tail_tol;
  return fine;
}

double dyson_continuity_bound(double v1_norm, double v2_norm, double diff_norm, double t) {
  double s = v1_norm + v2_norm;
  if (s == 0.0) return 0.0;
  return diff_norm * (std::exp(std::abs(t) * s) - 1.0) / s;
}

OperatorMatrix evolved_resolvent(const TruncatedRep& rep, const Eigen::MatrixXcd& h, double t,
                                 Complex z, const Vec<double>& f) {
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("evolved_resolvent: H must be Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd phase(h.rows());
  for (long k = 0; k < h.rows(); ++k) phase(k) = std::exp(kI * (t * es.eigenvalues()(k)));
  Eigen::MatrixXcd ut = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
  OperatorMatrix r = resolvent_matrix(rep, z, f);
  r.mat = ut * r.mat * ut.adjoint();
  return r;
}

namespace {

struct ModeOps {
  Eigen::MatrixXd hosc;       // P^2 + Q^2 single mode
  Eigen::MatrixXd bond;       // V(Q (x) 1 - 1 (x) Q) on a neighbouring pair
  int n = 0;
};

ModeOps build_mode_ops(const LatticeModel& model) {
  ModeOps ops;
  const int n = model.cutoff;
  ops.n = n;
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(n, n), p = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    double v = std::sqrt((k + 1) / 2.0);
    q(k, k + 1) = v;
    q(k + 1, k) = v;
    p(k + 1, k) = kI * v;
    p(k, k + 1) = -kI * v;
  }
  ops.hosc = real_part(p * p + q * q);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(real_part(q));
  const Eigen::MatrixXd& uq = es.eigenvectors();
  const Eigen::VectorXd& dq = es.eigenvalues();
  Eigen::VectorXd diag(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) diag(i * n + j) = model.v(dq(i) - dq(j));
  Eigen::MatrixXd upair(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) upair(i * n + j, k * n + l) = uq(i, k) * uq(j, l);
  ops.bond = upair * diag.asDiagonal() * upair.transpose();
  return ops;
}

void check_interval(const LatticeModel& model, const SiteInterval& iv) {
  if (iv.lo > iv.hi) throw std::invalid_argument("lattice: empty site interval");
  if (iv.lo < model.first_site || iv.hi > model.last_site)
    throw std::invalid_argument("lattice: interval outside the model sites");
}

Eigen::VectorXd apply_axis_op(const Eigen::MatrixXd& op, int axes, int axis, int span, int n,
                              const Eigen::VectorXd& x) {
  // Apply op acting on `span` adjacent axes starting at `axis`.
  const long block = ipow(n, span);
  const long post = ipow(n, axes - axis - span);
  const long pre = ipow(n, axis);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
  for (long a = 0; a < pre; ++a)
    for (long c = 0; c < post; ++c) {
      const long base = a * block * post + c;
      for (long r = 0; r < block; ++r) {
        double acc = 0.0;
        for (long s = 0; s < block; ++s) acc += op(r, s) * x(base + s * post);
        out(base + r * post) = acc;
      }
    }
  return out;
}

struct LanczosOutcome {
  double e0 = 0.0, e1 = 0.0;
  Eigen::VectorXd v0;
  double residual = 0.0;
  bool converged = false;
};

LanczosOutcome lanczos_lowest(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
                              long dim, double rel_tol, int max_iter) {
  std::mt19937_64 rng(20260808);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(dim);
  for (long i = 0; i < dim; ++i) v(i) = gauss(rng);
  v.normalize();
  std::vector<Eigen::VectorXd> basis{v};
  std::vector<double> alpha, beta;
  LanczosOutcome out;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd w = apply(basis.back());
    double a = basis.back().dot(w);
    alpha.push_back(a);
    w -= a * basis.back();
    if (basis.size() > 1) w -= beta.back() * basis[basis.size() - 2];
    // Full reorthogonalization, twice.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) w -= b.dot(w) * b;
    double bnorm = w.norm();
    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      tri(i, i) = alpha[i];
      if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    double theta = es.eigenvalues()(0);
    double resid_est = m > 0 ? std::abs(bnorm * es.eigenvectors()(m - 1, 0)) : 1.0;
    double scale = std::max(1.0, std::abs(es.eigenvalues()(m - 1)));
    if ((resid_est <= rel_tol * scale && m >= 2) || bnorm < 1e-14 || it + 1 == max_iter) {
      out.e0 = theta;
      out.e1 = m >= 2 ? es.eigenvalues()(1) : theta;
      out.v0 = Eigen::VectorXd::Zero(dim);
      for (int i = 0; i < m; ++i) out.v0 += es.eigenvectors()(i, 0) * basis[i];
      out.v0.normalize();
      out.residual = (apply(out.v0) - theta * out.v0).norm();
      out.converged = out.residual <= rel_tol * scale * 10;
      return out;
    }
    beta.push_back(bnorm);
    basis.push_back(w / bnorm);
  }
  return out;
}

}  // namespace

Eigen::MatrixXd lattice_hamiltonian(const LatticeModel& model, const SiteInterval& interval) {
  check_interval(model, interval);
  const int k = interval.sites();
  const int n = model.cutoff;
  const long dim = ipow(n, k);
  if (dim > model.dense_budget)
    throw std::invalid_argument(
        "lattice_hamiltonian: dimension exceeds the dense budget; use the sparse ground-state path");
  ModeOps ops = build_mode_ops(model);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  // Assemble by applying the site/bond blocks to coordinate vectors.
  for (int site = 0; site < k; ++site) {
    const long post = ipow(n, k - site - 1);
    const long pre = ipow(n, site);
    for (long a = 0; a < pre; ++a)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          double v = ops.hosc(r, s);
          if (v == 0.0) continue;
          for (long c = 0; c < post; ++c) h(a * n * post + r * post + c, a * n * post + s * post + c) += v;
        }
  }
  for (int site = 0; site + 1 < k; ++site) {
    const long post = ipow(n, k - site - 2);
    const long pre = ipow(n, site);
    const long nn = static_cast<long>(n) * n;
    for (long a = 0; a < pre; ++a)
      for (long r = 0; r < nn; ++r)
        for (long s = 0; s < nn; ++s) {
          double v = ops.bond(r, s);
          if (v == 0.0) continue;
          for (long c = 0; c < post; ++c)
            h(a * nn * post + r * post + c, a * nn * post + s * post + c) += v;
        }
  }
  return h;
}

Eigen::VectorXd apply_lattice_hamiltonian(const LatticeModel& model, const SiteInterval& interval,
                                          const Eigen::VectorXd& x) {
  check_interval(model, interval);
  const int k = interval.sites();
  const int n = model.cutoff;
  ModeOps ops = build_mode_ops(model);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
  for (int site = 0; site < k; ++site) out += apply_axis_op(ops.hosc, k, site, 1, n, x);
  for (int site = 0; site + 1 < k; ++site) out += apply_axis_op(ops.bond, k, site, 2, n, x);
  return out;
}

GroundStateResult ground_state(const LatticeModel& model, const SiteInterval& interval) {
  check_interval(model, interval);
  const int k = interval.sites();
  const long dim = ipow(model.cutoff, k);
  GroundStateResult out;
  if (dim <= model.dense_budget) {
    Eigen::MatrixXd h = lattice_hamiltonian(model, interval);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error("ground_state: eigensolver failed");
    out.energy = es.eigenvalues()(0);
    out.vec = es.eigenvectors().col(0);
    out.gap = es.eigenvalues()(1) - es.eigenvalues()(0);
    out.residual = (h * out.vec - out.energy * out.vec).norm();
    return out;
  }
  ModeOps ops = build_mode_ops(model);
  auto apply = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(x.size());
    for (int site = 0; site < k; ++site) y += apply_axis_op(ops.hosc, k, site, 1, model.cutoff, x);
    for (int site = 0; site + 1 < k; ++site)
      y += apply_axis_op(ops.bond, k, site, 2, model.cutoff, x);
    return y;
  };
  LanczosOutcome lz = lanczos_lowest(apply, dim, 1e-8, 300);
  if (!lz.converged) throw std::runtime_error("ground_state: Lanczos did not converge");
  out.energy = lz.e0;
  out.vec = lz.v0;
  out.gap = lz.e1 - lz.e0;
  out.residual = lz.residual;
  out.used_lanczos = true;
  return out;
}

SandwichResult sandwich_check(const LatticeModel& model, const SiteInterval& n,
                              const SiteInterval& m, double mu) {
  check_interval(model, n);
  check_interval(model, m);
  if (m.lo < n.lo || m.hi > n.hi)
    throw std::invalid_argument("sandwich_check: m must be a sub-interval of n");
  if (mu <= 0.0) throw std::invalid_argument("sandwich_check: mu must be positive");
  GroundStateResult gs_n = ground_state(model, n);
  GroundStateResult gs_m = ground_state(model, m);
  Eigen::MatrixXd hm = lattice_hamiltonian(model, m);
  const long dm = hm.rows();
  hm.diagonal().array() += mu - gs_m.energy;  // mu + H~_m
  Eigen::LLT<Eigen::MatrixXd> llt(hm);
  if (llt.info() != Eigen::Success) throw std::runtime_error("sandwich_check: factorization failed");

  const int nc = model.cutoff;
  const long pre = ipow(nc, m.lo - n.lo);
  const long post = ipow(nc, n.hi - m.hi);
  Eigen::MatrixXd slices(dm, pre * post);
  for (long a = 0; a < pre; ++a)
    for (long b = 0; b < dm; ++b)
      for (long c = 0; c < post; ++c) slices(b, a * post + c) = gs_n.vec(a * dm * post + b * post + c);
  Eigen::MatrixXd solved = llt.solve(slices);
  SandwichResult out;
  out.value = (slices.array() * solved.array()).sum();
  out.lower = 1.0 / (mu + 4.0 * model.v.norm());
  out.upper = 1.0 / mu;
  const double slack = 10.0 * (gs_n.residual + gs_m.residual) + 1e-12;
  out.holds = out.value >= out.lower - slack && out.value <= out.upper + slack;
  return out;
}

SuperadditivityResult energy_superadditivity_check(const LatticeModel& model,
                                                   const SiteInterval& n, const SiteInterval& m) {
  check_interval(model, n);
  check_interval(model, m);
  if (m.lo < n.lo || m.hi > n.hi)
    throw std::invalid_argument("energy_superadditivity_check: m must be a sub-interval of n");
  double e_n = ground_state(model, n).energy;
  double e_m = ground_state(model, m).energy;
  double e_rest = 0.0;
  if (m.lo > n.lo) e_rest += ground_state(model, {n.lo, m.lo - 1}).energy;
  if (m.hi < n.hi) e_rest += ground_state(model, {m.hi + 1, n.hi}).energy;
  SuperadditivityResult out;
  out.value = e_m + e_rest - e_n;
  out.bound = -2.0 * model.v.norm();
  out.holds = out.value >= out.bound - 1e-8;
  return out;
}

double hermite_weighted_norm_sq(int n) {
  if (n < 0) throw std::invalid_argument("hermite_weighted_norm_sq: n >= 0 required");
  double r = 1.0 / std::sqrt(2.0);
  for (int k = 1; k <= n; ++k) r *= (2.0 * k - 1.0) / (2.0 * k);
  return r;
}

namespace {

// Hermite functions with the Gaussian stripped: h_n(x) = Phi_n(x) e^{x^2/2},
// by the stable three-term recurrence.
std::vector<double> hermite_h_values(int count, double x) {
  std::vector<double> h(count);
  h[0] = std::pow(std::numbers::pi, -0.25);
  if (count > 1) h[1] = std::sqrt(2.0) * x * h[0];
  for (int n = 1; n + 1 < count; ++n)
    h[n + 1] = std::sqrt(2.0 / (n + 1.0)) * x * h[n] - std::sqrt(n / (n + 1.0)) * h[n - 1];
  return h;
}

Eigen::MatrixXd hermite_overlaps(const Potential& v, int m_cutoff, int nodes) {
  QuadratureRule gh = gauss_hermite(nodes);
  Eigen::MatrixXd overlap = Eigen::MatrixXd::Zero(m_cutoff, m_cutoff);
  for (int q = 0; q < nodes; ++q) {
    const double x = gh.nodes[q];
    const double vx = v(std::sqrt(2.0) * x);
    if (vx == 0.0) continue;
    std::vector<double> h = hermite_h_values(m_cutoff, x);
    for (int a = 0; a < m_cutoff; ++a)
      for (int b = a; b < m_cutoff; ++b) overlap(a, b) += gh.weights[q] * vx * h[a] * h[b];
  }
  for (int a = 0; a < m_cutoff; ++a)
    for (int b = 0; b < a; ++b) overlap(a, b) = overlap(b, a);
  return overlap;
}

}  // namespace

HermiteElements hermite_matrix_elements(const Potential& v, double t, int m_cutoff) {
  if (m_cutoff < 2) throw std::invalid_argument("hermite_matrix_elements: cutoff >= 2 required");
  const int nodes = std::max(320, 10 * m_cutoff);
  Eigen::MatrixXd overlap = hermite_overlaps(v, m_cutoff, nodes);
  Eigen::MatrixXd check = hermite_overlaps(v, m_cutoff, nodes / 2);
  HermiteElements out;
  out.quadrature_defect = (overlap - check).cwiseAbs().maxCoeff();
  // Analytic potentials converge spectrally; non-analytic compactly
  // supported ones degrade and get flagged here.
  out.quadrature_ok = out.quadrature_defect <= 1e-8 * std::max(1.0, overlap.cwiseAbs().maxCoeff());
  out.c.resize(m_cutoff, m_cutoff);
  for (int m = 0; m < m_cutoff; ++m)
    for (int n = 0; n < m_cutoff; ++n) {
      Complex w;
      if (m == n) {
        w = t;
      } else {
        const double k = 2.0 * (m - n);
        w = (std::exp(kI * (t * k)) - 1.0) / (kI * k);
      }
      out.c(m, n) = w * overlap(m, n);
    }
  double sup = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    double x = -10.0 + 20.0 * i / 4000.0;
    sup = std::max(sup, std::abs(v(std::sqrt(2.0) * x)) * std::exp(x * x));
  }
  out.k_const = sup;
  return out;
}

double hermite_bound_entry(double k_const, double t, int m, int n) {
  if (m == n) {
    if (n == 0) return std::abs(t) * k_const;
    return std::abs(t) * k_const / std::sqrt(static_cast<double>(n));
  }
  if (m == 0) return k_const / std::pow(static_cast<double>(n), 1.25);
  if (n == 0) return k_const / std::pow(static_cast<double>(m), 1.25);
  return k_const / (std::pow(static_cast<double>(m), 0.25) * std::pow(static_cast<double>(n), 0.25) *
                    std::abs(static_cast<double>(m - n)));
}

CommutatorBoundResult finite_volume_commutator_bound(int n0, int n, double t, double v_norm,
                                                     double r0_norm) {
  if (n0 < 0 || n < 0) throw std::invalid_argument("finite_volume_commutator_bound: negative order");
  CommutatorBoundResult out;
  out.converges = std::abs(t) * 4.0 * v_norm < 1.0;
  auto term_at = [&](int k) {
    double c = r0_norm;
    for (int j = 1; j <= k; ++j) c *= std::abs(t) * 4.0 * v_norm * (n0 + j) / j;
    return c;
  };
  out.term = term_at(n);
  if (!out.converges) {
    out.tail = std::numeric_limits<double>::infinity();
    return out;
  }
  double c = term_at(n);
  double tail = 0.0;
  for (int k = n + 1; k < n + 100000; ++k) {
    c *= std::abs(t) * 4.0 * v_norm * (n0 + k) / k;
    tail += c;
    if (c < 1e-18 * std::max(tail, 1e-300)) break;
  }
  out.tail = tail;
  return out;
}

}  // namespace ralg

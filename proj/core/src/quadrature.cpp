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

#include "resolvalg/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ralg {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration from the Chebyshev estimate.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p0 = 0.0, p1 = 0.0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

QuadratureRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n >= 1 required");
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double b = std::sqrt(k / 2.0);
    j(k - 1, k) = b;
    j(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  if (es.info() != Eigen::Success) throw std::runtime_error("gauss_hermite: eigensolver failed");
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const double mu0 = std::sqrt(std::numbers::pi);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = es.eigenvalues()(i);
    double v0 = es.eigenvectors()(0, i);
    r.weights[i] = mu0 * v0 * v0;
  }
  return r;
}

QuadratureResult<std::complex<double>> adaptive_gk15(
    const std::function<std::complex<double>(double)>& f, double a, double b, double tol,
    int max_segments) {
  auto norm = [](std::complex<double> v) { return std::abs(v); };
  auto axpy = [](std::complex<double>* y, std::complex<double> x, double w) { *y += x * w; };
  return detail::adaptive_gk15_impl<std::complex<double>>(f, a, b, tol, norm, axpy, max_segments);
}

QuadratureResult<double> adaptive_gk15_real(const std::function<double(double)>& f, double a,
                                            double b, double tol, int max_segments) {
  auto norm = [](double v) { return std::abs(v); };
  auto axpy = [](double* y, double x, double w) { *y += x * w; };
  return detail::adaptive_gk15_impl<double>(f, a, b, tol, norm, axpy, max_segments);
}

QuadratureResult<Eigen::MatrixXcd> adaptive_gk15_matrix(
    const std::function<Eigen::MatrixXcd(double)>& f, double a, double b, double tol,
    int max_segments) {
  auto norm = [](const Eigen::MatrixXcd& v) { return v.norm(); };
  auto axpy = [](Eigen::MatrixXcd* y, const Eigen::MatrixXcd& x, double w) {
    if (y->size() == 0)
      *y = x * w;
    else
      *y += x * w;
  };
  return detail::adaptive_gk15_impl<Eigen::MatrixXcd>(f, a, b, tol, norm, axpy, max_segments);
}

}  // namespace ralg

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

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <functional>
#include <vector>

namespace ralg {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

/// Gauss-Hermite rule (weight e^{-x^2}) via Golub-Welsch.
QuadratureRule gauss_hermite(int n);

template <class V>
struct QuadratureResult {
  V value;
  double error = 0.0;
  bool converged = true;
  int evaluations = 0;
};

namespace detail {

// Kronrod-15 abscissae (positive half) and weights; Gauss-7 is embedded
// at the odd positions.
inline constexpr double kGk15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kGk15WeightsK[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kGk15WeightsG[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class V, class Fn, class Norm, class Axpy>
void gk15_segment(const Fn& f, double a, double b, V* value, double* err, const Norm& norm,
                  const Axpy& axpy, V* scratch_g) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  bool first = true;
  for (int i = 0; i < 8; ++i) {
    const double wk = kGk15WeightsK[i] * h;
    const double wg = (i % 2 == 1) ? kGk15WeightsG[i / 2] * h : 0.0;
    if (i == 7) {
      V fx = f(c);
      if (first) {
        *value = fx * wk;
        *scratch_g = fx * wg;
        first = false;
      } else {
        axpy(value, fx, wk);
        axpy(scratch_g, fx, wg);
      }
      break;
    }
    V fp = f(c + h * kGk15Nodes[i]);
    V fm = f(c - h * kGk15Nodes[i]);
    if (first) {
      *value = fp * wk;
      axpy(value, fm, wk);
      *scratch_g = fp * wg;
      axpy(scratch_g, fm, wg);
      first = false;
    } else {
      axpy(value, fp, wk);
      axpy(value, fm, wk);
      axpy(scratch_g, fp, wg);
      axpy(scratch_g, fm, wg);
    }
  }
  V diff = *value;
  axpy(&diff, *scratch_g, -1.0);
  *err = norm(diff);
}

template <class V, class Fn, class Norm, class Axpy>
QuadratureResult<V> adaptive_gk15_impl(const Fn& f, double a, double b, double tol,
                                       const Norm& norm, const Axpy& axpy, int max_segments,
                                       int initial_segments = 8) {
  struct Seg {
    double a, b, err;
    V value;
  };
  QuadratureResult<V> out;
  V scratch;
  // Seed with several segments so narrow-support integrands cannot slip
  // between the nodes of a single coarse panel.
  const int n0 = std::max(1, std::min(initial_segments, max_segments));
  std::vector<Seg> segs;
  for (int i = 0; i < n0; ++i) {
    Seg s{a + (b - a) * i / n0, a + (b - a) * (i + 1) / n0, 0.0, {}};
    gk15_segment<V>(f, s.a, s.b, &s.value, &s.err, norm, axpy, &scratch);
    out.evaluations += 15;
    segs.push_back(std::move(s));
  }
  auto total_error = [&] {
    double e = 0.0;
    for (const auto& s : segs) e += s.err;
    return e;
  };
  while (total_error() > tol) {
    if (static_cast<int>(segs.size()) >= max_segments) {
      out.converged = false;
      break;
    }
    size_t worst = 0;
    for (size_t i = 1; i < segs.size(); ++i)
      if (segs[i].err > segs[worst].err) worst = i;
    Seg s = segs[worst];
    segs.erase(segs.begin() + static_cast<long>(worst));
    double mid = 0.5 * (s.a + s.b);
    Seg left{s.a, mid, 0.0, {}}, right{mid, s.b, 0.0, {}};
    gk15_segment<V>(f, left.a, left.b, &left.value, &left.err, norm, axpy, &scratch);
    gk15_segment<V>(f, right.a, right.b, &right.value, &right.err, norm, axpy, &scratch);
    out.evaluations += 30;
    segs.push_back(std::move(left));
    segs.push_back(std::move(right));
  }
  bool first = true;
  for (auto& s : segs) {
    if (first) {
      out.value = std::move(s.value);
      first = false;
    } else {
      axpy(&out.value, s.value, 1.0);
    }
  }
  out.error = total_error();
  return out;
}

}  // namespace detail

QuadratureResult<std::complex<double>> adaptive_gk15(
    const std::function<std::complex<double>(double)>& f, double a, double b, double tol,
    int max_segments = 4000);

QuadratureResult<double> adaptive_gk15_real(const std::function<double(double)>& f, double a,
                                            double b, double tol, int max_segments = 4000);

QuadratureResult<Eigen::MatrixXcd> adaptive_gk15_matrix(
    const std::function<Eigen::MatrixXcd(double)>& f, double a, double b, double tol,
    int max_segments = 800);

}  // namespace ralg

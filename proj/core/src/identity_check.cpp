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

#include "resolvalg/identity_check.hpp"

#include <random>

namespace ralg {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::SymbolicallyProved: return "symbolically-proved";
    case Verdict::NumericallyConfirmed: return "numerically-confirmed";
    case Verdict::Refuted: return "refuted";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

/// Max residual ||pi(diff) psi|| over random probe states supported on
/// product levels < cutoff/4.
double oracle_residual(const SymplecticSpace<double>& space, const PolyD& diff, int cutoff,
                       int probes, uint64_t seed) {
  auto basis = symplectic_basis(space);
  TruncatedRep rep(space, basis, cutoff);
  const int low = std::max(1, cutoff / 4);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = rep.modes();
  double worst = 0.0;
  for (int p = 0; p < probes; ++p) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(rep.dim());
    for (long i = 0; i < rep.dim(); ++i) {
      long rem = i;
      bool lowlevel = true;
      for (int l = 0; l < n; ++l) {
        long digit = rem % cutoff;
        rem /= cutoff;
        if (digit >= low) {
          lowlevel = false;
          break;
        }
      }
      if (lowlevel) psi(i) = Complex(gauss(rng), gauss(rng));
    }
    psi.normalize();
    worst = std::max(worst, apply_poly(rep, diff, psi).norm());
  }
  return worst;
}

}  // namespace

IdentityCheckResult check_identity(const SymplecticSpace<double>& space, const PolyD& lhs,
                                   const PolyD& rhs, const IdentityCheckOptions& opt) {
  IdentityCheckResult res;
  SimplifyResult<FieldF64> sym = simplify<FieldF64>(space, lhs - rhs, opt.simplify_options);
  res.rewrite_steps = sym.steps;
  if (sym.poly.is_zero()) {
    res.verdict = Verdict::SymbolicallyProved;
    return res;
  }
  PolyD diff = lhs - rhs;
  res.residual_lo = oracle_residual(space, diff, opt.cutoff_lo, opt.probes, opt.seed);
  res.residual_hi = oracle_residual(space, diff, opt.cutoff_hi, opt.probes, opt.seed + 1);
  if (res.residual_hi <= opt.tol && res.residual_hi <= res.residual_lo * 1.5)
    res.verdict = Verdict::NumericallyConfirmed;
  else if (res.residual_hi >= opt.refute_floor && res.residual_hi >= 0.3 * res.residual_lo)
    res.verdict = Verdict::Refuted;
  else
    res.verdict = Verdict::Inconclusive;
  return res;
}

}  // namespace ralg

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

// Two-tier identity checker: bounded rewriting first, then the truncated
// Fock oracle at two cutoffs with low-level probe states.

#include <cstdint>

#include "resolvalg/fock.hpp"
#include "resolvalg/rewrite.hpp"

namespace ralg {

enum class Verdict {
  SymbolicallyProved,
  NumericallyConfirmed,
  Refuted,
  Inconclusive,
};

const char* to_string(Verdict v);

struct IdentityCheckOptions {
  SimplifyOptions<FieldF64> simplify_options;
  int cutoff_lo = 32;
  int cutoff_hi = 64;
  int probes = 4;
  double tol = 1e-5;          ///< confirm when the high-cutoff residual is below
  double refute_floor = 1e-3; ///< refute when residuals stay above and do not shrink
  uint64_t seed = 7;
};

struct IdentityCheckResult {
  Verdict verdict = Verdict::Inconclusive;
  double residual_lo = 0.0;  ///< oracle residual at cutoff_lo (when evaluated)
  double residual_hi = 0.0;
  int rewrite_steps = 0;
};

IdentityCheckResult check_identity(const SymplecticSpace<double>& space, const PolyD& lhs,
                                   const PolyD& rhs, const IdentityCheckOptions& opt = {});

}  // namespace ralg

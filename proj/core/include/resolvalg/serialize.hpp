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

// JSON wire formats used by the batch CLI:
//   polynomial    {"dim": d, "terms": [{"coeff": [re, im],
//                   "factors": [{"z": [re, im], "f": [coords...]}]}]}
//   space         {"standard": n} or {"dim": d, "form": [[...]]}
//   covariance    {"matrix": [[[re, im], ...], ...]}  (complex entries)

#include <json.hpp>

#include "resolvalg/poly.hpp"
#include "resolvalg/states.hpp"
#include "resolvalg/symplectic.hpp"

namespace ralg {

nlohmann::json poly_to_json(const PolyD& p);
PolyD poly_from_json(const nlohmann::json& j);

nlohmann::json space_to_json(const SymplecticSpace<double>& space);
SymplecticSpace<double> space_from_json(const nlohmann::json& j);

nlohmann::json covariance_to_json(const QuasifreeCovariance& cov);
QuasifreeCovariance covariance_from_json(const SymplecticSpace<double>& space,
                                         const nlohmann::json& j);

}  // namespace ralg

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

#include "resolvalg/serialize.hpp"

#include <stdexcept>

namespace ralg {

using nlohmann::json;

json poly_to_json(const PolyD& p) {
  json terms = json::array();
  for (const auto& m : p.terms()) {
    json factors = json::array();
    for (const auto& g : m.factors) {
      json f = json::array();
      for (double x : g.f) f.push_back(x);
      factors.push_back({{"z", {g.z.real(), g.z.imag()}}, {"f", f}});
    }
    terms.push_back({{"coeff", {m.coeff.real(), m.coeff.imag()}}, {"factors", factors}});
  }
  return {{"dim", p.dim()}, {"terms", terms}};
}

PolyD poly_from_json(const json& j) {
  if (!j.contains("dim") || !j.contains("terms"))
    throw std::invalid_argument("poly_from_json: missing dim/terms");
  const int dim = j.at("dim").get<int>();
  PolyD p(dim);
  for (const auto& t : j.at("terms")) {
    Complex coeff{t.at("coeff").at(0).get<double>(), t.at("coeff").at(1).get<double>()};
    std::vector<std::pair<Complex, Vec<double>>> factors;
    for (const auto& g : t.at("factors")) {
      Complex z{g.at("z").at(0).get<double>(), g.at("z").at(1).get<double>()};
      Vec<double> f;
      for (const auto& x : g.at("f")) f.push_back(x.get<double>());
      factors.emplace_back(z, std::move(f));
    }
    p.add_raw_monomial(coeff, factors);
  }
  return p;
}

json space_to_json(const SymplecticSpace<double>& space) {
  json form = json::array();
  for (int i = 0; i < space.dim(); ++i) {
    json row = json::array();
    for (int k = 0; k < space.dim(); ++k) row.push_back(space.form()(i, k));
    form.push_back(row);
  }
  return {{"dim", space.dim()}, {"form", form}};
}

SymplecticSpace<double> space_from_json(const json& j) {
  if (j.contains("standard")) {
    int n = j.at("standard").get<int>();
    if (n < 1) throw std::invalid_argument("space_from_json: standard mode count must be >= 1");
    return SymplecticSpace<double>::standard(n);
  }
  if (!j.contains("dim") || !j.contains("form"))
    throw std::invalid_argument("space_from_json: need standard or dim+form");
  const int d = j.at("dim").get<int>();
  Mat<double> form(d, d);
  const auto& rows = j.at("form");
  if (static_cast<int>(rows.size()) != d)
    throw std::invalid_argument("space_from_json: form shape mismatch");
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(rows.at(i).size()) != d)
      throw std::invalid_argument("space_from_json: form shape mismatch");
    for (int k = 0; k < d; ++k) form(i, k) = rows.at(i).at(k).get<double>();
  }
  return SymplecticSpace<double>(std::move(form));
}

json covariance_to_json(const QuasifreeCovariance& cov) {
  json m = json::array();
  for (int i = 0; i < cov.space().dim(); ++i) {
    json row = json::array();
    for (int k = 0; k < cov.space().dim(); ++k)
      row.push_back({cov.matrix()(i, k).real(), cov.matrix()(i, k).imag()});
    m.push_back(row);
  }
  return {{"matrix", m}};
}

QuasifreeCovariance covariance_from_json(const SymplecticSpace<double>& space, const json& j) {
  const int d = space.dim();
  Eigen::MatrixXcd c(d, d);
  const auto& rows = j.at("matrix");
  if (static_cast<int>(rows.size()) != d)
    throw std::invalid_argument("covariance_from_json: matrix shape mismatch");
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      c(i, k) = Complex(rows.at(i).at(k).at(0).get<double>(), rows.at(i).at(k).at(1).get<double>());
  return QuasifreeCovariance(space, std::move(c));
}

}  // namespace ralg

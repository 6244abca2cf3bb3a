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

#include <benchmark/benchmark.h>

#include <random>

#include "resolvalg/dynamics.hpp"
#include "resolvalg/rewrite.hpp"
#include "resolvalg/states.hpp"

using namespace ralg;

namespace {

PolyD random_relation_instance(std::mt19937_64& rng, const SymplecticSpace<double>& space) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const int dim = space.dim();
  Vec<double> f(dim), g(dim);
  for (int k = 0; k < dim; ++k) {
    f[k] = u(rng);
    g[k] = u(rng);
  }
  double lam = 1.0 + std::abs(u(rng)), mu = 1.0 + std::abs(u(rng));
  double s = sigma(space, f, g);
  PolyD rf = PolyD::resolvent(dim, {lam, 0.0}, f);
  PolyD rg = PolyD::resolvent(dim, {mu, 0.0}, g);
  Vec<double> fg(dim);
  for (int k = 0; k < dim; ++k) fg[k] = f[k] + g[k];
  PolyD rh = PolyD::resolvent(dim, {lam + mu, 0.0}, fg);
  return rf * rg - rh * (rf + rg + (rf * rf * rg).scaled({0.0, s}));
}

void bm_simplify_sum_relation(benchmark::State& state) {
  auto space = SymplecticSpace<double>::standard(2);
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    PolyD p = random_relation_instance(rng, space);
    auto res = simplify<FieldF64>(space, p);
    benchmark::DoNotOptimize(res.poly.is_zero());
  }
}
BENCHMARK(bm_simplify_sum_relation);

void bm_resolvent_solve(benchmark::State& state) {
  auto space = SymplecticSpace<double>::standard(1);
  auto basis = symplectic_basis(space);
  TruncatedRep rep(space, basis, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto r = resolvent_matrix(rep, {1.0, 0.0}, basis[0]);
    benchmark::DoNotOptimize(r.mat(0, 0));
  }
}
BENCHMARK(bm_resolvent_solve)->Arg(64)->Arg(128);

void bm_quasifree_two_chain(benchmark::State& state) {
  auto space = SymplecticSpace<double>::standard(2);
  auto basis = symplectic_basis(space);
  QuasifreeCovariance cov = fock_covariance(space, basis);
  Vec<double> f = basis[0], g = basis[2];
  for (auto _ : state) {
    auto v = quasifree_resolvent_value(cov, {{1.0, f}, {1.3, g}});
    benchmark::DoNotOptimize(v.value);
  }
}
BENCHMARK(bm_quasifree_two_chain);

void bm_lattice_ground_state(benchmark::State& state) {
  LatticeModel model;
  model.first_site = 0;
  model.last_site = 1;
  model.cutoff = static_cast<int>(state.range(0));
  model.v = Potential::gaussian_bump(-0.25, 1.1);
  for (auto _ : state) {
    auto gs = ground_state(model, {0, 1});
    benchmark::DoNotOptimize(gs.energy);
  }
}
BENCHMARK(bm_lattice_ground_state)->Arg(8)->Arg(12);

void bm_hermite_elements(benchmark::State& state) {
  Potential v = Potential::gaussian_bump(0.7, 1.4);
  for (auto _ : state) {
    auto he = hermite_matrix_elements(v, 1.0, 32);
    benchmark::DoNotOptimize(he.c(0, 0));
  }
}
BENCHMARK(bm_hermite_elements);

}  // namespace

BENCHMARK_MAIN();

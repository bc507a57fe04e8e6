// Copyright 2026 The schwinger-qre Authors
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

#include "schwinger/costs.hpp"
#include "schwinger/dyson.hpp"
#include "schwinger/oracle.hpp"
#include "schwinger/planner.hpp"
#include "schwinger/trotter.hpp"

using namespace schwinger;

namespace {

ModelParams chain(int n, int lambda) { return ModelParams{0.5, 1.0, n, lambda, 0.0, Boundary::open}; }

void BM_BuildHamiltonian(benchmark::State& state) {
  const auto p = chain(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(build_hamiltonian(p));
  state.SetLabel("dim " + std::to_string(p.hilbert_dim()));
}
BENCHMARK(BM_BuildHamiltonian)->DenseRange(2, 5);

void BM_ExactEvolution(benchmark::State& state) {
  const auto h = build_hamiltonian(chain(static_cast<int>(state.range(0)), 2));
  for (auto _ : state) benchmark::DoNotOptimize(exact_evolution(h, 1.0));
}
BENCHMARK(BM_ExactEvolution)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_Pf2Operator(benchmark::State& state) {
  const auto terms = split_interaction(chain(3, 2));
  for (auto _ : state) benchmark::DoNotOptimize(pf2_operator(terms, 1.0, state.range(0)));
}
BENCHMARK(BM_Pf2Operator)->RangeMultiplier(4)->Range(1, 64)->Unit(benchmark::kMillisecond);

void BM_DysonSeries(benchmark::State& state) {
  const auto terms = split_interaction(chain(3, 2));
  const auto h0 = terms.h0();
  const bool collisions = state.range(1) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dyson_series(h0, terms.h_i, 0.5, 4, state.range(0), collisions));
  }
}
BENCHMARK(BM_DysonSeries)
    ->ArgsProduct({{64, 256, 1024}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

void BM_MakePlan(benchmark::State& state) {
  PlanRequest req;
  req.method = state.range(0) ? Method::ip : Method::pf2;
  for (auto _ : state) benchmark::DoNotOptimize(make_plan(req));
}
BENCHMARK(BM_MakePlan)->Arg(0)->Arg(1);

void BM_CompareSweep(benchmark::State& state) {
  CompareRequest req;
  for (int i = 1; i <= 10; ++i) req.t_grid.push_back(5.0 * i);
  req.eps_grid = {1e-1, 1e-2, 1e-3};
  for (auto _ : state) benchmark::DoNotOptimize(compare(req));
}
BENCHMARK(BM_CompareSweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

/*
 * Copyright 2026 The Recovery Lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <benchmark/benchmark.h>

#include <vector>

#include "recovery/lrr/affine.hpp"
#include "recovery/lrr/model.hpp"
#include "recovery/lrr/simulation.hpp"
#include "recovery/lrr/yields.hpp"

namespace {

using namespace recovery::lrr;

void BM_Solve(benchmark::State& state) {
  const LrrParams p = LrrParams::defaults();
  for (auto _ : state) benchmark::DoNotOptimize(solve(p));
}
BENCHMARK(BM_Solve);

void BM_AffineCoefficients(benchmark::State& state) {
  const LrrSolution sol = solve(LrrParams::defaults());
  std::vector<double> horizons;
  for (long t = 1; t <= state.range(0); ++t) horizons.push_back(static_cast<double>(t));
  for (auto _ : state) {
    benchmark::DoNotOptimize(affine_coefficients(sol.sdf, sol.params.dynamics, horizons));
  }
}
BENCHMARK(BM_AffineCoefficients)->Arg(12)->Arg(120)->Arg(1200);

void BM_SimulateExpectation(benchmark::State& state) {
  const LrrSolution sol = solve(LrrParams::defaults());
  SimulationOptions o;
  o.n_paths = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        simulate_expectation(sol.sdf, sol.params.dynamics, sol.params.dynamics.iota, {12.0}, o));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 120);
}
BENCHMARK(BM_SimulateExpectation)->Arg(1'000)->Arg(10'000)->Unit(benchmark::kMillisecond);

void BM_YieldCurves(benchmark::State& state) {
  const LrrSolution sol = solve(LrrParams::defaults());
  SimulationOptions o;
  o.n_paths = state.range(0);
  o.burn_in = 60.0;
  const auto density = stationary_density(sol.params.dynamics, o);
  std::vector<double> horizons;
  for (int t = 12; t <= 1200; t += 12) horizons.push_back(t);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        yield_curves(sol, horizons, CashFlow::kConsumption, density.samples));
  }
}
BENCHMARK(BM_YieldCurves)->Arg(1'000)->Arg(10'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

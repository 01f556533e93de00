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

#include "recovery/bounds/bound.hpp"
#include "recovery/bounds/problem.hpp"
#include "recovery/markov/recovery.hpp"
#include "recovery/preferences/preferences.hpp"

namespace {

using namespace recovery;

markov::MarkovPricingEconomy recursive_economy() {
  markov::Matrix p(2, 2);
  p << 0.9, 0.1, 0.1, 0.9;
  markov::Vector c(2);
  c << 1.0, 2.0;
  const markov::StochasticMatrix transition(p);
  const preferences::RecursiveUtilitySpec spec{0.02, 10.0, 0.0, c};
  const auto value = preferences::solve_continuation_value(spec, transition);
  return markov::build_economy(transition, preferences::recursive_sdf(spec, transition, value));
}

void BM_SampledBound(benchmark::State& state) {
  const auto e = recursive_economy();
  const auto rec = markov::recover(e);
  const auto menu = bounds::concat(bounds::bond_payoff(2), bounds::arrow_payoffs(2));
  const auto problem = bounds::generate_problem_from_chain(
      e, rec, menu, bounds::SampledMode{state.range(0), 7});
  const double theta = static_cast<double>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bounds::unconditional_bound(problem, theta));
  }
}
BENCHMARK(BM_SampledBound)
    ->ArgsProduct({{1'000, 100'000}, {-1, 0, 1}})
    ->Unit(benchmark::kMillisecond);

void BM_ValueFunction(benchmark::State& state) {
  markov::Matrix p(2, 2);
  p << 0.9, 0.1, 0.1, 0.9;
  markov::Vector c(2);
  c << 1.0, 2.0;
  const markov::StochasticMatrix transition(p);
  const preferences::RecursiveUtilitySpec spec{0.02, static_cast<double>(state.range(0)), 0.0, c};
  for (auto _ : state) {
    benchmark::DoNotOptimize(preferences::solve_continuation_value(spec, transition));
  }
}
BENCHMARK(BM_ValueFunction)->Arg(2)->Arg(10)->Arg(50);

}  // namespace

BENCHMARK_MAIN();

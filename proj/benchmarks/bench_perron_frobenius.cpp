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

#include <random>

#include "recovery/markov/perron_frobenius.hpp"
#include "recovery/markov/recovery.hpp"

namespace {

using recovery::markov::Index;
using recovery::markov::Matrix;

Matrix random_prices(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  Matrix q(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) q(i, j) = u(rng);
    q.row(i) *= 0.97 / q.row(i).sum();
  }
  return q;
}

void BM_DominantEigenpair(benchmark::State& state) {
  const Matrix q = random_prices(state.range(0), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(recovery::markov::dominant_eigenpair(q));
  }
}
BENCHMARK(BM_DominantEigenpair)->RangeMultiplier(4)->Range(4, 256);

void BM_Recover(benchmark::State& state) {
  const recovery::markov::PricingMatrix q(random_prices(state.range(0), 2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(recovery::markov::recover(q));
  }
}
BENCHMARK(BM_Recover)->RangeMultiplier(4)->Range(4, 256);

// The dense alternative used for the uniqueness check.
void BM_EnumeratePositiveEigen(benchmark::State& state) {
  const recovery::markov::PricingMatrix q(random_prices(state.range(0), 3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(recovery::markov::enumerate_positive_eigen(q));
  }
}
BENCHMARK(BM_EnumeratePositiveEigen)->RangeMultiplier(4)->Range(4, 256);

void BM_ForwardOnePeriodLimit(benchmark::State& state) {
  const recovery::markov::PricingMatrix q(random_prices(10, 4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(recovery::markov::forward_one_period_limit(q, state.range(0)));
  }
}
BENCHMARK(BM_ForwardOnePeriodLimit)->Arg(10)->Arg(200)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();

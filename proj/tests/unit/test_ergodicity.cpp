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
#include <gtest/gtest.h>

#include "economies.hpp"
#include "recovery/markov/ergodicity.hpp"

namespace recovery::markov {
namespace {

TEST(Ergodicity, SymmetricTwoStatePasses) {
  const auto r = ergodicity_check(StochasticMatrix(testing::two_state_transition()));
  EXPECT_TRUE(r.passed());
  ASSERT_EQ(r.periods.size(), 1u);
  EXPECT_EQ(r.periods[0], 1);
}

TEST(Ergodicity, PermutationIsPeriodic) {
  Matrix p(2, 2);
  p << 0, 1, 1, 0;
  const auto r = ergodicity_check(StochasticMatrix(p));
  EXPECT_TRUE(r.irreducible);
  EXPECT_FALSE(r.aperiodic);
  EXPECT_EQ(r.periods.at(0), 2);
  EXPECT_FALSE(r.diagnostics.empty());
}

TEST(Ergodicity, BlockDiagonalIsReducible) {
  Matrix p = Matrix::Zero(4, 4);
  p.topLeftCorner(2, 2) = testing::two_state_transition();
  p.bottomRightCorner(2, 2) = testing::two_state_transition();
  const auto r = ergodicity_check(StochasticMatrix(p));
  EXPECT_FALSE(r.irreducible);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.classes.size(), 2u);
}

TEST(Ergodicity, ThreeCycleWithChordHasPeriodOne) {
  // Cycles of length 3 and 2 through state 0: gcd 1.
  Matrix p = Matrix::Zero(3, 3);
  p << 0, 1, 0, 0.5, 0, 0.5, 1, 0, 0;
  EXPECT_TRUE(ergodicity_check(StochasticMatrix(p)).passed());
  // Pure 3-cycle: period 3.
  p << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  const auto r = ergodicity_check(StochasticMatrix(p));
  EXPECT_EQ(r.periods.at(0), 3);
}

TEST(Ergodicity, TransientStateMakesChainReducible) {
  Matrix p(3, 3);
  p << 0.5, 0.5, 0.0, 0.0, 0.5, 0.5, 0.0, 0.5, 0.5;
  const auto r = ergodicity_check(StochasticMatrix(p));
  EXPECT_FALSE(r.irreducible);
}

TEST(Ergodicity, AgreesWithPrimitivityOnRandomSparseChains) {
  // For a stochastic matrix, ergodic (irreducible + aperiodic) is the same
  // as primitive; the two routines use different algorithms.
  std::mt19937_64 rng(3);
  std::bernoulli_distribution keep(0.3);
  for (int k = 0; k < 300; ++k) {
    Matrix p = Matrix::Zero(5, 5);
    for (Index i = 0; i < 5; ++i) {
      p(i, (i + 1 + k % 3) % 5) = 1.0;
      for (Index j = 0; j < 5; ++j) {
        if (keep(rng)) p(i, j) += 1.0;
      }
      p.row(i) /= p.row(i).sum();
    }
    EXPECT_EQ(ergodicity_check(StochasticMatrix(p)).passed(), is_primitive(p)) << p;
  }
}

}  // namespace
}  // namespace recovery::markov

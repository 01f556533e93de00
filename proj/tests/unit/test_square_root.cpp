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

#include <cmath>

#include "recovery/diffusion/square_root.hpp"
#include "recovery/error.hpp"

namespace recovery::diffusion {
namespace {

SquareRootModel model(double alpha) { return {0.2, 0.5, 0.3, alpha, -0.03}; }

TEST(EigenCandidates, PricedRiskCaseArithmetic) {
  const auto c = eigen_candidates(model(1.0));
  EXPECT_EQ(c[0].upsilon, 0.0);
  // 2 (0.2 - 0.3) / 0.09 = -20/9.
  EXPECT_NEAR(c[1].upsilon, -20.0 / 9.0, 1e-14);
  EXPECT_NEAR(c[0].kappa_new, -0.1, 1e-15);
  EXPECT_NEAR(c[1].kappa_new, 0.1, 1e-15);
  EXPECT_EQ(c[1].kappa_new, -c[0].kappa_new);
  EXPECT_EQ(c[0].eta, -0.03);
}

TEST(EigenCandidates, DriftIdentityHoldsTermByTerm) {
  for (double alpha : {-0.7, 0.0, 0.1, 1.0, 2.5}) {
    for (const auto& c : eigen_candidates(model(alpha))) {
      EXPECT_LE(std::abs(c.constant_residual), 1e-12);
      EXPECT_LE(std::abs(c.linear_residual), 1e-12);
      // Quadratic identity: u (-kappa + u s^2 / 2 + s a) = 0.
      EXPECT_LE(std::abs(c.upsilon * (-0.2 + 0.5 * c.upsilon * 0.09 + 0.3 * alpha)), 1e-12);
    }
    const auto c = eigen_candidates(model(alpha));
    EXPECT_EQ(c[1].kappa_new, -c[0].kappa_new);
  }
}

TEST(SelectErgodic, PicksMeanRevertingCandidate) {
  auto s = select_ergodic(eigen_candidates(model(1.0)));
  ASSERT_TRUE(s.selected.has_value());
  EXPECT_NEAR(s.selected->upsilon, -20.0 / 9.0, 1e-14);

  s = select_ergodic(eigen_candidates(model(0.1)));
  ASSERT_TRUE(s.selected.has_value());
  EXPECT_EQ(s.selected->upsilon, 0.0);
  EXPECT_NEAR(s.selected->kappa_new, 0.17, 1e-15);

  s = select_ergodic(eigen_candidates(model(0.0)));
  ASSERT_TRUE(s.selected.has_value());
  EXPECT_EQ(s.selected->kappa_new, 0.2);
  EXPECT_NEAR(eigen_candidates(model(0.0))[1].upsilon, 0.4 / 0.09, 1e-14);
}

TEST(SelectErgodic, KnifeEdgeIsDegenerate) {
  // kappa = sigma alpha makes kappa_new = 0 for both candidates.
  SquareRootModel m{0.3, 0.5, 0.3, 1.0, -0.03};
  const auto s = select_ergodic(eigen_candidates(m));
  EXPECT_TRUE(s.degenerate);
  EXPECT_FALSE(s.selected.has_value());
  EXPECT_FALSE(s.diagnostics.empty());
}

TEST(Model, ValidationAndFeller) {
  EXPECT_THROW(eigen_candidates({0.2, 0.5, 0.3, 1.0, 0.01}), InputError);
  EXPECT_THROW(eigen_candidates({-0.2, 0.5, 0.3, 1.0, -0.01}), InputError);
  EXPECT_TRUE(model(1.0).feller());
  EXPECT_FALSE((SquareRootModel{0.2, 0.1, 0.3, 1.0, -0.03}).feller());
}

SimulationOptions small_run(std::uint64_t seed) {
  SimulationOptions o;
  o.horizon = 1.0;
  o.dt = 1.0 / 100.0;
  o.n_paths = 20'000;
  o.seed = seed;
  return o;
}

TEST(Simulate, SelectedCandidateIsMartingale) {
  const auto m = model(1.0);
  const auto sel = select_ergodic(eigen_candidates(m));
  const auto st = simulate(m, SimulationMeasure::kPhysical, *sel.selected, small_run(1));
  EXPECT_EQ(st.nan_paths, 0);
  EXPECT_LE(std::abs(st.martingale_mean - 1.0), 3.0 * st.martingale_se);
}

TEST(Simulate, RiskNeutralCandidateDiscountsAtConstantRate) {
  const auto m = model(0.1);
  const auto c = eigen_candidates(m)[0];
  const auto st = simulate(m, SimulationMeasure::kPhysical, c, small_run(2));
  EXPECT_LE(std::abs(st.sdf_mean - std::exp(-0.03)), 3.0 * st.sdf_se);
  EXPECT_LE(std::abs(st.martingale_mean - 1.0), 3.0 * st.martingale_se);
}

TEST(Simulate, TinyVolatilityStaysAtMean) {
  SquareRootModel m{0.2, 0.5, 1e-8, 0.0, -0.03};
  const auto st = simulate(m, SimulationMeasure::kPhysical, eigen_candidates(m)[0], small_run(3));
  EXPECT_NEAR(st.mean_x, 0.5, 1e-9);
  EXPECT_LE(st.var_x, 1e-15);
}

TEST(Simulate, CandidateMeasureMeanRevertsToShiftedMean) {
  // Drift kappa mu - kappa_new x has stationary mean kappa mu / kappa_new.
  const auto m = model(0.1);
  const auto c = eigen_candidates(m)[0];
  SimulationOptions o;
  o.horizon = 60.0;
  o.dt = 0.02;
  o.n_paths = 4'000;
  o.seed = 4;
  const auto st = simulate(m, SimulationMeasure::kCandidate, c, o);
  const double target = 0.2 * 0.5 / 0.17;
  EXPECT_LE(std::abs(st.mean_x - target), 3.0 * std::sqrt(st.var_x / 4'000.0));
}

TEST(Simulate, DeterministicForSeed) {
  const auto m = model(1.0);
  const auto c = *select_ergodic(eigen_candidates(m)).selected;
  auto o = small_run(9);
  o.n_paths = 3'000;
  const auto a = simulate(m, SimulationMeasure::kPhysical, c, o);
  const auto b = simulate(m, SimulationMeasure::kPhysical, c, o);
  EXPECT_EQ(a.martingale_mean, b.martingale_mean);
  EXPECT_EQ(a.mean_x, b.mean_x);
}

}  // namespace
}  // namespace recovery::diffusion

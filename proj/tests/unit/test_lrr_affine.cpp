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

#include "recovery/lrr/affine.hpp"
#include "recovery/lrr/simulation.hpp"

namespace recovery::lrr {
namespace {

AffineFunctional default_sdf() {
  const auto p = LrrParams::defaults();
  return sdf_coefficients(p, solve_value_function(p));
}

TEST(AffineExpectation, HorizonZeroIsOne) {
  const auto p = LrrParams::defaults();
  EXPECT_EQ(affine_expectation(default_sdf(), p.dynamics, 0.0, Vec2(0.3, 2.0)), 1.0);
}

TEST(AffineExpectation, MatchesIndependentIntegrator) {
  // Frozen from scipy's LSODA on the same ODE system.
  const auto p = LrrParams::defaults();
  const auto c = affine_coefficients(default_sdf(), p.dynamics, {60.0, 1.0, 12.0, 1200.0});
  ASSERT_EQ(c.horizons.size(), 4u);
  EXPECT_EQ(c.horizons.front(), 1.0);
  const double theta0[] = {-0.0034961606789436156, -0.04132907997498415,
                           -0.18553412520667006, -0.7789667462904222};
  const double theta1[] = {-0.9895731157400213, -10.607393425288016, -34.111713023819846,
                           -47.61904761850615};
  const double theta2[] = {0.0005969539125378287, 0.009350885316598497, 0.06996079614954562,
                           0.24488971634915851};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_NEAR(c.theta0[k], theta0[k], 1e-9);
    EXPECT_NEAR(c.theta1[k], theta1[k], 1e-8);
    EXPECT_NEAR(c.theta2[k], theta2[k], 1e-9);
  }
  EXPECT_NEAR(affine_expectation(default_sdf(), p.dynamics, 12.0, p.dynamics.iota),
              0.9685277009263266, 1e-9);
}

TEST(AffineExpectation, DeterministicSubmodelClosedForm) {
  StateDynamics d;
  d.mu11 = -0.05;
  d.mu12 = 0.0;
  d.mu22 = -0.02;
  d.iota = Vec2(0.01, 1.5);
  const AffineFunctional f{0.003, 0.4, -0.01, Vec3::Zero()};
  for (double t : {0.5, 10.0, 100.0}) {
    const Vec2 x(0.02, 1.1);
    // theta1 = b1 (e^{m11 t} - 1)/m11, theta2 = b2 (e^{m22 t} - 1)/m22,
    // theta0 integrates the constant equation term by term.
    const double th1 = f.beta1 * std::expm1(d.mu11 * t) / d.mu11;
    const double th2 = f.beta2 * std::expm1(d.mu22 * t) / d.mu22;
    const double int1 = f.beta1 / d.mu11 * (std::expm1(d.mu11 * t) / d.mu11 - t);
    const double int2 = f.beta2 / d.mu22 * (std::expm1(d.mu22 * t) / d.mu22 - t);
    const double th0 = (f.beta0 - f.beta1 * d.iota(0) - f.beta2 * d.iota(1)) * t -
                       d.mu11 * d.iota(0) * int1 - d.mu22 * d.iota(1) * int2;
    const double expected = std::exp(th0 + th1 * x(0) + th2 * x(1));
    EXPECT_NEAR(affine_expectation(f, d, t, x) / expected, 1.0, 1e-10);
  }
}

TEST(AffineExpectation, RiccatiBlowUpIsReported) {
  const auto p = LrrParams::defaults();
  const AffineFunctional explosive{0.0, 0.0, 50.0, Vec3(0.0, 0.0, 3.0)};
  try {
    affine_coefficients(explosive, p.dynamics, {10'000.0});
    FAIL() << "expected a blow-up";
  } catch (const BlowUpError& e) {
    EXPECT_GT(e.time(), 0.0);
    EXPECT_LT(e.time(), 10'000.0);
  }
}

TEST(AffineExpectation, RejectsNegativeHorizon) {
  const auto p = LrrParams::defaults();
  EXPECT_THROW(affine_coefficients(default_sdf(), p.dynamics, {-1.0}), InputError);
}

TEST(AffineExpectation, AgreesWithSmallMonteCarlo) {
  // Light version of the acceptance gate: 2e4 paths at t = 12.
  const auto p = LrrParams::defaults();
  SimulationOptions o;
  o.n_paths = 20'000;
  o.seed = 77;
  const auto mc = simulate_expectation(default_sdf(), p.dynamics, p.dynamics.iota, {12.0}, o);
  const double ode = affine_expectation(default_sdf(), p.dynamics, 12.0, p.dynamics.iota);
  EXPECT_EQ(mc.nan_paths, 0);
  EXPECT_LE(std::abs(mc.mean[0] - ode), 3.0 * mc.standard_error[0]);
}

}  // namespace
}  // namespace recovery::lrr

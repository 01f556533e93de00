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
#pragma once

#include <variant>
#include <vector>

#include "recovery/markov/types.hpp"

namespace recovery::markov {

enum class Measure { kPhysical, kLongTermRiskNeutral };

/// Cash-flow growth G with G_0 = 1: none, a deterministic ratio G_{t+1}/G_t
/// per state pair, or a Gaussian-augmented multiplicative functional.
using Growth = std::variant<std::monostate, Matrix, GaussianAugmentedFunctional>;

/// One-period operators for a growing claim:
///   expected(i, j) = p_ij E[G_1 | i, j]
///   priced(i, j)   = p_ij E[S_1 G_1 | i, j]
/// so E[G_t psi(X_t) | x] = (expected^t psi)_x and its price is (priced^t psi)_x.
struct GrowthOperators {
  Matrix expected;
  Matrix priced;
};

/// For a functional, the normal block must either match the economy's
/// `sdf_normal_loading` width or one of the two must be empty (independent
/// shocks). Throws InputError otherwise.
GrowthOperators growth_operators(const MarkovPricingEconomy& economy, const Growth& growth);

struct YieldCurve {
  std::vector<long> horizons;
  Matrix yields;  ///< one row per horizon, one column per current state
};

/// y_t(x) = (1/t)[log E_m(G_t psi(X_t) | x) - log E(S_t G_t psi(X_t) | x)],
/// where E_m is the physical or the long-term risk neutral expectation.
/// Throws InputError on a zero horizon or a non-positive payoff.
YieldCurve yield_curve(const MarkovPricingEconomy& economy, const Vector& payoff,
                       const Growth& growth, const std::vector<long>& horizons,
                       Measure measure);

}  // namespace recovery::markov

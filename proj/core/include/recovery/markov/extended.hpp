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

#include <span>

#include "recovery/markov/types.hpp"

namespace recovery::markov {

/// Family member for a given exposure zeta of the discount factor to the
/// additive processes Y:
///   S_t = exp(eta t) exp(zeta . (Y_t - Y_0)) (e(X_0) / e(X_t)) H_t.
struct ExtendedFamilyMember {
  double eta = 0.0;
  Vector e;  ///< max entry 1
  StochasticMatrix p_hat;
  Matrix modified_prices;
};

/// q^zeta_ij = q_ij exp(-zeta . y_ij + |A_i' zeta|^2 / 2 - zeta' A_i a_i),
/// where y_ij are the chain parts of the Y increments, A_i stacks the normal
/// loadings of the Y components (k x k') and a_i is the sdf's normal loading.
/// The last two terms come from integrating the Gaussian shock out of
/// E[S_1 exp(-zeta . dY) | i, j]. Throws ModelError if any exponent would
/// overflow.
Matrix zeta_modified_prices(const MarkovPricingEconomy& economy,
                            std::span<const GaussianAugmentedFunctional> y_spec,
                            const Vector& zeta);

/// Perron-Frobenius solve of the zeta-modified prices and the transition
/// induced by absorbing exp(zeta . dY) into the eigenfunction. zeta = 0 is
/// plain recovery. Throws ModelError when the modified matrix is not
/// primitive or the induced transition is not ergodic.
ExtendedFamilyMember extended_pf_family(const MarkovPricingEconomy& economy,
                                        std::span<const GaussianAugmentedFunctional> y_spec,
                                        const Vector& zeta);

/// Economy whose discount factor has the form
///   S_{t+1}/S_t = exp(-delta) exp(zeta . dY) m(X_{t+1}) / m(X_t)
/// under `subjective`. The normal loading of S is A' zeta. Inverting it with
/// extended_pf_family at the same zeta returns `subjective`.
MarkovPricingEconomy build_extended_ross_economy(
    const StochasticMatrix& subjective, double delta, const Vector& zeta, const Vector& m,
    std::span<const GaussianAugmentedFunctional> y_spec);

struct StructuredRecovery {
  double delta = 0.0;
  Vector m_tilde;  ///< max entry 1
  StochasticMatrix p_tilde;
};

/// Recovery with a prespecified multiplicative factor: g_ij = E[Y^r ratio |
/// i, j] is divided out of the prices before the eigen-solve, and
/// p_tilde_ij = exp(delta) (q_ij / g_ij) m_i / m_j.
StructuredRecovery structured_recover(const PricingMatrix& prices, const Matrix& y_r_increments);

}  // namespace recovery::markov

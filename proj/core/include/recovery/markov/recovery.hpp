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

#include <cstdint>
#include <vector>

#include "recovery/markov/perron_frobenius.hpp"
#include "recovery/markov/types.hpp"

namespace recovery::markov {

struct RiskNeutral {
  StochasticMatrix transition;
  Vector bond_prices;
};

/// p̄_ij = q_ij / q̄_i.
RiskNeutral risk_neutral(const PricingMatrix& prices);

/// Row-normalized t-period Arrow prices. Powers are rescaled at each step,
/// so the result does not overflow for large t.
StochasticMatrix forward_measure(const PricingMatrix& prices, long horizon);

/// Q^t rescaled to max entry 1, with the removed log scale.
struct ScaledPower {
  Matrix matrix;
  double log_scale = 0.0;  ///< Q^t = exp(log_scale) * matrix
};
ScaledPower scaled_power(const Matrix& q, long horizon);

/// Recovery from Arrow prices alone; `h_increments` is left empty.
/// Throws ModelError if the recovered transition is not ergodic.
RecoveredMeasure recover(const PricingMatrix& prices,
                         const PowerIterationOptions& options = {});

/// Recovery with the physical transition known, so `h_increments` is filled.
RecoveredMeasure recover(const MarkovPricingEconomy& economy,
                         const PowerIterationOptions& options = {});

/// Factors of the discount factor accumulated along a path x_0, ..., x_t.
struct SdfDecomposition {
  double trend = 1.0;        ///< exp(eta_hat t)
  double eigen_ratio = 1.0;  ///< e_hat(x_0) / e_hat(x_t)
  double martingale = 1.0;   ///< product of h_increments along the path
  double accumulated_sdf = 1.0;  ///< product of sdf entries along the path
  double log_trend = 0.0;
  double log_eigen_ratio = 0.0;
  double log_martingale = 0.0;
  double log_accumulated_sdf = 0.0;
};

/// Throws InputError on a path step with zero Arrow price.
SdfDecomposition sdf_decomposition(const MarkovPricingEconomy& economy,
                                   const RecoveredMeasure& recovered,
                                   const std::vector<Index>& path);
SdfDecomposition sdf_decomposition(const MarkovPricingEconomy& economy,
                                   const std::vector<Index>& path);

/// R∞_ij = exp(-eta_hat) e_hat_j / e_hat_i.
Matrix holding_period_return_limit(const PricingMatrix& prices);

/// One-period return on the tau-period discount bond:
/// [Q^(tau-1) 1]_j / [Q^tau 1]_i.
Matrix holding_period_return(const PricingMatrix& prices, long tau);

/// One-period transition implied by the tau-maturity forward measure,
/// q_ij b_j / (Q b)_i with b = Q^(tau-1) 1. Tends to p_hat as tau grows.
StochasticMatrix forward_one_period_limit(const PricingMatrix& prices, long tau);

struct LogReturnBound {
  Vector lhs;    ///< E[log R∞ | x]
  Vector rhs;    ///< E[log S_t - log S_{t+1} | x]
  Vector slack;  ///< rhs - lhs = -E[log h | x] >= 0
};

/// Exact conditional sums for a finite chain. `n_samples` and `seed` are
/// accepted for interface symmetry with continuous-state models and unused.
LogReturnBound log_return_bound_check(const MarkovPricingEconomy& economy,
                                      long n_samples = 0, std::uint64_t seed = 0);

/// Stationary distribution of an ergodic transition (left eigenvector).
Vector stationary_distribution(const StochasticMatrix& transition);

}  // namespace recovery::markov

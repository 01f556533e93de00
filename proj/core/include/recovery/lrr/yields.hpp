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

#include <vector>

#include "recovery/lrr/model.hpp"

namespace recovery::lrr {

enum class CashFlow { kConsumption, kBond };

inline constexpr double kMonthsPerYear = 12.0;

struct LrrYieldCurves {
  std::vector<double> horizons;  ///< months
  /// Annualized yields, one row per horizon and one column per state.
  Eigen::MatrixXd physical;
  Eigen::MatrixXd recovered;
  /// Columns: 25th, 50th, 75th percentile across the states.
  Eigen::MatrixXd physical_quartiles;
  Eigen::MatrixXd recovered_quartiles;
};

/// y_t(x)  = (12/t)[log E[G_t | x]  - log E[S_t G_t | x]]
/// ŷ_t(x) = (12/t)[log Ê[G_t | x] - log E[S_t G_t | x]]
/// with G = C/C_0 or G = 1, evaluated at each row of `states`. Both
/// distributions are taken over the same states so the two bands are
/// directly comparable.
LrrYieldCurves yield_curves(const LrrSolution& solution, const std::vector<double>& horizons,
                            CashFlow cash_flow, const Eigen::Matrix<double, Eigen::Dynamic, 2>& states);

/// Linear-interpolation quantile of `values` (0 <= q <= 1).
double quantile(std::vector<double> values, double q);

}  // namespace recovery::lrr

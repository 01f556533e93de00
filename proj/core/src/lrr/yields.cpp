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
#include "recovery/lrr/yields.hpp"

#include <algorithm>
#include <cmath>

#include "recovery/lrr/affine.hpp"

namespace recovery::lrr {

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InputError("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

LrrYieldCurves yield_curves(const LrrSolution& solution, const std::vector<double>& horizons,
                            CashFlow cash_flow,
                            const Eigen::Matrix<double, Eigen::Dynamic, 2>& states) {
  if (states.rows() == 0) throw InputError("no states to evaluate yields at");
  for (double t : horizons) {
    if (!(t > 0.0)) throw InputError("yield horizons must be positive");
  }
  const StateDynamics& physical = solution.params.dynamics;
  const StateDynamics recovered = solution.recovered.dynamics(physical);
  const AffineFunctional growth =
      cash_flow == CashFlow::kConsumption ? solution.params.consumption : AffineFunctional{};
  const AffineFunctional growth_hat =
      transform_functional(growth, physical, solution.recovered, solution.pf.alpha_h);

  const auto priced = affine_coefficients(solution.sdf + growth, physical, horizons);
  const auto expected = affine_coefficients(growth, physical, horizons);
  const auto expected_hat = affine_coefficients(growth_hat, recovered, horizons);

  LrrYieldCurves out;
  out.horizons = priced.horizons;
  const Eigen::Index nh = static_cast<Eigen::Index>(out.horizons.size());
  out.physical.resize(nh, states.rows());
  out.recovered.resize(nh, states.rows());
  out.physical_quartiles.resize(nh, 3);
  out.recovered_quartiles.resize(nh, 3);
  for (Eigen::Index k = 0; k < nh; ++k) {
    const std::size_t kk = static_cast<std::size_t>(k);
    const double scale = kMonthsPerYear / out.horizons[kk];
    for (Eigen::Index s = 0; s < states.rows(); ++s) {
      const Vec2 x = states.row(s).transpose();
      const double log_price = priced.log_expectation(kk, x);
      out.physical(k, s) = scale * (expected.log_expectation(kk, x) - log_price);
      out.recovered(k, s) = scale * (expected_hat.log_expectation(kk, x) - log_price);
    }
    const std::vector<double> y(out.physical.row(k).begin(), out.physical.row(k).end());
    const std::vector<double> y_hat(out.recovered.row(k).begin(), out.recovered.row(k).end());
    for (int q = 0; q < 3; ++q) {
      const double level = 0.25 * (q + 1);
      out.physical_quartiles(k, q) = quantile(y, level);
      out.recovered_quartiles(k, q) = quantile(y_hat, level);
    }
  }
  return out;
}

}  // namespace recovery::lrr

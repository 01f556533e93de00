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

/// E[M_t | X_0 = x] = exp(theta0(t) + theta1(t) x1 + theta2(t) x2) on a grid
/// of horizons (months).
struct AffineExpectationCoeffs {
  std::vector<double> horizons;
  std::vector<double> theta0;
  std::vector<double> theta1;
  std::vector<double> theta2;

  double log_expectation(std::size_t k, const Vec2& x) const {
    return theta0[k] + theta1[k] * x(0) + theta2[k] * x(1);
  }
};

/// theta2 diverges before the requested horizon.
class BlowUpError : public ModelError {
 public:
  BlowUpError(const std::string& what, double time) : ModelError(what), time_(time) {}
  /// Time at which divergence was detected; the explosion is at or just past it.
  double time() const { return time_; }

 private:
  double time_;
};

/// Integrates, from theta(0) = 0,
///   theta1' = beta1 + mu11 theta1
///   theta2' = beta2 + |alpha|^2/2 + theta1 (mu12 + sigma1.alpha)
///             + theta2 (mu22 + sigma2.alpha) + |theta1 sigma1 + theta2 sigma2|^2/2
///   theta0' = beta0 - beta1 iota1 - beta2 iota2
///             - theta1 (mu11 iota1 + mu12 iota2) - theta2 mu22 iota2
/// with adaptive Dormand-Prince 5(4), absolute tolerance 1e-12.
/// Horizons must be nonnegative; they are returned in ascending order.
AffineExpectationCoeffs affine_coefficients(const AffineFunctional& functional,
                                            const StateDynamics& dynamics,
                                            std::vector<double> horizons);

double affine_expectation(const AffineFunctional& functional, const StateDynamics& dynamics,
                          double horizon, const Vec2& x);

}  // namespace recovery::lrr

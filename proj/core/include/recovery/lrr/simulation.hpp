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

#include "recovery/lrr/model.hpp"

namespace recovery::lrr {

struct SimulationOptions {
  long n_paths = 100'000;
  double burn_in = 600.0;  ///< months
  double dt = 0.1;         ///< months
  std::uint64_t seed = 0;
  int bins = 100;
};

/// Long-run draws of (X1, X2): one state per path after the burn-in.
struct StationaryDensity {
  Vec2 mean = Vec2::Zero();
  Mat2 covariance = Mat2::Zero();
  Vec2 mean_se = Vec2::Zero();
  double x2_variance_se = 0.0;
  double correlation = 0.0;
  /// bins x bins probability masses over [mean - 4 sd, mean + 4 sd] per
  /// axis; row index bins X1, column index bins X2.
  Eigen::MatrixXd histogram;
  Vec2 lower = Vec2::Zero();
  Vec2 upper = Vec2::Zero();
  Eigen::Matrix<double, Eigen::Dynamic, 2> samples;
  long nan_paths = 0;
};

/// Full-truncation Euler from X_0 = iota of `dynamics`. Throws ModelError
/// when every path produced NaNs.
StationaryDensity stationary_density(const StateDynamics& dynamics,
                                     const SimulationOptions& options);

struct FunctionalMonteCarlo {
  std::vector<double> horizons;
  std::vector<double> mean;
  std::vector<double> standard_error;
  long nan_paths = 0;
};

/// Monte Carlo E[M_t | X_0 = x0] at the given horizons (months) from one
/// set of paths; `burn_in` is ignored.
FunctionalMonteCarlo simulate_expectation(const AffineFunctional& functional,
                                          const StateDynamics& dynamics, const Vec2& x0,
                                          std::vector<double> horizons,
                                          const SimulationOptions& options);

}  // namespace recovery::lrr

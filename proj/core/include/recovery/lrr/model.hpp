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

#include <Eigen/Dense>
#include <array>
#include <optional>

#include "recovery/error.hpp"

namespace recovery::lrr {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;

/// dX1 = [mu11 (X1 - iota1) + mu12 (X2 - iota2)] dt + sqrt(X2) sigma1 . dW
/// dX2 = mu22 (X2 - iota2) dt + sqrt(X2) sigma2 . dW
/// with W a three-dimensional Brownian motion. Monthly units.
struct StateDynamics {
  double mu11 = 0.0;
  double mu12 = 0.0;
  double mu22 = 0.0;
  Vec3 sigma1 = Vec3::Zero();
  Vec3 sigma2 = Vec3::Zero();
  Vec2 iota = Vec2::Zero();

  /// Throws InputError unless mu11 < 0, mu22 < 0 and iota2 > 0.
  void validate() const;
};

/// d log M = [beta0 + beta1 (X1 - iota1) + beta2 (X2 - iota2)] dt
///           + sqrt(X2) alpha . dW,
/// centred at the iota of the dynamics it is paired with.
struct AffineFunctional {
  double beta0 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  Vec3 alpha = Vec3::Zero();

  /// Log of the product of the two functionals.
  AffineFunctional operator+(const AffineFunctional& other) const;
};

struct LrrParams {
  StateDynamics dynamics;
  AffineFunctional consumption;  ///< beta_c, alpha_c
  double delta = 0.0;
  double gamma = 1.0;

  void validate() const;
  /// Monthly calibration behind the default stationary-density and yield outputs.
  static LrrParams defaults();
};

/// log V - log C = v0 + v1 x1 + v2 x2.
struct ValueCoefficients {
  double v0 = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;
  double discriminant = 0.0;
  std::array<double, 3> residuals{};  ///< the three coefficient equations
};

/// No real value function: the quadratic for v2 has negative discriminant.
class ValueFunctionError : public ModelError {
 public:
  ValueFunctionError(const std::string& what, double discriminant, double gamma)
      : ModelError(what), discriminant_(discriminant), gamma_(gamma) {}
  double discriminant() const { return discriminant_; }
  double gamma() const { return gamma_; }

 private:
  double discriminant_;
  double gamma_;
};

/// v1 from the linear equation, v2 as the root of the quadratic that stays
/// continuous through gamma = 1, v0 from the constant term.
ValueCoefficients solve_value_function(const LrrParams& params);

/// u = alpha_c + sigma1' v1 + sigma2' v2, the loading of log V.
Vec3 value_loading(const LrrParams& params, const ValueCoefficients& value);

/// d log S = -delta dt - d log C + d log H*,
/// dH*/H* = sqrt(X2) (1 - gamma) u . dW.
AffineFunctional sdf_coefficients(const LrrParams& params, const ValueCoefficients& value);

/// The continuation-value martingale H* on its own.
AffineFunctional continuation_martingale(const LrrParams& params, const ValueCoefficients& value);

struct PfRoot {
  double e2 = 0.0;
  double eta = 0.0;
  double mu_hat_22 = 0.0;
};

/// e(x) = exp(e1 x1 + e2 x2), S_t = exp(eta t) e(X_0)/e(X_t) H_t/H_0,
/// dH/H = sqrt(X2) alpha_h . dW.
struct PfSolution {
  double eta_hat = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
  Vec3 alpha_h = Vec3::Zero();
  std::optional<PfRoot> rejected;     ///< other root of the e2 quadratic
  std::array<double, 3> residuals{};  ///< eigen-equation: constant, x1, x2
};

/// Chooses the e2 root with the smaller eta. Throws ModelError when the
/// quadratic has no real root or the chosen root does not mean-revert.
PfSolution solve_pf(const StateDynamics& dynamics, const AffineFunctional& sdf);

/// Dynamics after the change of measure dW = dW_new + sqrt(X2) loading dt.
struct ChangedMeasureParams {
  double mu_hat_11 = 0.0;
  double mu_hat_12 = 0.0;
  double mu_hat_22 = 0.0;
  Vec2 iota_hat = Vec2::Zero();

  StateDynamics dynamics(const StateDynamics& base) const;
};

/// Throws ModelError when mu_hat_22 >= 0 (X2 would not mean-revert).
ChangedMeasureParams changed_measure(const StateDynamics& dynamics, const Vec3& loading);

/// Coefficients of the same functional written around the new means and
/// the new Brownian motion.
AffineFunctional transform_functional(const AffineFunctional& functional,
                                      const StateDynamics& dynamics,
                                      const ChangedMeasureParams& changed, const Vec3& loading);

/// Everything downstream of the parameters, solved once.
struct LrrSolution {
  LrrParams params;
  ValueCoefficients value;
  AffineFunctional sdf;
  PfSolution pf;
  ChangedMeasureParams recovered;     ///< long-term risk neutral
  /// Absorbs the sdf loading; empty if X2 would not mean-revert under it.
  std::optional<ChangedMeasureParams> risk_neutral;
};
LrrSolution solve(const LrrParams& params);

}  // namespace recovery::lrr

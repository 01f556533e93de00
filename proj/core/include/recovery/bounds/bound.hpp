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
#include <optional>
#include <string>

#include "recovery/bounds/divergence.hpp"

namespace recovery::bounds {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Sample of one-period payoffs Y_{t+1} (T x m), their date-t prices Q_t
/// (T x m), the long-bond holding-period return R∞_{t,t+1} (T) and sample
/// probabilities (T).
class BoundProblem {
 public:
  /// Validates shapes, R∞ > 0, weights >= 0 summing to 1 within 1e-12.
  BoundProblem(Matrix payoffs, Matrix prices, Vector long_bond_return, Vector weights);
  /// Uniform weights.
  BoundProblem(Matrix payoffs, Matrix prices, Vector long_bond_return);

  const Matrix& payoffs() const { return payoffs_; }
  const Matrix& prices() const { return prices_; }
  const Vector& long_bond_return() const { return long_bond_return_; }
  const Vector& weights() const { return weights_; }
  Index samples() const { return payoffs_.rows(); }
  Index assets() const { return payoffs_.cols(); }

  /// Rows z_t = (1, Y_t / R∞_t), T x (m + 1).
  Matrix constraint_rows() const;
  /// b = (1, sum_t w_t Q_t).
  Vector constraint_target() const;

 private:
  Matrix payoffs_;
  Matrix prices_;
  Vector long_bond_return_;
  Vector weights_;
};

struct BoundOptions {
  double gradient_tolerance = 1e-10;
  long max_iterations = 500;
  /// Divergence from the dual is declared once |lambda| exceeds this.
  double unbounded_threshold = 1e10;
  /// theta = 1 only: drop J >= 0, giving the quadratic (variance) bound.
  bool allow_negative = false;
};

struct BoundResult {
  double lambda_bar = 0.0;  ///< primal value sum_t w_t phi(J_t)
  double dual_value = 0.0;
  double duality_gap = 0.0;
  Vector multipliers;           ///< m + 1 dual variables
  Vector constraint_residuals;  ///< sum_t w_t J_t z_t - b
  Vector j;                     ///< primal J_t
  bool converged = false;
  bool infeasible = false;
  /// Unit direction along which the dual diverged (set when infeasible).
  std::optional<Vector> certificate;
  long iterations = 0;
  std::string diagnostics;
};

/// inf_{J >= 0} sum_t w_t phi(J_t) s.t. sum_t w_t J_t z_t = b, through the
/// concave dual max_lambda lambda.b - sum_t w_t phi*(lambda.z_t), solved by
/// damped Newton with backtracking. Rank-deficient Hessians (redundant
/// constraints, clipped J) fall back to a minimum-norm step.
BoundResult unconditional_bound(const BoundProblem& problem, double theta,
                                const BoundOptions& options = {});

/// sum_t w_t (Y_t / R∞_t - Q_t) per asset.
Vector kazemi_test(const BoundProblem& problem);

}  // namespace recovery::bounds

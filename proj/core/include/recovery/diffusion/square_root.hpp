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

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace recovery::diffusion {

/// d log S = beta_bar dt - X alpha_bar^2 / 2 dt + sqrt(X) alpha_bar dW
/// dX      = -kappa (X - mu_bar) dt + sigma_bar sqrt(X) dW
/// with one Brownian motion W driving both.
struct SquareRootModel {
  double kappa = 0.0;
  double mu_bar = 0.0;
  double sigma_bar = 0.0;
  double alpha_bar = 0.0;
  double beta_bar = 0.0;

  /// Throws InputError unless kappa, mu_bar, sigma_bar > 0 and beta_bar < 0.
  void validate() const;
  /// 2 kappa mu_bar >= sigma_bar^2. Violation is a warning, not an error.
  bool feller() const { return 2.0 * kappa * mu_bar >= sigma_bar * sigma_bar; }
};

/// Eigenfunction exp(upsilon x) with eigenvalue eta. Under the induced
/// measure X is again square-root with mean reversion kappa_new and drift
/// kappa mu_bar - kappa_new x.
struct EigenCandidate {
  double upsilon = 0.0;
  double eta = 0.0;
  double kappa_new = 0.0;
  bool ergodic = false;  ///< kappa_new > 0
  double constant_residual = 0.0;  ///< drift identity, constant term
  double linear_residual = 0.0;    ///< drift identity, coefficient on x
};

/// upsilon = 0 and upsilon = 2 (kappa - alpha_bar sigma_bar) / sigma_bar^2.
std::array<EigenCandidate, 2> eigen_candidates(const SquareRootModel& model);

struct Selection {
  std::optional<EigenCandidate> selected;
  bool degenerate = false;  ///< kappa_new = 0: no candidate mean-reverts
  std::string diagnostics;
};

/// Picks the candidate whose induced process mean-reverts.
Selection select_ergodic(const std::array<EigenCandidate, 2>& candidates);

enum class SimulationMeasure { kPhysical, kCandidate };

struct SimulationOptions {
  double horizon = 1.0;
  double dt = 1.0 / 250.0;
  long n_paths = 100'000;
  std::uint64_t seed = 0;
  double x0 = 0.0;  ///< initial state; 0 means mu_bar
};

struct SimulationStats {
  double mean_x = 0.0;
  double var_x = 0.0;
  /// E[S_t] and its standard error (physical measure only).
  double sdf_mean = 0.0;
  double sdf_se = 0.0;
  /// E[exp(-eta t) S_t e(X_t)] / e(x_0) for the supplied candidate
  /// (physical measure only); 1 for a valid eigenpair.
  double martingale_mean = 0.0;
  double martingale_se = 0.0;
  long nan_paths = 0;
  long steps = 0;
};

/// Full-truncation Euler for X; log S is integrated with the same increments
/// and the truncated state. Under kCandidate, X follows the candidate's
/// induced dynamics and only the X moments are meaningful.
SimulationStats simulate(const SquareRootModel& model, SimulationMeasure measure,
                         const EigenCandidate& candidate, const SimulationOptions& options);

}  // namespace recovery::diffusion

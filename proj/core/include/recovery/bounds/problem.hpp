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
#include <filesystem>
#include <vector>

#include "recovery/bounds/bound.hpp"
#include "recovery/markov/types.hpp"

namespace recovery::bounds {

/// Per-state conditional discrepancy sum_j p_ij phi(h_ij). Needs a recovery
/// carrying martingale increments.
Vector conditional_discrepancy(const markov::MarkovPricingEconomy& economy,
                               const markov::RecoveredMeasure& recovered, double theta);

/// Stationary average of the conditional discrepancy.
double population_discrepancy(const markov::MarkovPricingEconomy& economy,
                              const markov::RecoveredMeasure& recovered, double theta);

/// Each payoff is an n x n matrix: entry (i, j) is paid next period when the
/// chain moves from i to j.
using PayoffMenu = std::vector<Matrix>;

/// n Arrow securities, one per next state.
PayoffMenu arrow_payoffs(Index n);
/// n^2 Arrow securities scaled by the indicator of the current state; these
/// pin J on every transition.
PayoffMenu managed_arrow_payoffs(Index n);
/// The one-period discount bond.
PayoffMenu bond_payoff(Index n);
PayoffMenu concat(PayoffMenu a, const PayoffMenu& b);

struct PopulationMode {};
struct SampledMode {
  long length = 0;  ///< number of transitions
  std::uint64_t seed = 0;
};

/// Population mode lists every transition with weight pi_i p_ij (pi
/// stationary for P). Sampled mode draws a path of `length` transitions from
/// X_0 ~ pi with uniform weights. R∞ comes from the recovered eigenpair.
BoundProblem generate_problem_from_chain(const markov::MarkovPricingEconomy& economy,
                                         const markov::RecoveredMeasure& recovered,
                                         const PayoffMenu& payoffs, const PopulationMode& mode);
BoundProblem generate_problem_from_chain(const markov::MarkovPricingEconomy& economy,
                                         const markov::RecoveredMeasure& recovered,
                                         const PayoffMenu& payoffs, const SampledMode& mode);

struct BootstrapSummary {
  double mean = 0.0;
  double standard_error = 0.0;
  long replicas = 0;
};

/// Resamples rows of a uniformly weighted problem with replacement.
BootstrapSummary bootstrap_bound(const BoundProblem& problem, double theta, long replicas,
                                 std::uint64_t seed, const BoundOptions& options = {});

/// CSV with header weight,r_infty,y_1..y_m,q_1..q_m.
BoundProblem read_problem_csv(const std::filesystem::path& path);
void write_problem_csv(const BoundProblem& problem, const std::filesystem::path& path);

}  // namespace recovery::bounds

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

#include <optional>
#include <string>

#include "config.hpp"
#include "io.hpp"
#include "recovery/markov/types.hpp"

namespace recovery::cli {

void run_recover(const ScenarioConfig& config);
void run_forward(const ScenarioConfig& config);
void run_yields(const ScenarioConfig& config);
void run_lrr(const ScenarioConfig& config);
void run_bounds(const ScenarioConfig& config);
void run_sqrt(const ScenarioConfig& config);
void run_demo_approx(const ScenarioConfig& config);

/// Dispatches on `config.command`.
void run(const ScenarioConfig& config);

/// An economy read from JSON. Three layouts are accepted:
///   {"transition": P, "sdf": S}
///   {"prices": Q}                      (no physical transition)
///   {"transition": P, "preferences": {"type": "power" | "recursive",
///     "delta": .., "gamma": .., "g_c": .., "consumption": [..]}}
/// Overrides delta, gamma and g_c apply to the preference layout only.
struct LoadedEconomy {
  std::optional<markov::MarkovPricingEconomy> economy;
  markov::PricingMatrix prices;
  std::string layout;
};

LoadedEconomy load_economy(const json& doc, ParameterSet& params);

/// Reads --input as an economy; InputError when it is missing.
LoadedEconomy load_economy(const ScenarioConfig& config, ParameterSet& params);

}  // namespace recovery::cli

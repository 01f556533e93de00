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
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "recovery/error.hpp"
#include "recovery/lrr/model.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kModelError = 2;

struct RawFlags {
  std::string input;
  std::string out = ".";
  std::uint64_t seed = 0;
  std::vector<std::string> overrides;
  std::vector<double> thetas;
  std::string horizons;
};

const char* describe(const std::string& command) {
  if (command == "recover") return "Perron-Frobenius recovery from an economy or Arrow prices";
  if (command == "forward") return "forward measures and their one-period limit";
  if (command == "yields") return "bond yield curves under the physical and recovered measures";
  if (command == "lrr") return "long-run risk pipeline: densities and yield quartiles";
  if (command == "bounds") return "discrepancy bounds on the martingale component";
  if (command == "sqrt") return "square-root diffusion eigenfunction selection";
  return "zeta-family residuals as the factor's mean reversion vanishes";
}

}  // namespace

int main(int argc, char** argv) {
  using namespace recovery;
  CLI::App app{"recovery_lab: recover beliefs from Arrow prices and probe the long-term factor"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand help for every command");

  RawFlags flags;
  for (const std::string& name : cli::commands()) {
    CLI::App* sub = app.add_subcommand(name, describe(name));
    sub->add_option("--input", flags.input, "Input file (JSON; CSV problem for bounds)");
    sub->add_option("--out", flags.out, "Output directory")->capture_default_str();
    sub->add_option("--seed", flags.seed, "Random seed")->capture_default_str();
    sub->add_option("--override", flags.overrides, "Parameter patch key=value (repeatable)");
    sub->add_option("--horizons", flags.horizons, "Horizon grid a:b:step");
    if (name == "bounds") {
      sub->add_option("--theta", flags.thetas, "Divergence index (repeatable)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    cli::ScenarioConfig config;
    config.command = app.get_subcommands().front()->get_name();
    config.input_path = flags.input;
    config.output_dir = flags.out;
    config.seed = flags.seed;
    config.thetas = flags.thetas;
    for (const auto& text : flags.overrides) {
      const auto [key, value] = cli::parse_override(text);
      if (!config.overrides.emplace(key, value).second) {
        throw InputError("override " + key + " given twice");
      }
    }
    if (!flags.horizons.empty()) config.horizons = cli::parse_horizons(flags.horizons);
    cli::run(config);
  } catch (const lrr::ValueFunctionError& e) {
    std::cerr << "error: " << e.what() << " [gamma = " << e.gamma() << "]\n";
    return kModelError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kModelError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}

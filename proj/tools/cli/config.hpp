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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace recovery::cli {

/// One invocation of the tool, after flag parsing.
struct ScenarioConfig {
  std::string command;
  std::filesystem::path input_path;  ///< empty: command default
  std::filesystem::path output_dir = ".";
  std::uint64_t seed = 0;
  std::map<std::string, double> overrides;
  std::vector<double> thetas;
  std::optional<std::vector<double>> horizons;
};

/// The recognized subcommands, in help order.
const std::vector<std::string>& commands();

/// "key=value" with a numeric value. Throws InputError otherwise.
std::pair<std::string, double> parse_override(const std::string& text);

/// "a:b:step" with step > 0 and a <= b, inclusive of b when it lies on the
/// grid. Throws InputError otherwise.
std::vector<double> parse_horizons(const std::string& text);

/// Parameter patches that must all be consumed: `finish` rejects any key no
/// command asked for, so a typo never passes silently.
class ParameterSet {
 public:
  explicit ParameterSet(std::map<std::string, double> values) : values_(std::move(values)) {}

  /// Overwrites `target` when `key` is present.
  void apply(const std::string& key, double& target);
  void apply(const std::string& key, long& target);
  void apply(const std::string& key, int& target);
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  /// Throws InputError naming every key that was never applied.
  void finish() const;

 private:
  std::map<std::string, double> values_;
  std::set<std::string> used_;
};

}  // namespace recovery::cli

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
#include "config.hpp"

#include <cmath>

#include "recovery/error.hpp"

namespace recovery::cli {
namespace {

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw InputError(what + ": not a finite number: '" + text + "'");
  }
  return v;
}

double as_integer(const std::string& key, double v) {
  if (v != std::floor(v) || std::abs(v) > 1e15) {
    throw InputError("override " + key + " must be an integer");
  }
  return v;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"recover", "forward", "yields",     "lrr",
                                              "bounds",  "sqrt",    "demo-approx"};
  return names;
}

std::pair<std::string, double> parse_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw InputError("override must look like key=value: '" + text + "'");
  }
  const std::string key = text.substr(0, eq);
  return {key, parse_number(text.substr(eq + 1), "override " + key)};
}

std::vector<double> parse_horizons(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos) {
    throw InputError("horizons must look like a:b:step: '" + text + "'");
  }
  const double a = parse_number(text.substr(0, c1), "horizon start");
  const double b = parse_number(text.substr(c1 + 1, c2 - c1 - 1), "horizon end");
  const double step = parse_number(text.substr(c2 + 1), "horizon step");
  if (!(step > 0.0) || !(a <= b)) {
    throw InputError("horizons need start <= end and a positive step: '" + text + "'");
  }
  std::vector<double> out;
  // Integer multiples of step avoid drift from repeated addition.
  const long count = static_cast<long>(std::floor((b - a) / step * (1.0 + 1e-12))) + 1;
  if (count > 1'000'000) throw InputError("horizon grid is too long: '" + text + "'");
  for (long k = 0; k < count; ++k) out.push_back(a + static_cast<double>(k) * step);
  return out;
}

void ParameterSet::apply(const std::string& key, double& target) {
  const auto it = values_.find(key);
  if (it == values_.end()) return;
  target = it->second;
  used_.insert(key);
}

void ParameterSet::apply(const std::string& key, long& target) {
  const auto it = values_.find(key);
  if (it == values_.end()) return;
  target = static_cast<long>(as_integer(key, it->second));
  used_.insert(key);
}

void ParameterSet::apply(const std::string& key, int& target) {
  const auto it = values_.find(key);
  if (it == values_.end()) return;
  const double v = as_integer(key, it->second);
  if (std::abs(v) > 1e9) throw InputError("override " + key + " is out of range");
  target = static_cast<int>(v);
  used_.insert(key);
}

void ParameterSet::finish() const {
  std::string unknown;
  for (const auto& [key, value] : values_) {
    if (used_.count(key)) continue;
    if (!unknown.empty()) unknown += ", ";
    unknown += key;
  }
  if (!unknown.empty()) throw InputError("unknown parameter(s) for this command: " + unknown);
}

}  // namespace recovery::cli

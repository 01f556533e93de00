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
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace recovery::cli {

using json = nlohmann::ordered_json;

/// Throws InputError when the file is missing or is not valid JSON.
json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& value);

/// Output stream at round-trip precision. Throws InputError on failure.
std::ofstream open_csv(const std::filesystem::path& path);

/// Creates the output directory if needed.
void ensure_directory(const std::filesystem::path& dir);

json to_json(const Eigen::MatrixXd& m);
json to_json(const Eigen::VectorXd& v);

/// A rectangular array of numbers. Throws InputError naming `field`.
Eigen::MatrixXd matrix_from_json(const json& value, const std::string& field);
Eigen::VectorXd vector_from_json(const json& value, const std::string& field);
/// A number under `key`, or InputError.
double number_from_json(const json& object, const std::string& key);

}  // namespace recovery::cli

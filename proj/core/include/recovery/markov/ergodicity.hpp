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

#include <string>
#include <vector>

#include "recovery/markov/types.hpp"

namespace recovery::markov {

struct ErgodicityReport {
  bool irreducible = false;
  bool aperiodic = false;
  /// Period of each communicating class, listed in the order of `classes`.
  std::vector<long> periods;
  /// Strongly connected components of the transition graph.
  std::vector<std::vector<Index>> classes;
  std::string diagnostics;

  bool passed() const { return irreducible && aperiodic; }
};

/// Irreducibility by reachability, aperiodicity by the gcd of cycle lengths
/// through one state of each class. A finite irreducible chain is positive
/// recurrent, so nothing further is checked.
ErgodicityReport ergodicity_check(const StochasticMatrix& transition);

}  // namespace recovery::markov

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

#include <vector>

#include "recovery/markov/types.hpp"

namespace recovery::markov {

struct PowerIterationOptions {
  long max_iterations = 1'000'000;
  /// Stop once (max_i r_i - min_i r_i) / min_i r_i <= tolerance, where
  /// r_i = (Qx)_i / x_i are the Collatz-Wielandt ratios.
  double tolerance = 1e-13;
  /// Plain power steps before switching to shifted inverse iteration.
  long refine_after = 2'000;
};

/// Dominant eigenpair of a primitive nonnegative matrix.
struct DominantPair {
  double eigenvalue = 0.0;
  Vector vector;  ///< strictly positive, max entry 1
  long iterations = 0;
  double relative_spread = 0.0;  ///< final Collatz-Wielandt spread
};

/// Throws ConvergenceError when the bounds stop tightening or the iteration
/// budget runs out.
DominantPair dominant_eigenpair(const Matrix& m, const PowerIterationOptions& options = {});

struct PerronFrobeniusSolution {
  double eta_hat = 0.0;
  Vector e_hat;   ///< right eigenvector, max entry 1
  Vector e_star;  ///< left eigenvector, sums to 1
  long iterations = 0;
  double residual = 0.0;  ///< ||Q e_hat - exp(eta_hat) e_hat||_inf
};

PerronFrobeniusSolution perron_frobenius(const PricingMatrix& prices,
                                         const PowerIterationOptions& options = {});

struct PositiveEigenCandidate {
  double eta = 0.0;
  Vector e;  ///< max entry 1
  /// Some entries were below the sign-classification threshold and were
  /// ignored when deciding that the vector has one sign.
  bool borderline = false;
};

/// Dense eigendecomposition filtered to real eigenpairs whose eigenvector has
/// a single sign. Entries with |e_i| < 1e-10 (after scaling to max |e_i| = 1)
/// do not take part in the sign test.
std::vector<PositiveEigenCandidate> enumerate_positive_eigen(const PricingMatrix& prices);

/// |lambda_2| / lambda_1 from a dense eigensolve. Diagnostic only.
double subdominant_ratio(const Matrix& m);

}  // namespace recovery::markov

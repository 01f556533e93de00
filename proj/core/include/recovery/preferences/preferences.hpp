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

#include "recovery/markov/types.hpp"

namespace recovery::preferences {

using markov::Matrix;
using markov::SdfMatrix;
using markov::StochasticMatrix;
using markov::Vector;

/// Power utility with consumption C_t = exp(g_c t) c(X_t).
struct PowerUtilitySpec {
  double delta = 0.0;  ///< subjective discount rate, >= 0
  double gamma = 1.0;  ///< risk aversion, >= 0 (0 is risk neutral)
  double g_c = 0.0;    ///< deterministic log consumption growth per period
  Vector c;            ///< positive state consumptions
};

/// Recursive utility with unit elasticity of substitution.
struct RecursiveUtilitySpec {
  double delta = 0.0;  ///< > 0; exp(-delta) is the contraction modulus
  double gamma = 1.0;  ///< > 0
  double g_c = 0.0;
  Vector c;
};

struct ValueFunction {
  Vector v;       ///< detrended continuation values
  Vector v_star;  ///< exp((1 - gamma) v)
  Vector log_v_star;  ///< (1 - gamma) v, exact even where v_star under/overflows
  double residual = 0.0;
  long iterations = 0;
};

struct FixedPointOptions {
  double tolerance = 1e-13;
  long max_iterations = 10'000'000;
};

/// s_ij = exp(-delta - gamma g_c) (c_j / c_i)^(-gamma).
SdfMatrix power_sdf(const PowerUtilitySpec& spec);

/// Solves
///   v_i = (1 - b) log c_i + b/(1 - gamma) log sum_j p_ij exp((1 - gamma) v_j) + b g_c
/// with b = exp(-delta) by fixed-point iteration; gamma = 1 solves the linear
/// recursion v = (1 - b) log c + b P v + b g_c directly.
/// Throws InputError on invalid specs, ConvergenceError when the iteration
/// budget runs out.
ValueFunction solve_continuation_value(const RecursiveUtilitySpec& spec,
                                       const StochasticMatrix& transition,
                                       const FixedPointOptions& options = {});

/// L-infinity residual of the recursion at v.
double continuation_residual(const RecursiveUtilitySpec& spec, const StochasticMatrix& transition,
                             const Vector& v);

/// s_ij = exp(-(delta + g_c)) (c_i / c_j) v*_j / (P_i v*).
SdfMatrix recursive_sdf(const RecursiveUtilitySpec& spec, const StochasticMatrix& transition,
                        const ValueFunction& value);

/// Increments v*_j / (P_i v*) of the continuation-value martingale.
Matrix recursive_martingale(const StochasticMatrix& transition, const ValueFunction& value);

}  // namespace recovery::preferences

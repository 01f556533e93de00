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
#include "recovery/preferences/preferences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "recovery/error.hpp"

namespace recovery::preferences {
namespace {

using markov::Index;

void require_consumption(const Vector& c) {
  if (c.size() == 0 || !(c.array() > 0.0).all() || !c.allFinite()) {
    throw InputError("consumption vector must be non-empty, finite and positive");
  }
}

void validate(const RecursiveUtilitySpec& spec, const StochasticMatrix& transition) {
  require_consumption(spec.c);
  if (!(spec.delta > 0.0)) throw InputError("recursive utility needs delta > 0");
  if (!(spec.gamma > 0.0)) throw InputError("recursive utility needs gamma > 0");
  if (!std::isfinite(spec.g_c)) throw InputError("g_c must be finite");
  if (spec.c.size() != transition.size()) {
    throw InputError("consumption and transition dimensions differ");
  }
}

// log sum_j p_ij exp(w_j), skipping zero-probability cells.
double log_expect_exp(const Matrix& p, Index i, const Vector& w) {
  double top = -std::numeric_limits<double>::infinity();
  for (Index j = 0; j < w.size(); ++j) {
    if (p(i, j) > 0.0) top = std::max(top, w(j));
  }
  double sum = 0.0;
  for (Index j = 0; j < w.size(); ++j) {
    if (p(i, j) > 0.0) sum += p(i, j) * std::exp(w(j) - top);
  }
  return top + std::log(sum);
}

bool is_log_case(double gamma) { return gamma == 1.0; }

// Right-hand side of the recursion.
Vector recursion_map(const RecursiveUtilitySpec& spec, const Matrix& p, const Vector& log_c,
                     const Vector& v) {
  const double b = std::exp(-spec.delta);
  const Index n = v.size();
  Vector out(n);
  if (is_log_case(spec.gamma)) {
    out = (1.0 - b) * log_c + b * (p * v);
    out.array() += b * spec.g_c;
    return out;
  }
  const double k = 1.0 - spec.gamma;
  const Vector w = k * v;
  for (Index i = 0; i < n; ++i) {
    out(i) = (1.0 - b) * log_c(i) + (b / k) * log_expect_exp(p, i, w) + b * spec.g_c;
  }
  return out;
}

}  // namespace

SdfMatrix power_sdf(const PowerUtilitySpec& spec) {
  require_consumption(spec.c);
  if (!(spec.delta >= 0.0) || !(spec.gamma >= 0.0) || !std::isfinite(spec.g_c)) {
    throw InputError("power utility needs delta >= 0, gamma >= 0 and finite g_c");
  }
  const Index n = spec.c.size();
  Matrix s(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      s(i, j) = std::exp(-spec.delta - spec.gamma * spec.g_c -
                         spec.gamma * (std::log(spec.c(j)) - std::log(spec.c(i))));
    }
  }
  return SdfMatrix(std::move(s));
}

double continuation_residual(const RecursiveUtilitySpec& spec, const StochasticMatrix& transition,
                             const Vector& v) {
  validate(spec, transition);
  const Vector log_c = spec.c.array().log().matrix();
  return (recursion_map(spec, transition.matrix(), log_c, v) - v).lpNorm<Eigen::Infinity>();
}

ValueFunction solve_continuation_value(const RecursiveUtilitySpec& spec,
                                       const StochasticMatrix& transition,
                                       const FixedPointOptions& options) {
  validate(spec, transition);
  const Matrix& p = transition.matrix();
  const Index n = p.rows();
  const Vector log_c = spec.c.array().log().matrix();
  const double b = std::exp(-spec.delta);

  ValueFunction out;
  if (is_log_case(spec.gamma)) {
    const Matrix a = Matrix::Identity(n, n) - b * p;
    Vector rhs = (1.0 - b) * log_c;
    rhs.array() += b * spec.g_c;
    out.v = a.partialPivLu().solve(rhs);
  } else {
    // Start from the constant-consumption solution at the mean log level.
    const double level = log_c.mean() + b * spec.g_c / (1.0 - b);
    Vector v = Vector::Constant(n, level);
    long it = 0;
    while (true) {
      const Vector next = recursion_map(spec, p, log_c, v);
      const double step = (next - v).lpNorm<Eigen::Infinity>();
      const double scale = std::max(1.0, next.lpNorm<Eigen::Infinity>());
      v = next;
      ++it;
      // The map contracts with modulus b, so the distance to the fixed
      // point is at most step * b / (1 - b).
      if (step * b / (1.0 - b) <= options.tolerance * scale) break;
      if (it >= options.max_iterations) {
        throw ConvergenceError("continuation value did not converge after " +
                               std::to_string(it) + " iterations (delta " +
                               std::to_string(spec.delta) + " may be too small)");
      }
    }
    out.iterations = it;
    out.v = std::move(v);
  }
  out.log_v_star = (1.0 - spec.gamma) * out.v;
  out.v_star = out.log_v_star.array().exp().matrix();
  out.residual = (recursion_map(spec, p, log_c, out.v) - out.v).lpNorm<Eigen::Infinity>();
  return out;
}

Matrix recursive_martingale(const StochasticMatrix& transition, const ValueFunction& value) {
  const Matrix& p = transition.matrix();
  const Index n = p.rows();
  if (value.v_star.size() != n) throw InputError("value function and transition dimensions differ");
  // log v*_j - log(P_i v*) in logs, so large |1 - gamma| v cannot overflow.
  const Vector w = value.log_v_star.size() == n ? value.log_v_star
                                                : Vector(value.v_star.array().log().matrix());
  Matrix h(n, n);
  for (Index i = 0; i < n; ++i) {
    const double log_mean = log_expect_exp(p, i, w);
    for (Index j = 0; j < n; ++j) h(i, j) = std::exp(w(j) - log_mean);
  }
  return h;
}

SdfMatrix recursive_sdf(const RecursiveUtilitySpec& spec, const StochasticMatrix& transition,
                        const ValueFunction& value) {
  validate(spec, transition);
  const Matrix h = recursive_martingale(transition, value);
  const Index n = h.rows();
  Matrix s(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      s(i, j) = std::exp(-(spec.delta + spec.g_c)) * spec.c(i) / spec.c(j) * h(i, j);
    }
  }
  return SdfMatrix(std::move(s));
}

}  // namespace recovery::preferences

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
#include "recovery/markov/yields.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "recovery/error.hpp"
#include "recovery/markov/recovery.hpp"

namespace recovery::markov {
namespace {

// Applies m repeatedly to v, recording log(m^t v) at the requested horizons.
Matrix log_iterates(const Matrix& m, const Vector& v, const std::vector<long>& horizons) {
  const long last = *std::max_element(horizons.begin(), horizons.end());
  Matrix logs(static_cast<Index>(horizons.size()), v.size());
  Vector x = v;
  double log_scale = 0.0;
  for (long t = 1; t <= last; ++t) {
    x = m * x;
    const double scale = x.maxCoeff();
    if (!(scale > 0.0) || !std::isfinite(scale)) {
      throw ModelError("growth operator lost positivity at horizon " + std::to_string(t));
    }
    x /= scale;
    log_scale += std::log(scale);
    for (std::size_t h = 0; h < horizons.size(); ++h) {
      if (horizons[h] == t) {
        logs.row(static_cast<Index>(h)) = (x.array().log() + log_scale).matrix().transpose();
      }
    }
  }
  return logs;
}

}  // namespace

GrowthOperators growth_operators(const MarkovPricingEconomy& economy, const Growth& growth) {
  const Matrix& p = economy.transition().matrix();
  const Matrix& q = economy.prices().matrix();
  const Index n = economy.size();
  if (std::holds_alternative<std::monostate>(growth)) return {p, q};

  if (const auto* ratio = std::get_if<Matrix>(&growth)) {
    if (ratio->rows() != n || ratio->cols() != n) {
      throw InputError("growth ratio matrix must be n x n");
    }
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        if (p(i, j) > 0.0 && !((*ratio)(i, j) > 0.0)) {
          throw InputError("growth ratios must be positive on reachable transitions");
        }
      }
    }
    return {p.cwiseProduct(*ratio), q.cwiseProduct(*ratio)};
  }

  const auto& f = std::get<GaussianAugmentedFunctional>(growth);
  if (f.states() != n) throw InputError("functional and economy dimensions differ");
  const Matrix& a_s = economy.sdf_normal_loading();
  const Matrix a_g = f.normal_loadings();
  const bool shared = a_s.cols() > 0 && a_g.cols() > 0;
  if (shared && a_s.cols() != a_g.cols()) {
    throw InputError("functional and sdf load on normal blocks of different width");
  }
  const Matrix pair = f.pair_log_increments(economy.transition());
  GrowthOperators out{Matrix(n, n), Matrix(n, n)};
  for (Index i = 0; i < n; ++i) {
    // E[exp(a.W)] = exp(|a|^2 / 2); the sdf's own factor is already inside q.
    const double own = 0.5 * a_g.row(i).squaredNorm();
    const double cross = shared ? a_g.row(i).dot(a_s.row(i)) : 0.0;
    for (Index j = 0; j < n; ++j) {
      out.expected(i, j) = p(i, j) * std::exp(pair(i, j) + own);
      out.priced(i, j) = q(i, j) * std::exp(pair(i, j) + own + cross);
    }
  }
  return out;
}

YieldCurve yield_curve(const MarkovPricingEconomy& economy, const Vector& payoff,
                       const Growth& growth, const std::vector<long>& horizons,
                       Measure measure) {
  if (horizons.empty()) throw InputError("no horizons requested");
  for (long t : horizons) {
    if (t < 1) throw InputError("yield horizons must be positive");
  }
  if (payoff.size() != economy.size() || !(payoff.array() > 0.0).all()) {
    throw InputError("payoff must be a positive vector with one entry per state");
  }
  const GrowthOperators ops = growth_operators(economy, growth);
  const Matrix priced = log_iterates(ops.priced, payoff, horizons);

  Matrix expected;
  if (measure == Measure::kPhysical) {
    expected = log_iterates(ops.expected, payoff, horizons);
  } else {
    // Ê[G_t psi(X_t) | x] = exp(-eta t) (priced^t (e∘psi))_x / e_x.
    const RecoveredMeasure rec = recover(economy.prices());
    expected = log_iterates(ops.priced, rec.e_hat.cwiseProduct(payoff), horizons);
    const Vector log_e = rec.e_hat.array().log().matrix();
    for (std::size_t h = 0; h < horizons.size(); ++h) {
      const Index r = static_cast<Index>(h);
      expected.row(r) -= log_e.transpose();
      expected.row(r).array() -= rec.eta_hat * static_cast<double>(horizons[h]);
    }
  }

  YieldCurve out{horizons, Matrix(static_cast<Index>(horizons.size()), economy.size())};
  for (std::size_t h = 0; h < horizons.size(); ++h) {
    const Index r = static_cast<Index>(h);
    out.yields.row(r) = (expected.row(r) - priced.row(r)) / static_cast<double>(horizons[h]);
  }
  return out;
}

}  // namespace recovery::markov

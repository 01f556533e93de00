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
#include "recovery/diffusion/square_root.hpp"

#include <algorithm>
#include <boost/random/normal_distribution.hpp>
#include <cmath>
#include <random>
#include <vector>

#include "recovery/error.hpp"
#include "recovery/util/parallel.hpp"

namespace recovery::diffusion {
namespace {

constexpr std::size_t kBlockPaths = 1024;

// Drift identity beta - a^2 x/2 - u kappa x + u kappa mu + x (u s + a)^2/2 - eta = 0.
void fill_residuals(const SquareRootModel& m, EigenCandidate& c) {
  const double u = c.upsilon;
  c.constant_residual = m.beta_bar + u * m.kappa * m.mu_bar - c.eta;
  c.linear_residual = -0.5 * m.alpha_bar * m.alpha_bar - u * m.kappa +
                      0.5 * (u * m.sigma_bar + m.alpha_bar) * (u * m.sigma_bar + m.alpha_bar);
}

EigenCandidate make_candidate(const SquareRootModel& m, double upsilon) {
  EigenCandidate c;
  c.upsilon = upsilon;
  c.eta = m.beta_bar + upsilon * m.kappa * m.mu_bar;
  c.kappa_new = m.kappa - m.sigma_bar * m.alpha_bar - upsilon * m.sigma_bar * m.sigma_bar;
  c.ergodic = c.kappa_new > 0.0;
  fill_residuals(m, c);
  return c;
}

}  // namespace

void SquareRootModel::validate() const {
  if (!(kappa > 0.0) || !(mu_bar > 0.0) || !(sigma_bar > 0.0)) {
    throw InputError("square-root model needs kappa, mu_bar and sigma_bar positive");
  }
  if (!(beta_bar < 0.0)) throw InputError("square-root model needs beta_bar < 0");
  if (!std::isfinite(alpha_bar)) throw InputError("alpha_bar must be finite");
}

std::array<EigenCandidate, 2> eigen_candidates(const SquareRootModel& model) {
  model.validate();
  const double s2 = model.sigma_bar * model.sigma_bar;
  const double upsilon = (2.0 * model.kappa - 2.0 * model.alpha_bar * model.sigma_bar) / s2;
  EigenCandidate second = make_candidate(model, upsilon);
  // Exact form of the second root's mean reversion: -kappa + sigma alpha.
  second.kappa_new = -model.kappa + model.sigma_bar * model.alpha_bar;
  second.ergodic = second.kappa_new > 0.0;
  return {make_candidate(model, 0.0), second};
}

Selection select_ergodic(const std::array<EigenCandidate, 2>& candidates) {
  Selection out;
  int count = 0;
  for (const auto& c : candidates) {
    if (c.kappa_new == 0.0) out.degenerate = true;
    if (c.kappa_new > 0.0) {
      ++count;
      out.selected = c;
    }
  }
  if (out.degenerate) {
    out.selected.reset();
    out.diagnostics = "kappa_new = 0: induced process does not mean-revert under either candidate";
  } else if (count != 1) {
    out.selected.reset();
    out.diagnostics = std::to_string(count) + " candidates mean-revert; expected exactly one";
  }
  return out;
}

SimulationStats simulate(const SquareRootModel& model, SimulationMeasure measure,
                         const EigenCandidate& candidate, const SimulationOptions& options) {
  model.validate();
  if (!(options.dt > 0.0) || !(options.horizon >= 0.0) || options.n_paths < 2) {
    throw InputError("simulation needs dt > 0, horizon >= 0 and at least two paths");
  }
  const long steps = std::lround(options.horizon / options.dt);
  const double dt = steps > 0 ? options.horizon / static_cast<double>(steps) : 0.0;
  const double sqrt_dt = std::sqrt(dt);
  const double x0 = options.x0 > 0.0 ? options.x0 : model.mu_bar;
  const double kappa_x = measure == SimulationMeasure::kPhysical ? model.kappa : candidate.kappa_new;
  const double t = dt * static_cast<double>(steps);
  const double a = model.alpha_bar;

  const std::size_t n_paths = static_cast<std::size_t>(options.n_paths);
  const std::size_t n_blocks = (n_paths + kBlockPaths - 1) / kBlockPaths;
  struct Partial {
    util::MomentAccumulator x, sdf, mart;
    long nan = 0;
  };
  std::vector<Partial> partials(n_blocks);

  util::parallel_blocks(n_blocks, [&](std::size_t b) {
    Partial& part = partials[b];
    boost::random::normal_distribution<double> normal;
    const std::size_t end = std::min(n_paths, (b + 1) * kBlockPaths);
    for (std::size_t path = b * kBlockPaths; path < end; ++path) {
      std::mt19937_64 rng(util::sub_seed(options.seed, path));
      double x = x0;
      double log_s = 0.0;
      for (long k = 0; k < steps; ++k) {
        const double xp = std::max(x, 0.0);
        const double dw = sqrt_dt * normal(rng);
        const double root = std::sqrt(xp);
        log_s += model.beta_bar * dt - 0.5 * xp * a * a * dt + root * a * dw;
        // The change of measure moves only the x coefficient of the drift.
        x += (model.kappa * model.mu_bar - kappa_x * xp) * dt + model.sigma_bar * root * dw;
      }
      const double mart =
          std::exp(-candidate.eta * t + log_s + candidate.upsilon * (x - x0));
      if (!std::isfinite(x) || !std::isfinite(log_s) || !std::isfinite(mart)) {
        ++part.nan;
        continue;
      }
      part.x.add(x);
      part.sdf.add(std::exp(log_s));
      part.mart.add(mart);
    }
  });

  Partial total;
  for (const auto& p : partials) {
    total.x.merge(p.x);
    total.sdf.merge(p.sdf);
    total.mart.merge(p.mart);
    total.nan += p.nan;
  }
  SimulationStats out;
  out.mean_x = total.x.mean();
  out.var_x = total.x.variance();
  out.nan_paths = total.nan;
  out.steps = steps;
  if (measure == SimulationMeasure::kPhysical) {
    out.sdf_mean = total.sdf.mean();
    out.sdf_se = total.sdf.standard_error();
    out.martingale_mean = total.mart.mean();
    out.martingale_se = total.mart.standard_error();
  }
  return out;
}

}  // namespace recovery::diffusion

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
#include "recovery/lrr/affine.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <string>

namespace recovery::lrr {
namespace {

using State = std::array<double, 3>;  // theta0, theta1, theta2

constexpr double kBlowUp = 1e8;

struct Diverged {
  double time;
};

}  // namespace

AffineExpectationCoeffs affine_coefficients(const AffineFunctional& f, const StateDynamics& d,
                                            std::vector<double> horizons) {
  for (double t : horizons) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("horizons must be nonnegative");
  }
  std::sort(horizons.begin(), horizons.end());
  AffineExpectationCoeffs out;
  out.horizons = horizons;
  if (horizons.empty()) return out;

  const double drift1 = d.mu12 + d.sigma1.dot(f.alpha);
  const double drift2 = d.mu22 + d.sigma2.dot(f.alpha);
  const double level2 = f.beta2 + 0.5 * f.alpha.squaredNorm();
  const double level0 = f.beta0 - f.beta1 * d.iota(0) - f.beta2 * d.iota(1);
  const double mean1 = d.mu11 * d.iota(0) + d.mu12 * d.iota(1);
  const double mean2 = d.mu22 * d.iota(1);

  auto rhs = [&](const State& th, State& dth, double t) {
    if (!std::isfinite(th[2]) || std::abs(th[2]) > kBlowUp) throw Diverged{t};
    const Vec3 mix = th[1] * d.sigma1 + th[2] * d.sigma2;
    dth[0] = level0 - th[1] * mean1 - th[2] * mean2;
    dth[1] = f.beta1 + d.mu11 * th[1];
    dth[2] = level2 + th[1] * drift1 + th[2] * drift2 + 0.5 * mix.squaredNorm();
  };

  // integrate_times needs a strictly increasing grid starting at 0.
  std::vector<double> grid{0.0};
  for (double t : horizons) {
    if (t > grid.back()) grid.push_back(t);
  }
  std::vector<State> at_grid;
  State state{0.0, 0.0, 0.0};
  namespace odeint = boost::numeric::odeint;
  auto stepper = odeint::make_dense_output(1e-12, 1e-12, odeint::runge_kutta_dopri5<State>());
  try {
    if (grid.size() == 1) {
      at_grid.push_back(state);
    } else {
      odeint::integrate_times(stepper, rhs, state, grid.begin(), grid.end(),
                              std::min(0.1, grid[1]),
                              [&](const State& s, double) { at_grid.push_back(s); });
    }
  } catch (const Diverged& e) {
    throw BlowUpError("theta2 diverges near t = " + std::to_string(e.time), e.time);
  }
  for (const State& s : at_grid) {
    if (!std::isfinite(s[0]) || !std::isfinite(s[2]) || std::abs(s[2]) > kBlowUp) {
      throw BlowUpError("theta2 diverges before the last horizon", grid.back());
    }
  }
  std::size_t g = 0;
  for (double t : horizons) {
    while (grid[g] < t) ++g;
    out.theta0.push_back(at_grid[g][0]);
    out.theta1.push_back(at_grid[g][1]);
    out.theta2.push_back(at_grid[g][2]);
  }
  return out;
}

double affine_expectation(const AffineFunctional& f, const StateDynamics& d, double horizon,
                          const Vec2& x) {
  const AffineExpectationCoeffs c = affine_coefficients(f, d, {horizon});
  return std::exp(c.log_expectation(0, x));
}

}  // namespace recovery::lrr

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
#include "recovery/lrr/model.hpp"

#include <cmath>
#include <string>

namespace recovery::lrr {

void StateDynamics::validate() const {
  if (!(mu11 < 0.0) || !(mu22 < 0.0)) {
    throw InputError("state dynamics need mu11 < 0 and mu22 < 0");
  }
  if (!(iota(1) > 0.0)) throw InputError("state dynamics need iota2 > 0");
  if (!std::isfinite(mu12) || !sigma1.allFinite() || !sigma2.allFinite() ||
      !std::isfinite(iota(0))) {
    throw InputError("state dynamics must be finite");
  }
}

AffineFunctional AffineFunctional::operator+(const AffineFunctional& other) const {
  return {beta0 + other.beta0, beta1 + other.beta1, beta2 + other.beta2, alpha + other.alpha};
}

void LrrParams::validate() const {
  dynamics.validate();
  if (!(delta > 0.0)) throw InputError("delta must be positive");
  if (!(gamma > 0.0)) throw InputError("gamma must be positive");
  if (!consumption.alpha.allFinite() || !std::isfinite(consumption.beta0) ||
      !std::isfinite(consumption.beta1) || !std::isfinite(consumption.beta2)) {
    throw InputError("consumption coefficients must be finite");
  }
}

LrrParams LrrParams::defaults() {
  LrrParams p;
  p.dynamics.mu11 = -0.021;
  p.dynamics.mu12 = 0.0;
  p.dynamics.mu22 = -0.013;
  p.dynamics.sigma1 = Vec3(0.0, 0.00034, 0.0);
  p.dynamics.sigma2 = Vec3(0.0, 0.0, -0.038);
  p.dynamics.iota = Vec2(0.0, 1.0);
  p.consumption = {0.0015, 1.0, 0.0, Vec3(0.0078, 0.0, 0.0)};
  p.delta = 0.002;
  p.gamma = 10.0;
  return p;
}

ValueCoefficients solve_value_function(const LrrParams& params) {
  params.validate();
  const StateDynamics& d = params.dynamics;
  const AffineFunctional& c = params.consumption;
  const double k = 1.0 - params.gamma;

  ValueCoefficients out;
  out.v1 = c.beta1 / (params.delta - d.mu11);

  // a v2^2 + b v2 + c0 = 0
  const Vec3 w = c.alpha + d.sigma1 * out.v1;
  const double a = 0.5 * k * d.sigma2.squaredNorm();
  const double b = d.mu22 - params.delta + k * w.dot(d.sigma2);
  const double c0 = c.beta2 + d.mu12 * out.v1 + 0.5 * k * w.squaredNorm();
  out.discriminant = b * b - 4.0 * a * c0;
  if (out.discriminant < 0.0) {
    throw ValueFunctionError("value function does not exist for gamma = " +
                                 std::to_string(params.gamma) + " (discriminant " +
                                 std::to_string(out.discriminant) + ")",
                             out.discriminant, params.gamma);
  }
  const double root = std::sqrt(out.discriminant);
  // The minus root, rationalized so it passes continuously through a = 0.
  if (a == 0.0) {
    out.v2 = -c0 / b;
  } else if (-b + root > 0.0) {
    out.v2 = 2.0 * c0 / (-b + root);
  } else {
    out.v2 = (-b - root) / (2.0 * a);
  }
  out.v0 = (c.beta0 - d.iota(0) * (c.beta1 + d.mu11 * out.v1) -
            d.iota(1) * (c.beta2 + d.mu12 * out.v1 + d.mu22 * out.v2)) /
           params.delta;

  const Vec3 u = value_loading(params, out);
  out.residuals = {
      params.delta * out.v0 - (c.beta0 - d.iota(0) * (c.beta1 + d.mu11 * out.v1) -
                               d.iota(1) * (c.beta2 + d.mu12 * out.v1 + d.mu22 * out.v2)),
      params.delta * out.v1 - (c.beta1 + d.mu11 * out.v1),
      params.delta * out.v2 -
          (c.beta2 + d.mu12 * out.v1 + d.mu22 * out.v2 + 0.5 * k * u.squaredNorm())};
  return out;
}

Vec3 value_loading(const LrrParams& params, const ValueCoefficients& value) {
  return params.consumption.alpha + params.dynamics.sigma1 * value.v1 +
         params.dynamics.sigma2 * value.v2;
}

AffineFunctional continuation_martingale(const LrrParams& params, const ValueCoefficients& value) {
  const Vec3 loading = (1.0 - params.gamma) * value_loading(params, value);
  // log H* has drift -x2 |loading|^2 / 2, written around iota2.
  const double half = 0.5 * loading.squaredNorm();
  return {-half * params.dynamics.iota(1), 0.0, -half, loading};
}

AffineFunctional sdf_coefficients(const LrrParams& params, const ValueCoefficients& value) {
  const AffineFunctional& c = params.consumption;
  const AffineFunctional minus_log_c{-params.delta - c.beta0, -c.beta1, -c.beta2, -c.alpha};
  return minus_log_c + continuation_martingale(params, value);
}

PfSolution solve_pf(const StateDynamics& d, const AffineFunctional& s) {
  d.validate();
  PfSolution out;
  out.e1 = -s.beta1 / d.mu11;
  const double e1 = out.e1;
  const double a = 0.5 * d.sigma2.squaredNorm();
  const double b = d.mu22 + d.sigma2.dot(s.alpha) + e1 * d.sigma1.dot(d.sigma2);
  const double c = s.beta2 + 0.5 * s.alpha.squaredNorm() + e1 * (d.mu12 + d.sigma1.dot(s.alpha)) +
                   0.5 * e1 * e1 * d.sigma1.squaredNorm();
  const double eta_base = s.beta0 - s.beta1 * d.iota(0) - s.beta2 * d.iota(1) -
                          e1 * (d.mu11 * d.iota(0) + d.mu12 * d.iota(1));
  auto make_root = [&](double e2) {
    return PfRoot{e2, eta_base - e2 * d.mu22 * d.iota(1), b + 2.0 * a * e2};
  };

  PfRoot chosen;
  if (a == 0.0) {
    if (b == 0.0) throw ModelError("eigenfunction equation for e2 is degenerate");
    chosen = make_root(-c / b);
  } else {
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
      throw ModelError("no real eigenfunction exponent: discriminant " + std::to_string(disc));
    }
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    const PfRoot r1 = make_root(q / a);
    const PfRoot r2 = q != 0.0 ? make_root(c / q) : r1;
    chosen = r1.eta <= r2.eta ? r1 : r2;
    out.rejected = r1.eta <= r2.eta ? r2 : r1;
  }
  if (!(chosen.mu_hat_22 < 0.0)) {
    throw ModelError("eigenfunction with the smaller eigenvalue does not preserve mean reversion");
  }
  out.e2 = chosen.e2;
  out.eta_hat = chosen.eta;
  out.alpha_h = s.alpha + d.sigma1 * out.e1 + d.sigma2 * out.e2;

  const Vec3 spread = d.sigma1 * out.e1 + d.sigma2 * out.e2;
  out.residuals = {
      s.beta0 - s.beta1 * d.iota(0) - s.beta2 * d.iota(1) -
          out.e1 * (d.mu11 * d.iota(0) + d.mu12 * d.iota(1)) - out.e2 * d.mu22 * d.iota(1) -
          out.eta_hat,
      s.beta1 + d.mu11 * out.e1,
      s.beta2 + 0.5 * s.alpha.squaredNorm() + out.e1 * (d.mu12 + d.sigma1.dot(s.alpha)) +
          out.e2 * (d.mu22 + d.sigma2.dot(s.alpha)) + 0.5 * spread.squaredNorm()};
  return out;
}

StateDynamics ChangedMeasureParams::dynamics(const StateDynamics& base) const {
  StateDynamics out = base;
  out.mu11 = mu_hat_11;
  out.mu12 = mu_hat_12;
  out.mu22 = mu_hat_22;
  out.iota = iota_hat;
  return out;
}

ChangedMeasureParams changed_measure(const StateDynamics& d, const Vec3& loading) {
  ChangedMeasureParams out;
  out.mu_hat_11 = d.mu11;
  out.mu_hat_12 = d.mu12 + d.sigma1.dot(loading);
  out.mu_hat_22 = d.mu22 + d.sigma2.dot(loading);
  if (!(out.mu_hat_22 < 0.0)) {
    throw ModelError("X2 does not mean-revert after the change of measure (mu_hat_22 = " +
                     std::to_string(out.mu_hat_22) + ")");
  }
  out.iota_hat(1) = d.mu22 / out.mu_hat_22 * d.iota(1);
  out.iota_hat(0) = d.iota(0) + (d.mu12 * d.iota(1) - out.mu_hat_12 * out.iota_hat(1)) / d.mu11;
  return out;
}

AffineFunctional transform_functional(const AffineFunctional& f, const StateDynamics& d,
                                      const ChangedMeasureParams& changed, const Vec3& loading) {
  const double tilt = f.alpha.dot(loading);
  AffineFunctional out = f;
  out.beta0 = f.beta0 + f.beta1 * (changed.iota_hat(0) - d.iota(0)) +
              f.beta2 * (changed.iota_hat(1) - d.iota(1)) + tilt * changed.iota_hat(1);
  out.beta2 = f.beta2 + tilt;
  return out;
}

LrrSolution solve(const LrrParams& params) {
  LrrSolution out;
  out.params = params;
  out.value = solve_value_function(params);
  out.sdf = sdf_coefficients(params, out.value);
  out.pf = solve_pf(params.dynamics, out.sdf);
  out.recovered = changed_measure(params.dynamics, out.pf.alpha_h);
  try {
    out.risk_neutral = changed_measure(params.dynamics, out.sdf.alpha);
  } catch (const ModelError&) {
    out.risk_neutral.reset();
  }
  return out;
}

}  // namespace recovery::lrr

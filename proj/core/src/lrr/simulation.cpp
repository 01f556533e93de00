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
#include "recovery/lrr/simulation.hpp"

#include <algorithm>
#include <boost/random/normal_distribution.hpp>
#include <cmath>
#include <random>

#include "recovery/util/parallel.hpp"

namespace recovery::lrr {
namespace {

constexpr std::size_t kBlockPaths = 512;

struct Stepper {
  const StateDynamics& d;
  double dt;
  double sqrt_dt;

  // One full-truncation Euler step; returns the Brownian increment used.
  template <class Rng, class Normal>
  Vec3 step(Vec2& x, Rng& rng, Normal& normal) const {
    Vec3 dw;
    for (int k = 0; k < 3; ++k) dw(k) = sqrt_dt * normal(rng);  // fixed draw order
    const double x2p = std::max(x(1), 0.0);
    const double root = std::sqrt(x2p);
    const double x1 = x(0);
    x(0) += (d.mu11 * (x1 - d.iota(0)) + d.mu12 * (x2p - d.iota(1))) * dt +
            root * d.sigma1.dot(dw);
    x(1) += d.mu22 * (x2p - d.iota(1)) * dt + root * d.sigma2.dot(dw);
    return dw;
  }
};

long step_count(double span, double dt) {
  return std::max<long>(0, std::lround(span / dt));
}

void require(const SimulationOptions& o) {
  if (o.n_paths < 2 || !(o.dt > 0.0) || !(o.burn_in >= 0.0) || o.bins < 1) {
    throw InputError("simulation needs n_paths >= 2, dt > 0, burn_in >= 0 and bins >= 1");
  }
}

}  // namespace

StationaryDensity stationary_density(const StateDynamics& dynamics,
                                     const SimulationOptions& options) {
  dynamics.validate();
  require(options);
  const long steps = step_count(options.burn_in, options.dt);
  const Stepper stepper{dynamics, options.dt, std::sqrt(options.dt)};
  const std::size_t n = static_cast<std::size_t>(options.n_paths);
  std::vector<Vec2> draws(n);
  std::vector<char> bad(n, 0);
  const std::size_t n_blocks = (n + kBlockPaths - 1) / kBlockPaths;

  util::parallel_blocks(n_blocks, [&](std::size_t b) {
    boost::random::normal_distribution<double> normal;
    const std::size_t end = std::min(n, (b + 1) * kBlockPaths);
    for (std::size_t path = b * kBlockPaths; path < end; ++path) {
      std::mt19937_64 rng(util::sub_seed(options.seed, path));
      Vec2 x = dynamics.iota;
      for (long k = 0; k < steps; ++k) stepper.step(x, rng, normal);
      draws[path] = x;
      bad[path] = x.allFinite() ? 0 : 1;
    }
  });

  StationaryDensity out;
  std::vector<Vec2> good;
  good.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (bad[i]) {
      ++out.nan_paths;
    } else {
      good.push_back(draws[i]);
    }
  }
  if (good.size() < 2) throw ModelError("stationary simulation produced no finite paths");
  const double m = static_cast<double>(good.size());

  util::CompensatedSum s1, s2;
  for (const Vec2& x : good) {
    s1.add(x(0));
    s2.add(x(1));
  }
  out.mean = Vec2(s1.value() / m, s2.value() / m);
  util::CompensatedSum c11, c12, c22, q22;
  for (const Vec2& x : good) {
    const Vec2 e = x - out.mean;
    c11.add(e(0) * e(0));
    c12.add(e(0) * e(1));
    c22.add(e(1) * e(1));
    q22.add(e(1) * e(1) * e(1) * e(1));
  }
  out.covariance << c11.value(), c12.value(), c12.value(), c22.value();
  out.covariance /= (m - 1.0);
  out.mean_se = (out.covariance.diagonal() / m).cwiseSqrt();
  const double var2 = out.covariance(1, 1);
  out.x2_variance_se = std::sqrt(std::max(0.0, q22.value() / m - var2 * var2) / m);
  const double denom = std::sqrt(out.covariance(0, 0) * out.covariance(1, 1));
  out.correlation = denom > 0.0 ? out.covariance(0, 1) / denom : 0.0;

  const Vec2 sd = out.covariance.diagonal().cwiseSqrt();
  out.lower = out.mean - 4.0 * sd;
  out.upper = out.mean + 4.0 * sd;
  out.histogram = Eigen::MatrixXd::Zero(options.bins, options.bins);
  for (const Vec2& x : good) {
    Eigen::Index cell[2];
    bool inside = true;
    for (int a = 0; a < 2; ++a) {
      const double width = out.upper(a) - out.lower(a);
      const double pos = width > 0.0 ? (x(a) - out.lower(a)) / width : 0.5;
      if (pos < 0.0 || pos >= 1.0) inside = false;
      cell[a] = std::min<Eigen::Index>(options.bins - 1,
                                       static_cast<Eigen::Index>(pos * options.bins));
    }
    if (inside) out.histogram(cell[0], cell[1]) += 1.0 / m;
  }
  out.samples.resize(static_cast<Eigen::Index>(good.size()), 2);
  for (std::size_t i = 0; i < good.size(); ++i) {
    out.samples.row(static_cast<Eigen::Index>(i)) = good[i].transpose();
  }
  return out;
}

FunctionalMonteCarlo simulate_expectation(const AffineFunctional& f, const StateDynamics& dynamics,
                                          const Vec2& x0, std::vector<double> horizons,
                                          const SimulationOptions& options) {
  dynamics.validate();
  require(options);
  std::sort(horizons.begin(), horizons.end());
  std::vector<long> marks;
  for (double t : horizons) {
    if (!(t >= 0.0)) throw InputError("horizons must be nonnegative");
    marks.push_back(step_count(t, options.dt));
  }
  const long steps = marks.empty() ? 0 : marks.back();
  const Stepper stepper{dynamics, options.dt, std::sqrt(options.dt)};
  const std::size_t n = static_cast<std::size_t>(options.n_paths);
  const std::size_t n_blocks = (n + kBlockPaths - 1) / kBlockPaths;
  const std::size_t h = horizons.size();

  struct Partial {
    std::vector<util::MomentAccumulator> moments;
    long nan = 0;
  };
  std::vector<Partial> partials(n_blocks, Partial{std::vector<util::MomentAccumulator>(h), 0});

  util::parallel_blocks(n_blocks, [&](std::size_t b) {
    Partial& part = partials[b];
    boost::random::normal_distribution<double> normal;
    std::vector<double> values(h);
    const std::size_t end = std::min(n, (b + 1) * kBlockPaths);
    for (std::size_t path = b * kBlockPaths; path < end; ++path) {
      std::mt19937_64 rng(util::sub_seed(options.seed, path));
      Vec2 x = x0;
      double log_m = 0.0;
      std::size_t next = 0;
      for (long k = 0; k <= steps; ++k) {
        while (next < h && marks[next] == k) values[next++] = std::exp(log_m);
        if (k == steps) break;
        const double x1 = x(0);
        const double x2p = std::max(x(1), 0.0);
        const double drift = f.beta0 + f.beta1 * (x1 - dynamics.iota(0)) +
                             f.beta2 * (x2p - dynamics.iota(1));
        const Vec3 dw = stepper.step(x, rng, normal);
        log_m += drift * options.dt + std::sqrt(x2p) * f.alpha.dot(dw);
      }
      bool finite = true;
      for (double v : values) finite = finite && std::isfinite(v);
      if (!finite) {
        ++part.nan;
        continue;
      }
      for (std::size_t j = 0; j < h; ++j) part.moments[j].add(values[j]);
    }
  });

  FunctionalMonteCarlo out;
  out.horizons = horizons;
  std::vector<util::MomentAccumulator> total(h);
  for (const Partial& p : partials) {
    for (std::size_t j = 0; j < h; ++j) total[j].merge(p.moments[j]);
    out.nan_paths += p.nan;
  }
  for (const auto& acc : total) {
    out.mean.push_back(acc.mean());
    out.standard_error.push_back(acc.standard_error());
  }
  return out;
}

}  // namespace recovery::lrr

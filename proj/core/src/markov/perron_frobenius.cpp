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
#include "recovery/markov/perron_frobenius.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "recovery/error.hpp"

namespace recovery::markov {
namespace {

struct Bounds {
  double lo;
  double hi;
};

// Collatz-Wielandt: lo <= spectral radius <= hi for any positive x.
Bounds ratio_bounds(const Vector& mx, const Vector& x) {
  const Vector r = mx.cwiseQuotient(x);
  return {r.minCoeff(), r.maxCoeff()};
}

double spread(const Bounds& b) { return (b.hi - b.lo) / b.lo; }

}  // namespace

DominantPair dominant_eigenpair(const Matrix& m, const PowerIterationOptions& options) {
  const Index n = m.rows();
  Vector x = Vector::Ones(n);
  Vector mx = m * x;
  long it = 0;
  // Underflow can leave exact zeros in Mx even for primitive M.
  auto positive = [](const Vector& v) { return (v.array() > 0.0).all(); };

  double best = std::numeric_limits<double>::infinity();
  long since_best = 0;
  const long stall_window = std::max<long>(options.refine_after, 50);

  // Each ratio carries about n ulps of rounding; asking for less stalls.
  const double tolerance = std::max(
      options.tolerance, 8.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon());

  while (true) {
    if (!positive(mx)) {
      // Move to the interior before using ratios.
      x = (mx + x) / (mx + x).maxCoeff();
      mx = m * x;
      if (++it > options.max_iterations) break;
      continue;
    }
    const Bounds b = ratio_bounds(mx, x);
    const double s = spread(b);
    if (s <= tolerance) {
      // One shifted solve close to the root removes what is left of the
      // subdominant components; keep it only if the bounds do not widen.
      const double sigma = b.hi + std::max(b.hi - b.lo, 1e-14 * b.hi);
      const Vector y = (sigma * Matrix::Identity(n, n) - m).partialPivLu().solve(x);
      if (positive(y) && y.allFinite()) {
        const Vector xp = y / y.maxCoeff();
        const Vector mxp = m * xp;
        if (positive(mxp) && spread(ratio_bounds(mxp, xp)) <= s) {
          x = xp;
          mx = mxp;
        }
      }
      const double rq = x.dot(mx) / x.squaredNorm();
      return {rq, x / x.maxCoeff(), it, spread(ratio_bounds(mx, x))};
    }
    if (s < best * (1.0 - 1e-3)) {
      best = s;
      since_best = 0;
    } else if (++since_best > stall_window) {
      throw ConvergenceError("dominant eigenpair stagnated at relative spread " +
                             std::to_string(s));
    }
    if (++it > options.max_iterations) break;

    if (it > options.refine_after) {
      // sigma > spectral radius, so (sigma I - M)^{-1} is a positive matrix
      // and keeps the iterate positive; sigma tracks the upper bound.
      const double sigma = b.hi + std::max(b.hi - b.lo, 1e-14 * b.hi);
      const Matrix shifted = sigma * Matrix::Identity(n, n) - m;
      Vector y = shifted.partialPivLu().solve(x);
      if (!positive(y) || !y.allFinite()) {
        y = mx;  // fall back to a power step
      }
      x = y / y.maxCoeff();
    } else {
      x = mx / mx.maxCoeff();
    }
    mx = m * x;
  }
  throw ConvergenceError("dominant eigenpair did not converge within " +
                         std::to_string(options.max_iterations) + " iterations");
}

PerronFrobeniusSolution perron_frobenius(const PricingMatrix& prices,
                                         const PowerIterationOptions& options) {
  const Matrix& q = prices.matrix();
  const DominantPair right = dominant_eigenpair(q, options);
  const DominantPair left = dominant_eigenpair(q.transpose(), options);
  PerronFrobeniusSolution out;
  out.eta_hat = std::log(right.eigenvalue);
  out.e_hat = right.vector;
  out.e_star = left.vector / left.vector.sum();
  out.iterations = right.iterations + left.iterations;
  out.residual = (q * out.e_hat - right.eigenvalue * out.e_hat).lpNorm<Eigen::Infinity>();
  return out;
}

std::vector<PositiveEigenCandidate> enumerate_positive_eigen(const PricingMatrix& prices) {
  constexpr double kZero = 1e-10;
  const Eigen::EigenSolver<Matrix> solver(prices.matrix(), true);
  const auto values = solver.eigenvalues();
  const auto vectors = solver.eigenvectors();
  std::vector<PositiveEigenCandidate> out;
  for (Index k = 0; k < values.size(); ++k) {
    const double scale_value = std::max(1.0, std::abs(values(k)));
    if (std::abs(values(k).imag()) > 1e-12 * scale_value) continue;
    // Rotate so the largest-modulus entry is real and positive.
    Index arg = 0;
    vectors.col(k).cwiseAbs().maxCoeff(&arg);
    const Eigen::VectorXcd v = vectors.col(k) / vectors(arg, k);
    if (v.imag().cwiseAbs().maxCoeff() > 1e-8) continue;
    const Vector re = v.real();
    bool borderline = false;
    bool same_sign = true;
    for (Index i = 0; i < re.size(); ++i) {
      if (std::abs(re(i)) < kZero) {
        borderline = true;
      } else if (re(i) < 0.0) {
        same_sign = false;
      }
    }
    if (!same_sign || !(values(k).real() > 0.0)) continue;
    out.push_back({std::log(values(k).real()), re, borderline});
  }
  return out;
}

double subdominant_ratio(const Matrix& m) {
  const Eigen::EigenSolver<Matrix> solver(m, false);
  std::vector<double> moduli;
  for (Index k = 0; k < solver.eigenvalues().size(); ++k) {
    moduli.push_back(std::abs(solver.eigenvalues()(k)));
  }
  std::sort(moduli.rbegin(), moduli.rend());
  if (moduli.size() < 2) return 0.0;
  return moduli[1] / moduli[0];
}

}  // namespace recovery::markov

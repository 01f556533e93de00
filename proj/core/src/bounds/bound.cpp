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
#include "recovery/bounds/bound.hpp"

#include <cmath>
#include <string>

#include "recovery/error.hpp"

namespace recovery::bounds {
namespace {

// Conjugate pieces, optionally with the J >= 0 restriction dropped (theta = 1).
struct Conjugate {
  Divergence divergence;
  bool quadratic;

  bool in_domain(double u) const { return quadratic ? std::isfinite(u) : divergence.in_domain(u); }
  double value(double u) const { return quadratic ? 0.5 * (u * u + 1.0) : divergence.conjugate(u); }
  double argmax(double u) const { return quadratic ? u : divergence.conjugate_argmax(u); }
  double second(double u) const { return quadratic ? 1.0 : divergence.conjugate_second(u); }
  double phi(double j) const { return quadratic ? 0.5 * (j * j - 1.0) : divergence.phi(j); }
};

struct DualState {
  Vector u;
  double value = 0.0;
  bool feasible = false;
};

DualState evaluate(const Conjugate& conj, const Matrix& z, const Vector& w, const Vector& b,
                   const Vector& lambda) {
  DualState s;
  s.u = z * lambda;
  for (Index t = 0; t < s.u.size(); ++t) {
    if (w(t) > 0.0 && !conj.in_domain(s.u(t))) return s;
  }
  double total = lambda.dot(b);
  for (Index t = 0; t < s.u.size(); ++t) {
    if (w(t) > 0.0) total -= w(t) * conj.value(s.u(t));
  }
  s.value = total;
  s.feasible = std::isfinite(total);
  return s;
}

}  // namespace

BoundProblem::BoundProblem(Matrix payoffs, Matrix prices, Vector long_bond_return, Vector weights)
    : payoffs_(std::move(payoffs)),
      prices_(std::move(prices)),
      long_bond_return_(std::move(long_bond_return)),
      weights_(std::move(weights)) {
  const Index t = payoffs_.rows();
  if (t == 0 || prices_.rows() != t || payoffs_.cols() != prices_.cols() ||
      long_bond_return_.size() != t || weights_.size() != t) {
    throw InputError("bound problem needs T x m payoffs and prices, and T returns and weights");
  }
  if (!payoffs_.allFinite() || !prices_.allFinite()) {
    throw InputError("payoffs and prices must be finite");
  }
  if (!(long_bond_return_.array() > 0.0).all() || !long_bond_return_.allFinite()) {
    throw InputError("long-bond returns must be positive");
  }
  if ((weights_.array() < 0.0).any() || std::abs(weights_.sum() - 1.0) > 1e-12) {
    throw InputError("weights must be nonnegative and sum to 1");
  }
}

BoundProblem::BoundProblem(Matrix payoffs, Matrix prices, Vector long_bond_return)
    : BoundProblem(payoffs, prices, long_bond_return,
                   Vector::Constant(payoffs.rows(), 1.0 / static_cast<double>(
                                                             std::max<Index>(1, payoffs.rows())))) {}

Matrix BoundProblem::constraint_rows() const {
  Matrix z(samples(), assets() + 1);
  z.col(0).setOnes();
  z.rightCols(assets()) = long_bond_return_.cwiseInverse().asDiagonal() * payoffs_;
  return z;
}

Vector BoundProblem::constraint_target() const {
  Vector b(assets() + 1);
  b(0) = 1.0;
  b.tail(assets()) = prices_.transpose() * weights_;
  return b;
}

Vector kazemi_test(const BoundProblem& problem) {
  const Matrix discounted = problem.long_bond_return().cwiseInverse().asDiagonal() * problem.payoffs();
  return (discounted - problem.prices()).transpose() * problem.weights();
}

BoundResult unconditional_bound(const BoundProblem& problem, double theta,
                                const BoundOptions& options) {
  if (options.allow_negative && theta != 1.0) {
    throw InputError("dropping J >= 0 is only supported for theta = 1");
  }
  const Conjugate conj{Divergence(theta), options.allow_negative};
  const Matrix z = problem.constraint_rows();
  const Vector b = problem.constraint_target();
  const Vector& w = problem.weights();
  const Index d = z.cols();

  BoundResult out;
  Vector lambda = Vector::Zero(d);
  lambda(0) = conj.divergence.unit_dual();
  DualState state = evaluate(conj, z, w, b, lambda);
  Vector grad(d);
  Vector j(z.rows());

  auto primal = [&](const Vector& u) {
    for (Index t = 0; t < u.size(); ++t) j(t) = conj.argmax(u(t));
    grad = b - z.transpose() * w.cwiseProduct(j);
  };
  primal(state.u);

  for (out.iterations = 0; out.iterations < options.max_iterations; ++out.iterations) {
    if (grad.lpNorm<Eigen::Infinity>() <= options.gradient_tolerance) {
      out.converged = true;
      break;
    }
    Vector curvature(z.rows());
    for (Index t = 0; t < z.rows(); ++t) curvature(t) = w(t) * conj.second(state.u(t));
    const Matrix hessian = z.transpose() * curvature.asDiagonal() * z;

    // Newton direction; minimum-norm when constraints are redundant or J is
    // clipped, steepest ascent when that does not ascend.
    Vector direction = hessian.completeOrthogonalDecomposition().solve(grad);
    bool gradient_step = false;
    if (!direction.allFinite() || direction.dot(grad) <= 1e-14 * grad.squaredNorm()) {
      direction = grad;
      gradient_step = true;
    }

    double step = 1.0;
    bool accepted = false;
    DualState trial;
    for (int k = 0; k < 80; ++k, step *= 0.5) {
      trial = evaluate(conj, z, w, b, lambda + step * direction);
      if (trial.feasible && trial.value >= state.value + 1e-4 * step * direction.dot(grad)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      out.diagnostics = "line search failed";
      break;
    }
    if (gradient_step) {
      // Unbounded duals move linearly; let the step grow while it pays.
      for (int k = 0; k < 60; ++k) {
        const DualState longer = evaluate(conj, z, w, b, lambda + 2.0 * step * direction);
        if (!longer.feasible || longer.value <= trial.value) break;
        step *= 2.0;
        trial = longer;
      }
    }
    lambda += step * direction;
    state = std::move(trial);
    primal(state.u);
    if (lambda.norm() > options.unbounded_threshold) {
      out.infeasible = true;
      out.certificate = lambda.normalized();
      out.diagnostics = "dual is unbounded: constraints cannot be met with admissible J";
      break;
    }
  }
  if (!out.converged && out.diagnostics.empty()) {
    out.diagnostics = "iteration limit reached";
  }

  out.multipliers = lambda;
  out.j = j;
  out.constraint_residuals = -grad;
  out.dual_value = state.value;
  double value = 0.0;
  for (Index t = 0; t < j.size(); ++t) {
    if (w(t) > 0.0) value += w(t) * conj.phi(j(t));
  }
  out.lambda_bar = value;
  out.duality_gap = std::abs(value - state.value);
  return out;
}

}  // namespace recovery::bounds

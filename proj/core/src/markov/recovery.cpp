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
#include "recovery/markov/recovery.hpp"

#include <cmath>
#include <string>

#include "recovery/error.hpp"
#include "recovery/markov/ergodicity.hpp"

namespace recovery::markov {
namespace {

void require_horizon(long t, long minimum) {
  if (t < minimum) {
    throw InputError("horizon must be at least " + std::to_string(minimum));
  }
}

// b = Q^t 1 scaled to max entry 1.
Vector scaled_bond_prices(const Matrix& q, long t) {
  Vector b = Vector::Ones(q.rows());
  for (long k = 0; k < t; ++k) {
    b = q * b;
    b /= b.maxCoeff();
  }
  return b;
}

RecoveredMeasure recover_impl(const PricingMatrix& prices, const PowerIterationOptions& options) {
  const PerronFrobeniusSolution pf = perron_frobenius(prices, options);
  const Matrix& q = prices.matrix();
  const Index n = q.rows();
  const double discount = std::exp(-pf.eta_hat);
  Matrix p_hat(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      p_hat(i, j) = discount * q(i, j) * pf.e_hat(j) / pf.e_hat(i);
    }
    // Rows already sum to 1 up to the eigen-solve spread; remove that.
    p_hat.row(i) /= p_hat.row(i).sum();
  }
  StochasticMatrix recovered(std::move(p_hat));
  const ErgodicityReport report = ergodicity_check(recovered);
  if (!report.passed()) {
    throw ModelError("recovered transition is not ergodic: " + report.diagnostics);
  }
  return RecoveredMeasure{pf.eta_hat, pf.e_hat, pf.e_star, std::move(recovered), std::nullopt};
}

}  // namespace

RiskNeutral risk_neutral(const PricingMatrix& prices) {
  const Vector bonds = prices.bond_prices();
  Matrix p_bar = prices.matrix();
  for (Index i = 0; i < p_bar.rows(); ++i) p_bar.row(i) /= bonds(i);
  return {StochasticMatrix(std::move(p_bar)), bonds};
}

ScaledPower scaled_power(const Matrix& q, long horizon) {
  require_horizon(horizon, 0);
  ScaledPower out{Matrix::Identity(q.rows(), q.cols()), 0.0};
  for (long k = 0; k < horizon; ++k) {
    out.matrix = out.matrix * q;
    const double scale = out.matrix.maxCoeff();
    out.matrix /= scale;
    out.log_scale += std::log(scale);
  }
  return out;
}

StochasticMatrix forward_measure(const PricingMatrix& prices, long horizon) {
  require_horizon(horizon, 1);
  return StochasticMatrix::from_unnormalized(scaled_power(prices.matrix(), horizon).matrix);
}

RecoveredMeasure recover(const PricingMatrix& prices, const PowerIterationOptions& options) {
  return recover_impl(prices, options);
}

RecoveredMeasure recover(const MarkovPricingEconomy& economy,
                         const PowerIterationOptions& options) {
  RecoveredMeasure out = recover_impl(economy.prices(), options);
  const Matrix& p = economy.transition().matrix();
  const Matrix& p_hat = out.p_hat.matrix();
  Matrix h = Matrix::Ones(p.rows(), p.cols());
  for (Index i = 0; i < p.rows(); ++i) {
    for (Index j = 0; j < p.cols(); ++j) {
      if (p(i, j) > 0.0) h(i, j) = p_hat(i, j) / p(i, j);
    }
  }
  out.h_increments = std::move(h);
  return out;
}

SdfDecomposition sdf_decomposition(const MarkovPricingEconomy& economy,
                                   const RecoveredMeasure& recovered,
                                   const std::vector<Index>& path) {
  if (path.empty()) throw InputError("path must contain at least the initial state");
  if (!recovered.h_increments) {
    throw InputError("decomposition needs a recovery with martingale increments");
  }
  const Index n = economy.size();
  for (Index x : path) {
    if (x < 0 || x >= n) throw InputError("path state out of range");
  }
  const Matrix& q = economy.prices().matrix();
  const Matrix& s = economy.sdf().matrix();
  const Matrix& h = *recovered.h_increments;
  SdfDecomposition out;
  for (std::size_t k = 1; k < path.size(); ++k) {
    const Index i = path[k - 1];
    const Index j = path[k];
    if (!(q(i, j) > 0.0)) {
      throw InputError("path step " + std::to_string(i) + " -> " + std::to_string(j) +
                       " has zero Arrow price");
    }
    out.log_martingale += std::log(h(i, j));
    out.log_accumulated_sdf += std::log(s(i, j));
  }
  const double t = static_cast<double>(path.size() - 1);
  out.log_trend = recovered.eta_hat * t;
  out.log_eigen_ratio = std::log(recovered.e_hat(path.front())) -
                        std::log(recovered.e_hat(path.back()));
  out.trend = std::exp(out.log_trend);
  out.eigen_ratio = std::exp(out.log_eigen_ratio);
  out.martingale = std::exp(out.log_martingale);
  out.accumulated_sdf = std::exp(out.log_accumulated_sdf);
  return out;
}

SdfDecomposition sdf_decomposition(const MarkovPricingEconomy& economy,
                                   const std::vector<Index>& path) {
  return sdf_decomposition(economy, recover(economy), path);
}

Matrix holding_period_return_limit(const PricingMatrix& prices) {
  const PerronFrobeniusSolution pf = perron_frobenius(prices);
  const Index n = prices.size();
  Matrix r(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      r(i, j) = std::exp(-pf.eta_hat) * pf.e_hat(j) / pf.e_hat(i);
    }
  }
  return r;
}

Matrix holding_period_return(const PricingMatrix& prices, long tau) {
  require_horizon(tau, 1);
  const Vector b = scaled_bond_prices(prices.matrix(), tau - 1);
  const Vector qb = prices.matrix() * b;
  const Index n = prices.size();
  Matrix r(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) r(i, j) = b(j) / qb(i);
  }
  return r;
}

StochasticMatrix forward_one_period_limit(const PricingMatrix& prices, long tau) {
  require_horizon(tau, 2);
  const Vector b = scaled_bond_prices(prices.matrix(), tau - 1);
  Matrix weighted = prices.matrix() * b.asDiagonal();
  return StochasticMatrix::from_unnormalized(std::move(weighted));
}

LogReturnBound log_return_bound_check(const MarkovPricingEconomy& economy, long, std::uint64_t) {
  const RecoveredMeasure rec = recover(economy);
  const Matrix& p = economy.transition().matrix();
  const Matrix& s = economy.sdf().matrix();
  const Matrix& h = *rec.h_increments;
  const Index n = economy.size();
  LogReturnBound out{Vector::Zero(n), Vector::Zero(n), Vector::Zero(n)};
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (!(p(i, j) > 0.0)) continue;
      const double log_r = -rec.eta_hat + std::log(rec.e_hat(j)) - std::log(rec.e_hat(i));
      out.lhs(i) += p(i, j) * log_r;
      out.rhs(i) -= p(i, j) * std::log(s(i, j));
      // log s + log R∞ = log h, so the slack is -E[log h], kept free of
      // cancellation between lhs and rhs.
      out.slack(i) -= p(i, j) * std::log(h(i, j));
    }
  }
  return out;
}

Vector stationary_distribution(const StochasticMatrix& transition) {
  const ErgodicityReport report = ergodicity_check(transition);
  if (!report.passed()) {
    throw ModelError("transition is not ergodic: " + report.diagnostics);
  }
  const DominantPair left = dominant_eigenpair(transition.matrix().transpose());
  return left.vector / left.vector.sum();
}

}  // namespace recovery::markov

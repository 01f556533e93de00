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
#include "recovery/markov/types.hpp"

#include <cmath>
#include <string>

#include "recovery/error.hpp"

namespace recovery::markov {
namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw InputError(std::string(what) + " must be a non-empty square matrix");
  }
  if (!m.allFinite()) {
    throw InputError(std::string(what) + " has non-finite entries");
  }
}

using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

BoolMatrix boolean_product(const BoolMatrix& a, const BoolMatrix& b) {
  const Index n = a.rows();
  BoolMatrix c = BoolMatrix::Constant(n, n, false);
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < n; ++k) {
      if (!a(i, k)) continue;
      for (Index j = 0; j < n; ++j) c(i, j) = c(i, j) || b(k, j);
    }
  }
  return c;
}

}  // namespace

StochasticMatrix::StochasticMatrix(Matrix entries) : entries_(std::move(entries)) {
  require_square(entries_, "transition matrix");
  if ((entries_.array() < 0.0).any()) {
    throw InputError("transition matrix has negative entries");
  }
  for (Index i = 0; i < entries_.rows(); ++i) {
    const double row = entries_.row(i).sum();
    if (std::abs(row - 1.0) > 1e-12) {
      throw InputError("transition row " + std::to_string(i) +
                       " sums to " + std::to_string(row) + ", not 1");
    }
  }
}

StochasticMatrix StochasticMatrix::from_unnormalized(Matrix entries) {
  require_square(entries, "transition matrix");
  for (Index i = 0; i < entries.rows(); ++i) {
    const double row = entries.row(i).sum();
    if (!(row > 0.0)) {
      throw InputError("transition row " + std::to_string(i) + " has no mass");
    }
    entries.row(i) /= row;
  }
  return StochasticMatrix(std::move(entries));
}

SdfMatrix::SdfMatrix(Matrix entries) : entries_(std::move(entries)) {
  require_square(entries_, "sdf matrix");
  if ((entries_.array() < 0.0).any()) {
    throw InputError("sdf matrix has negative entries");
  }
}

PricingMatrix::PricingMatrix(Matrix entries) : entries_(std::move(entries)) {
  require_square(entries_, "price matrix");
  if ((entries_.array() < 0.0).any()) {
    throw InputError("price matrix has negative entries");
  }
  for (Index i = 0; i < entries_.rows(); ++i) {
    if (!(entries_.row(i).sum() > 0.0)) {
      throw ModelError("bond price of state " + std::to_string(i) + " is zero");
    }
  }
  if (!is_primitive(entries_)) {
    throw ModelError("price matrix is not primitive");
  }
}

bool is_primitive(const Matrix& m) {
  const Index n = m.rows();
  BoolMatrix base = (m.array() > 0.0);
  // Wielandt: primitive iff A^k > 0 for k = (n-1)^2 + 1. A^k > 0 implies
  // A^j > 0 for all j >= k when A has no zero row, so any power past the
  // bound also decides.
  const long long bound = static_cast<long long>(n - 1) * (n - 1) + 1;
  BoolMatrix result = base;
  BoolMatrix power = base;
  long long exponent = bound - 1;
  while (exponent > 0) {
    if (exponent & 1) result = boolean_product(result, power);
    exponent >>= 1;
    if (exponent > 0) power = boolean_product(power, power);
  }
  return result.all();
}

GaussianAugmentedFunctional::GaussianAugmentedFunctional(Vector beta_bar,
                                                         Matrix alpha_bar)
    : beta_bar_(std::move(beta_bar)), alpha_bar_(std::move(alpha_bar)) {
  if (beta_bar_.size() == 0 || alpha_bar_.rows() != beta_bar_.size() ||
      alpha_bar_.cols() < beta_bar_.size()) {
    throw InputError("functional needs beta_bar (n) and alpha_bar (n x (n+k))");
  }
  if (!beta_bar_.allFinite() || !alpha_bar_.allFinite()) {
    throw InputError("functional coefficients must be finite");
  }
}

Matrix GaussianAugmentedFunctional::pair_log_increments(
    const StochasticMatrix& transition) const {
  const Index n = states();
  if (transition.size() != n) {
    throw InputError("functional and transition dimensions differ");
  }
  const Matrix chain = alpha_bar_.leftCols(n);
  // alpha_i . (u_j - P_i') = chain(i, j) - alpha_i . P_i'
  const Vector centre = (chain.array() * transition.matrix().array()).rowwise().sum();
  Matrix out(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      out(i, j) = beta_bar_(i) + chain(i, j) - centre(i);
    }
  }
  return out;
}

Matrix GaussianAugmentedFunctional::normal_loadings() const {
  return alpha_bar_.rightCols(normal_dim());
}

MarkovPricingEconomy build_economy(const StochasticMatrix& transition,
                                   const SdfMatrix& sdf,
                                   const Matrix& sdf_normal_loading) {
  const Index n = transition.size();
  if (sdf.size() != n) throw InputError("transition and sdf dimensions differ");
  if (sdf_normal_loading.size() != 0 && sdf_normal_loading.rows() != n) {
    throw InputError("sdf normal loading must have one row per state");
  }
  Matrix s = sdf.matrix();
  const Matrix& p = transition.matrix();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (p(i, j) == 0.0) {
        s(i, j) = 1.0;
      } else if (!(s(i, j) > 0.0)) {
        throw InputError("sdf must be positive where the transition is");
      }
    }
  }
  Matrix q = s.cwiseProduct(p);
  Matrix loading = sdf_normal_loading.size() == 0 ? Matrix(n, 0) : sdf_normal_loading;
  return MarkovPricingEconomy(transition, SdfMatrix(std::move(s)),
                              PricingMatrix(std::move(q)), std::move(loading));
}

MarkovPricingEconomy build_economy(const StochasticMatrix& transition,
                                   const SdfMatrix& sdf) {
  return build_economy(transition, sdf, Matrix(transition.size(), 0));
}

}  // namespace recovery::markov

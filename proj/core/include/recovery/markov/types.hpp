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
#pragma once

#include <Eigen/Dense>
#include <optional>

namespace recovery::markov {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Row-stochastic transition matrix: entry (i, j) is the probability of
/// moving from state i today to state j tomorrow.
class StochasticMatrix {
 public:
  /// Validates: square, finite, nonnegative, every row sums to 1 within 1e-12.
  explicit StochasticMatrix(Matrix entries);

  /// Divides each row by its sum, then validates.
  static StochasticMatrix from_unnormalized(Matrix entries);

  const Matrix& matrix() const { return entries_; }
  Index size() const { return entries_.rows(); }
  double operator()(Index i, Index j) const { return entries_(i, j); }

 private:
  Matrix entries_;
};

/// State-pair stochastic discount factors s_ij. When the economy also carries
/// Gaussian shocks, s_ij is the discount factor conditioned on (i, j) only,
/// i.e. with the Gaussian moment-generating factor already integrated out.
class SdfMatrix {
 public:
  /// Validates: square, finite, nonnegative.
  explicit SdfMatrix(Matrix entries);

  const Matrix& matrix() const { return entries_; }
  Index size() const { return entries_.rows(); }
  double operator()(Index i, Index j) const { return entries_(i, j); }

 private:
  Matrix entries_;
};

/// One-period Arrow prices q_ij. Construction enforces nonnegativity,
/// strictly positive bond prices (row sums) and primitivity.
class PricingMatrix {
 public:
  explicit PricingMatrix(Matrix entries);

  const Matrix& matrix() const { return entries_; }
  Index size() const { return entries_.rows(); }
  double operator()(Index i, Index j) const { return entries_(i, j); }
  /// One-period discount bond prices, q̄_i = Σ_j q_ij.
  Vector bond_prices() const { return entries_.rowwise().sum(); }

 private:
  Matrix entries_;
};

/// Transition, discount factors and Arrow prices of a finite-state economy,
/// with prices(i, j) = sdf(i, j) * transition(i, j).
///
/// `sdf_normal_loading` (n x k, possibly k = 0) records the exposure of the
/// log discount factor to k standard-normal shocks that are not revealed by
/// the chain. It does not enter `prices` beyond what `sdf` already
/// integrates; it is needed only for cross-moments with other functionals
/// exposed to the same shocks.
class MarkovPricingEconomy {
 public:
  const StochasticMatrix& transition() const { return transition_; }
  const SdfMatrix& sdf() const { return sdf_; }
  const PricingMatrix& prices() const { return prices_; }
  const Matrix& sdf_normal_loading() const { return sdf_normal_loading_; }
  Index size() const { return transition_.size(); }

 private:
  friend MarkovPricingEconomy build_economy(const StochasticMatrix&,
                                            const SdfMatrix&, const Matrix&);
  MarkovPricingEconomy(StochasticMatrix transition, SdfMatrix sdf,
                       PricingMatrix prices, Matrix sdf_normal_loading)
      : transition_(std::move(transition)),
        sdf_(std::move(sdf)),
        prices_(std::move(prices)),
        sdf_normal_loading_(std::move(sdf_normal_loading)) {}

  StochasticMatrix transition_;
  SdfMatrix sdf_;
  PricingMatrix prices_;
  Matrix sdf_normal_loading_;
};

/// Output of Perron-Frobenius recovery.
struct RecoveredMeasure {
  double eta_hat = 0.0;  ///< log dominant eigenvalue, per period
  Vector e_hat;          ///< right eigenvector, max entry 1
  Vector e_star;         ///< left eigenvector, entries sum to 1
  StochasticMatrix p_hat;
  /// ĥ_ij = p̂_ij / p_ij where p_ij > 0 and 1 elsewhere. Present only when a
  /// physical transition matrix was supplied.
  std::optional<Matrix> h_increments;
};

/// Log increment of a multiplicative functional in a Markov-switching
/// economy with Gaussian shocks:
///
///   log M_{t+1} - log M_t = X_t . [beta_bar + alpha_bar dW_{t+1}],
///   dW_{t+1} = [X_{t+1} - E(X_{t+1} | X_t); dŴ_{t+1}],  dŴ ~ N(0, I_k).
///
/// Row i of alpha_bar has n chain loadings followed by k normal loadings.
class GaussianAugmentedFunctional {
 public:
  GaussianAugmentedFunctional(Vector beta_bar, Matrix alpha_bar);

  Index states() const { return beta_bar_.size(); }
  Index normal_dim() const { return alpha_bar_.cols() - beta_bar_.size(); }
  const Vector& beta_bar() const { return beta_bar_; }
  const Matrix& alpha_bar() const { return alpha_bar_; }

  /// Chain part of the log increment for each (i, j): beta_i +
  /// alpha_i^chain . (u_j - P_i').
  Matrix pair_log_increments(const StochasticMatrix& transition) const;
  /// n x k block of loadings on the standard-normal shocks.
  Matrix normal_loadings() const;

 private:
  Vector beta_bar_;
  Matrix alpha_bar_;
};

/// Builds (P, S, Q = S∘P). Entries of `sdf` where the transition probability
/// is zero are replaced by 1 and play no further role.
/// Throws InputError on dimension mismatch or a non-positive discount factor
/// on a reachable transition, ModelError when Q is not primitive or has a
/// zero bond price.
MarkovPricingEconomy build_economy(const StochasticMatrix& transition,
                                   const SdfMatrix& sdf,
                                   const Matrix& sdf_normal_loading);
MarkovPricingEconomy build_economy(const StochasticMatrix& transition,
                                   const SdfMatrix& sdf);

/// True when some power of the zero pattern of `m` up to the Wielandt bound
/// (n-1)^2 + 1 is strictly positive.
bool is_primitive(const Matrix& m);

}  // namespace recovery::markov

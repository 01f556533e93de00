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
#include "recovery/markov/extended.hpp"

#include <cmath>
#include <string>

#include "recovery/error.hpp"
#include "recovery/markov/recovery.hpp"

namespace recovery::markov {
namespace {

constexpr double kMaxExponent = 700.0;

struct YBlocks {
  std::vector<Matrix> pair;  ///< chain part of each component, n x n
  Matrix exposure;           ///< row i: A_i' zeta, n x k
  Matrix drift;              ///< sum_l zeta_l pair_l, n x n
};

YBlocks y_blocks(const StochasticMatrix& transition,
                 std::span<const GaussianAugmentedFunctional> y_spec, const Vector& zeta) {
  const Index n = transition.size();
  if (static_cast<Index>(y_spec.size()) != zeta.size()) {
    throw InputError("zeta needs one entry per Y component");
  }
  if (y_spec.empty()) {
    return {{}, Matrix(n, 0), Matrix::Zero(n, n)};
  }
  const Index k = y_spec.front().normal_dim();
  YBlocks out{{}, Matrix::Zero(n, k), Matrix::Zero(n, n)};
  for (std::size_t l = 0; l < y_spec.size(); ++l) {
    const auto& y = y_spec[l];
    if (y.states() != n) throw InputError("Y component dimension differs from the economy");
    if (y.normal_dim() != k) throw InputError("Y components load on different normal blocks");
    out.pair.push_back(y.pair_log_increments(transition));
    out.drift += zeta(static_cast<Index>(l)) * out.pair.back();
    out.exposure += zeta(static_cast<Index>(l)) * y.normal_loadings();
  }
  return out;
}

}  // namespace

Matrix zeta_modified_prices(const MarkovPricingEconomy& economy,
                            std::span<const GaussianAugmentedFunctional> y_spec,
                            const Vector& zeta) {
  const Index n = economy.size();
  const YBlocks y = y_blocks(economy.transition(), y_spec, zeta);
  const Matrix& a_s = economy.sdf_normal_loading();
  if (a_s.cols() > 0 && y.exposure.cols() > 0 && a_s.cols() != y.exposure.cols()) {
    throw InputError("sdf and Y load on normal blocks of different width");
  }
  const bool shared = a_s.cols() > 0 && y.exposure.cols() > 0;
  const Matrix& q = economy.prices().matrix();
  Matrix out(n, n);
  for (Index i = 0; i < n; ++i) {
    const double gaussian = 0.5 * y.exposure.row(i).squaredNorm() -
                            (shared ? y.exposure.row(i).dot(a_s.row(i)) : 0.0);
    for (Index j = 0; j < n; ++j) {
      const double exponent = -y.drift(i, j) + gaussian;
      if (exponent > kMaxExponent) {
        throw ModelError("moment-generating factor overflows at (" + std::to_string(i) + ", " +
                         std::to_string(j) + ")");
      }
      out(i, j) = q(i, j) * std::exp(exponent);
    }
  }
  return out;
}

ExtendedFamilyMember extended_pf_family(const MarkovPricingEconomy& economy,
                                        std::span<const GaussianAugmentedFunctional> y_spec,
                                        const Vector& zeta) {
  Matrix modified = zeta_modified_prices(economy, y_spec, zeta);
  RecoveredMeasure rec = recover(PricingMatrix(modified));
  return {rec.eta_hat, rec.e_hat, std::move(rec.p_hat), std::move(modified)};
}

MarkovPricingEconomy build_extended_ross_economy(
    const StochasticMatrix& subjective, double delta, const Vector& zeta, const Vector& m,
    std::span<const GaussianAugmentedFunctional> y_spec) {
  const Index n = subjective.size();
  if (m.size() != n || !(m.array() > 0.0).all()) {
    throw InputError("m must be a positive vector with one entry per state");
  }
  const YBlocks y = y_blocks(subjective, y_spec, zeta);
  Matrix s(n, n);
  for (Index i = 0; i < n; ++i) {
    const double gaussian = 0.5 * y.exposure.row(i).squaredNorm();
    for (Index j = 0; j < n; ++j) {
      s(i, j) = std::exp(-delta + y.drift(i, j) + gaussian) * m(j) / m(i);
    }
  }
  return build_economy(subjective, SdfMatrix(std::move(s)), y.exposure);
}

StructuredRecovery structured_recover(const PricingMatrix& prices, const Matrix& y_r_increments) {
  const Matrix& q = prices.matrix();
  const Index n = q.rows();
  if (y_r_increments.rows() != n || y_r_increments.cols() != n) {
    throw InputError("Y^r increments must be n x n");
  }
  Matrix divided = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (q(i, j) == 0.0) continue;
      if (!(y_r_increments(i, j) > 0.0)) {
        throw InputError("Y^r increment is not positive where the Arrow price is");
      }
      divided(i, j) = q(i, j) / y_r_increments(i, j);
    }
  }
  RecoveredMeasure rec = recover(PricingMatrix(std::move(divided)));
  Vector m = rec.e_hat.cwiseInverse();
  m /= m.maxCoeff();
  return {-rec.eta_hat, std::move(m), std::move(rec.p_hat)};
}

}  // namespace recovery::markov

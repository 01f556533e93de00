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
#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "economies.hpp"
#include "recovery/error.hpp"
#include "recovery/markov/extended.hpp"
#include "recovery/markov/recovery.hpp"

namespace recovery::markov {
namespace {

using testing::max_abs;

// Two additive processes on a 3-state chain sharing a 2-dimensional normal
// block.
std::vector<GaussianAugmentedFunctional> sample_y_spec() {
  Vector b1(3), b2(3);
  b1 << 0.01, 0.0, -0.01;
  b2 << -0.02, 0.01, 0.015;
  Matrix a1(3, 5), a2(3, 5);
  a1 << 0.1, -0.2, 0.1, 0.05, 0.0,  //
      0.0, 0.1, -0.1, 0.02, 0.03,   //
      0.2, 0.0, -0.2, 0.0, 0.04;
  a2 << -0.1, 0.1, 0.0, 0.01, 0.02,  //
      0.05, 0.05, -0.1, 0.0, 0.01,   //
      0.0, -0.1, 0.1, 0.03, 0.0;
  return {GaussianAugmentedFunctional(b1, a1), GaussianAugmentedFunctional(b2, a2)};
}

Matrix sample_subjective() {
  Matrix p(3, 3);
  p << 0.7, 0.2, 0.1, 0.15, 0.7, 0.15, 0.1, 0.3, 0.6;
  return p;
}

TEST(ExtendedFamily, ZeroZetaIsPlainRecovery) {
  std::mt19937_64 rng(3);
  const auto e = testing::random_economy(rng, 3);
  const auto y = sample_y_spec();
  const auto member = extended_pf_family(e, y, Vector::Zero(2));
  const auto r = recover(e.prices());
  EXPECT_NEAR(member.eta, r.eta_hat, 1e-15);
  EXPECT_LE(max_abs(member.p_hat.matrix() - r.p_hat.matrix()), 1e-15);
}

TEST(ExtendedFamily, InvertsConstructionAtTrueZeta) {
  const auto y = sample_y_spec();
  Vector zeta(2), m(3);
  zeta << 1.5, -0.8;
  m << 1.0, 0.6, 1.7;
  const StochasticMatrix subjective(sample_subjective());
  const auto e = build_extended_ross_economy(subjective, 0.01, zeta, m, y);
  const auto member = extended_pf_family(e, y, zeta);
  EXPECT_LE(max_abs(member.p_hat.matrix() - subjective.matrix()), 1e-10);
  EXPECT_NEAR(member.eta, -0.01, 1e-12);
  const Vector inv_m = m.cwiseInverse() / m.cwiseInverse().maxCoeff();
  EXPECT_LE((member.e - inv_m).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(ExtendedFamily, ModifiedPricesOracle) {
  // Direct evaluation of q exp(-zeta.y + |A'zeta|^2/2 - zeta'A a).
  const auto y = sample_y_spec();
  Vector zeta(2), m(3);
  zeta << 0.7, 0.4;
  m << 1.0, 2.0, 0.5;
  const auto e = build_extended_ross_economy(StochasticMatrix(sample_subjective()), 0.02, zeta,
                                             m, y);
  Vector probe(2);
  probe << -0.3, 1.1;
  const Matrix got = zeta_modified_prices(e, y, probe);
  const Matrix y1 = y[0].pair_log_increments(e.transition());
  const Matrix y2 = y[1].pair_log_increments(e.transition());
  for (Index i = 0; i < 3; ++i) {
    const Eigen::RowVectorXd exposure =
        probe(0) * y[0].normal_loadings().row(i) + probe(1) * y[1].normal_loadings().row(i);
    const Eigen::RowVectorXd sdf_loading =
        zeta(0) * y[0].normal_loadings().row(i) + zeta(1) * y[1].normal_loadings().row(i);
    for (Index j = 0; j < 3; ++j) {
      const double expo = -(probe(0) * y1(i, j) + probe(1) * y2(i, j)) +
                          0.5 * exposure.squaredNorm() - exposure.dot(sdf_loading);
      EXPECT_NEAR(got(i, j), e.prices()(i, j) * std::exp(expo), 1e-15);
    }
  }
}

TEST(ExtendedFamily, DistinctZetaGivesDistinctMembers) {
  const auto y = sample_y_spec();
  Vector zeta(2), m(3);
  zeta << 1.0, 0.5;
  m << 1.0, 0.8, 1.3;
  const auto e = build_extended_ross_economy(StochasticMatrix(sample_subjective()), 0.01, zeta,
                                             m, y);
  const auto a = extended_pf_family(e, y, zeta);
  Vector other = zeta;
  other(0) += 0.5;
  const auto b = extended_pf_family(e, y, other);
  EXPECT_GT(std::abs(a.eta - b.eta), 1e-6);
  EXPECT_GT(max_abs(a.p_hat.matrix() - b.p_hat.matrix()), 1e-6);
}

TEST(ExtendedFamily, RejectsMismatchedZeta) {
  std::mt19937_64 rng(3);
  const auto e = testing::random_economy(rng, 3);
  const auto y = sample_y_spec();
  EXPECT_THROW(extended_pf_family(e, y, Vector::Zero(3)), InputError);
}

TEST(ExtendedFamily, OverflowIsModelError) {
  std::mt19937_64 rng(3);
  const auto e = testing::random_economy(rng, 3);
  const auto y = sample_y_spec();
  Vector zeta(2);
  zeta << 1e5, 0.0;
  EXPECT_THROW(zeta_modified_prices(e, y, zeta), ModelError);
}

TEST(StructuredRecover, UnitFactorIsPlainRecovery) {
  std::mt19937_64 rng(10);
  const auto e = testing::random_economy(rng, 4);
  const auto s = structured_recover(e.prices(), Matrix::Ones(4, 4));
  const auto r = recover(e.prices());
  EXPECT_LE(max_abs(s.p_tilde.matrix() - r.p_hat.matrix()), 1e-14);
  EXPECT_NEAR(s.delta, -r.eta_hat, 1e-15);
}

TEST(StructuredRecover, HabitStyleEconomyIsInverted) {
  // S = exp(-delta) (m_j / m_i) (c_j / c_i)^(-gamma) under a subjective P,
  // with Y^r = C^(-gamma) known to the econometrician.
  std::mt19937_64 rng(44);
  for (int k = 0; k < 20; ++k) {
    const Index n = 3 + k % 4;
    const Matrix p = testing::random_transition(rng, n);
    const Vector m = testing::random_positive(rng, n, 0.3, 3.0);
    const Vector c = testing::random_positive(rng, n, 0.5, 2.0);
    const double delta = 0.015, gamma = 4.0;
    Matrix g(n, n), s(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        g(i, j) = std::pow(c(j) / c(i), -gamma);
        s(i, j) = std::exp(-delta) * m(j) / m(i) * g(i, j);
      }
    const auto e = build_economy(StochasticMatrix(p), SdfMatrix(s));
    const auto out = structured_recover(e.prices(), g);
    EXPECT_LE(max_abs(out.p_tilde.matrix() - p), 1e-10);
    EXPECT_NEAR(out.delta, delta, 1e-10);
    EXPECT_LE((out.m_tilde - m / m.maxCoeff()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(StructuredRecover, RejectsZeroFactorOnPricedCell) {
  const auto e = testing::two_state_power_economy();
  Matrix g = Matrix::Ones(2, 2);
  g(0, 1) = 0.0;
  EXPECT_THROW(structured_recover(e.prices(), g), InputError);
}

}  // namespace
}  // namespace recovery::markov

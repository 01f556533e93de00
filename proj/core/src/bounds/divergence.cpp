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
#include "recovery/bounds/divergence.hpp"

#include <cmath>
#include <limits>

#include "recovery/error.hpp"

namespace recovery::bounds {

Divergence::Divergence(double theta) : theta_(theta) {
  if (!std::isfinite(theta)) throw InputError("theta must be finite");
  branch_ = theta == 0.0 ? Branch::kEntropy
            : theta == -1.0 ? Branch::kLogLikelihood
                            : Branch::kPower;
}

double Divergence::phi(double r) const {
  if (!(r >= 0.0)) throw InputError("divergence argument must be nonnegative");
  switch (branch_) {
    case Branch::kEntropy:
      return r == 0.0 ? 0.0 : r * std::log(r);
    case Branch::kLogLikelihood:
      if (r == 0.0) throw InputError("-log r is undefined at r = 0");
      return -std::log(r);
    case Branch::kPower:
      if (r == 0.0 && theta_ < -1.0) throw InputError("divergence is undefined at r = 0");
      // expm1 keeps phi(r) accurate near r = 1.
      return std::expm1((1.0 + theta_) * std::log(r)) / (theta_ * (1.0 + theta_));
  }
  return 0.0;
}

double Divergence::phi_prime(double r) const {
  switch (branch_) {
    case Branch::kEntropy:
      return std::log(r) + 1.0;
    case Branch::kLogLikelihood:
      return -1.0 / r;
    case Branch::kPower:
      return std::pow(r, theta_) / theta_;
  }
  return 0.0;
}

double Divergence::phi_second(double r) const { return std::pow(r, theta_ - 1.0); }

double Divergence::unit_dual() const { return phi_prime(1.0); }

bool Divergence::in_domain(double u) const {
  if (!std::isfinite(u)) return false;
  switch (branch_) {
    case Branch::kEntropy:
      return true;
    case Branch::kLogLikelihood:
      return u < 0.0;
    case Branch::kPower:
      return theta_ > 0.0 || u < 0.0;
  }
  return false;
}

double Divergence::conjugate_argmax(double u) const {
  switch (branch_) {
    case Branch::kEntropy:
      return std::exp(u - 1.0);
    case Branch::kLogLikelihood:
      return -1.0 / u;
    case Branch::kPower:
      if (theta_ > 0.0 && u <= 0.0) return 0.0;
      return std::pow(theta_ * u, 1.0 / theta_);
  }
  return 0.0;
}

double Divergence::conjugate(double u) const {
  if (!in_domain(u)) return std::numeric_limits<double>::infinity();
  switch (branch_) {
    case Branch::kEntropy:
      return std::exp(u - 1.0);
    case Branch::kLogLikelihood:
      return -1.0 - std::log(-u);
    case Branch::kPower: {
      const double j = conjugate_argmax(u);
      // u J - phi(J) with J^theta = theta u.
      return u * j * theta_ / (1.0 + theta_) + 1.0 / (theta_ * (1.0 + theta_));
    }
  }
  return 0.0;
}

double Divergence::conjugate_second(double u) const {
  const double j = conjugate_argmax(u);
  if (j == 0.0) return 0.0;
  // 1 / phi''(J) = J^(1 - theta)
  return std::pow(j, 1.0 - theta_);
}

}  // namespace recovery::bounds

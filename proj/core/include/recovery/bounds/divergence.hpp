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

namespace recovery::bounds {

/// Cressie-Read divergence
///   phi(r) = (r^(1+theta) - 1) / (theta (1 + theta)),
/// with limits r log r at theta = 0 and -log r at theta = -1.
/// phi(1) = 0 and phi''(1) = 1 for every theta.
class Divergence {
 public:
  explicit Divergence(double theta);

  double theta() const { return theta_; }

  /// Throws InputError for r < 0, and for r = 0 when theta <= -1.
  double phi(double r) const;
  double phi_prime(double r) const;
  double phi_second(double r) const;

  /// Convex conjugate phi*(u) = sup_{r >= 0} [u r - phi(r)] and its
  /// derivatives. conjugate_argmax(u) is the maximizing r; for theta > 0 it
  /// is 0 on u <= 0, so nonnegativity of the primal variable is built in.
  bool in_domain(double u) const;
  double conjugate(double u) const;
  double conjugate_argmax(double u) const;
  double conjugate_second(double u) const;

  /// phi'(1): the dual point whose primal variable is identically one.
  double unit_dual() const;

 private:
  enum class Branch { kPower, kEntropy, kLogLikelihood };
  double theta_;
  Branch branch_;
};

inline double phi(double theta, double r) { return Divergence(theta).phi(r); }

}  // namespace recovery::bounds

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

#include <cstddef>
#include <cstdint>
#include <functional>

namespace recovery::util {

/// Deterministic sub-seed for stream `index` of a run seeded with `seed`
/// (SplitMix64 finalizer over the pair).
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index);

/// Worker cap: RECOVERY_LAB_THREADS if set and positive, else
/// std::thread::hardware_concurrency() (at least 1).
unsigned thread_cap();

/// Runs body(block) for block in [0, n_blocks) across up to thread_cap()
/// workers. Blocks are claimed dynamically; callers write results into
/// per-block slots so the reduction order never depends on scheduling.
void parallel_blocks(std::size_t n_blocks,
                     const std::function<void(std::size_t)>& body);

/// Kahan-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Streaming mean / variance accumulator (compensated first and second
/// moments). Mergeable so per-block partials reduce in block order.
class MomentAccumulator {
 public:
  void add(double x) {
    ++count_;
    s1_.add(x);
    s2_.add(x * x);
  }
  void merge(const MomentAccumulator& other) {
    count_ += other.count_;
    s1_.add(other.s1_.value());
    s2_.add(other.s2_.value());
  }
  std::size_t count() const { return count_; }
  double mean() const { return count_ ? s1_.value() / count_ : 0.0; }
  // Unbiased sample variance.
  double variance() const;
  double standard_error() const;

 private:
  std::size_t count_ = 0;
  CompensatedSum s1_;
  CompensatedSum s2_;
};

}  // namespace recovery::util

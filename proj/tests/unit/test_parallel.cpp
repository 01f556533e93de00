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

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <set>
#include <vector>

#include "recovery/util/parallel.hpp"

namespace recovery::util {
namespace {

TEST(SubSeed, DeterministicAndDistinct) {
  EXPECT_EQ(sub_seed(7, 3), sub_seed(7, 3));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(sub_seed(42, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(sub_seed(1, 0), sub_seed(2, 0));
}

TEST(ParallelBlocks, VisitsEveryBlockOnce) {
  std::vector<std::atomic<int>> hits(257);
  parallel_blocks(hits.size(), [&](std::size_t b) { hits[b].fetch_add(1); });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(ParallelBlocks, ResultIndependentOfThreadCap) {
  auto run = [] {
    std::vector<double> slot(64);
    parallel_blocks(slot.size(), [&](std::size_t b) { slot[b] = 1.0 / (1.0 + b); });
    CompensatedSum s;
    for (double x : slot) s.add(x);
    return s.value();
  };
  ::setenv("RECOVERY_LAB_THREADS", "1", 1);
  const double one = run();
  ::setenv("RECOVERY_LAB_THREADS", "4", 1);
  const double four = run();
  ::unsetenv("RECOVERY_LAB_THREADS");
  EXPECT_EQ(one, four);
}

TEST(ThreadCap, HonoursEnvironment) {
  ::setenv("RECOVERY_LAB_THREADS", "3", 1);
  EXPECT_EQ(thread_cap(), 3u);
  ::setenv("RECOVERY_LAB_THREADS", "0", 1);
  EXPECT_GE(thread_cap(), 1u);
  ::unsetenv("RECOVERY_LAB_THREADS");
}

TEST(MomentAccumulator, MatchesTwoPassOnSmallSample) {
  const std::vector<double> xs{1.0, 2.0, 4.0, 7.0};
  MomentAccumulator a, b;
  a.add(xs[0]);
  a.add(xs[1]);
  b.add(xs[2]);
  b.add(xs[3]);
  a.merge(b);
  EXPECT_EQ(a.count(), 4u);
  EXPECT_DOUBLE_EQ(a.mean(), 3.5);
  // sum of squared deviations 6.25 + 2.25 + 0.25 + 12.25 = 21, over n - 1
  EXPECT_NEAR(a.variance(), 7.0, 1e-12);
  EXPECT_NEAR(a.standard_error(), std::sqrt(7.0 / 4.0), 1e-12);
}

TEST(CompensatedSum, RecoversSmallTerms) {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  EXPECT_NEAR(s.value() - 1.0, 1e-13, 1e-15);
}

}  // namespace
}  // namespace recovery::util

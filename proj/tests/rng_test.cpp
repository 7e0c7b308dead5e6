// Copyright 2026 The ghz-synth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "ghz/rng.hpp"

namespace ghz {
namespace {

TEST(Rng, SameSeedSameStream) {
  Rng a(RngSeed{5});
  Rng b(RngSeed{5});
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, DeriveSeedDependsOnEveryKey) {
  const RngSeed root{42};
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 10; ++a) {
    for (std::uint64_t b = 0; b < 10; ++b) seen.insert(derive_seed(root, {a, b}).value);
  }
  EXPECT_EQ(seen.size(), 100u);
  EXPECT_NE(derive_seed(root, {1, 2}).value, derive_seed(root, {2, 1}).value);
  EXPECT_EQ(derive_seed(root, {7}).value, derive_seed(root, {7}).value);
  EXPECT_NE(derive_seed(RngSeed{1}, {7}).value, derive_seed(RngSeed{2}, {7}).value);
}

TEST(Rng, HashStringStable) {
  EXPECT_EQ(hash_string("merging"), hash_string("merging"));
  EXPECT_NE(hash_string("merging"), hash_string("growing"));
  // FNV-1a offset basis for the empty string.
  EXPECT_EQ(hash_string(""), 0xcbf29ce484222325ULL);
}

TEST(Rng, UniformIndexCoversRangeEvenly) {
  Rng rng(RngSeed{9});
  const std::uint64_t bound = 7;
  const int draws = 70000;
  std::vector<int> counts(bound, 0);
  for (int i = 0; i < draws; ++i) {
    const auto v = rng.uniform_index(bound);
    ASSERT_LT(v, bound);
    ++counts[v];
  }
  const double expected = static_cast<double>(draws) / bound;
  for (int c : counts) EXPECT_NEAR(c, expected, 5 * std::sqrt(expected));
}

TEST(Rng, BernoulliEdgesAndRate) {
  Rng rng(RngSeed{10});
  int hits = 0;
  for (int i = 0; i < 1000; ++i) {
    EXPECT_FALSE(rng.bernoulli(0.0));
    EXPECT_TRUE(rng.bernoulli(1.0));
  }
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) hits += rng.bernoulli(0.25);
  EXPECT_NEAR(hits, 0.25 * draws, 5 * std::sqrt(draws * 0.25 * 0.75));
}

TEST(Rng, Uniform01InUnitInterval) {
  Rng rng(RngSeed{11});
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 10000, 0.5, 0.02);
}

}  // namespace
}  // namespace ghz

// Copyright 2026 The su2mon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "su2mon/experiments.hpp"
#include "su2mon/observables.hpp"
#include "test_util.hpp"

namespace su2mon {
namespace {

using testing::random_state;

constexpr double kLn2 = std::numbers::ln2;

TEST(MutualInformation, SingletPairIsTwoLn2) {
  const PureState s = build_all_singlets(4);
  const int a[] = {0};
  const int b[] = {1};
  const int c[] = {2};
  EXPECT_NEAR(mutual_information(s, a, b), 2.0 * kLn2, 1e-12);
  EXPECT_NEAR(mutual_information(s, a, c), 0.0, 1e-12);
}

TEST(MutualInformation, ProductStateIsZero) {
  const PureState s(6, false);
  const int a[] = {0, 1};
  const int b[] = {4};
  EXPECT_NEAR(mutual_information(s, a, b), 0.0, 1e-14);
}

TEST(MutualInformation, BoundsAndSymmetry) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PureState s = random_state(6, false, seed);
    const int a[] = {0, 2};
    const int b[] = {3};
    const double ab = mutual_information(s, a, b);
    EXPECT_NEAR(ab, mutual_information(s, b, a), 1e-12);
    EXPECT_GE(ab, -1e-12);
    EXPECT_LE(ab, 2.0 * kLn2 * 1 + 1e-12);  // 2 min(|A|, |B|) ln 2
  }
}

TEST(MutualInformation, ComplementIsTwiceEntropy) {
  const PureState s = random_state(6, false, 42);
  const int a[] = {0, 1, 2};
  const int b[] = {3, 4, 5};
  EXPECT_NEAR(mutual_information(s, a, b), 2.0 * subsystem_entropy(s, a), 1e-10);
}

TEST(MutualInformation, Errors) {
  const PureState s(14, false);
  const int a[] = {0, 1};
  const int b[] = {1, 2};
  EXPECT_THROW(mutual_information(s, a, b), std::invalid_argument);
  const int big_a[] = {0, 1, 2, 3, 4, 5, 6};
  const int big_b[] = {7, 8, 9, 10, 11, 12};
  EXPECT_THROW(mutual_information(s, big_a, big_b), std::invalid_argument);
}

TEST(Profiles, AllSingletValues) {
  const PureState s = build_all_singlets(8);
  const MutualInfoProfiles prof = mi_profiles(s);
  ASSERT_EQ(prof.single.size(), 7U);
  ASSERT_EQ(prof.pair.size(), 5U);
  for (const auto& e : prof.single) {
    EXPECT_EQ(e.kind, MutualInfoKind::Single);
    EXPECT_EQ(e.j, 0);
    EXPECT_NEAR(e.value, e.k == 1 ? 2.0 * kLn2 : 0.0, 1e-12) << "k=" << e.k;
  }
  for (std::size_t i = 0; i < prof.pair.size(); ++i) {
    EXPECT_EQ(prof.pair[i].kind, MutualInfoKind::Pair);
    EXPECT_EQ(prof.pair[i].k, static_cast<int>(i) + 2);
    EXPECT_NEAR(prof.pair[i].value, 0.0, 1e-12);
  }
}

TEST(Profiles, MatchDirectMutualInformation) {
  const PureState s = random_state(8, false, 3);
  const MutualInfoProfiles prof = mi_profiles(s);
  for (const auto& e : prof.single) {
    const int a[] = {0};
    const int b[] = {e.k};
    EXPECT_NEAR(e.value, mutual_information(s, a, b), 1e-12);
  }
  for (const auto& e : prof.pair) {
    const int a[] = {0, 1};
    const int b[] = {e.k, e.k + 1};
    EXPECT_NEAR(e.value, mutual_information(s, a, b), 1e-12);
    EXPECT_LE(e.value, 4.0 * kLn2 + 1e-12);
  }
  EXPECT_THROW(mi_profiles(PureState(2, false)), std::invalid_argument);
}

}  // namespace
}  // namespace su2mon

// Copyright 2026 The lerw Authors
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

#include "lerw/events.hpp"
#include "oracles.hpp"

namespace lerw {
namespace {

// States on a line: state s sits at x = s.
double line(StateId a, StateId b) { return std::abs(double(a) - double(b)); }

TEST(DetectLoops, SimplePathHasNone) {
  EXPECT_TRUE(detect_loops(Path{0, 1, 2, 3}, 0.0, line).empty());
  EXPECT_TRUE(detect_loops(Path{0, 1, 2, 3}, 0.0, line, true).empty());
}

TEST(DetectLoops, CraftedRevisit) {
  // 0 -> 1 -> 2 -> 1 -> 0: the loop at 0 reaches distance 2 = 2 rho.
  const Path w{0, 1, 2, 1, 0};
  const auto loops = detect_loops(w, 1.0, line);
  ASSERT_EQ(loops.size(), 2u);
  EXPECT_EQ(loops[0], (IndexPair{0, 4}));
  EXPECT_EQ(loops[1], (IndexPair{1, 3}));
  // Only the loop at 0 leaves the open ball of radius 1.5.
  EXPECT_EQ(detect_loops(w, 1.5, line), (std::vector<IndexPair>{{0, 4}}));
  EXPECT_TRUE(detect_loops(w, 2.5, line).empty());
}

TEST(DetectLoops, ExhaustiveMatchesBruteForce) {
  RngStream rng(31, 0);
  for (int i = 0; i < 500; ++i) {
    const Path w = testing::random_path(rng, 6, 25);
    const double rho = 1 + rng() % 4;
    std::vector<IndexPair> brute;
    for (std::size_t s1 = 0; s1 < w.size(); ++s1) {
      for (std::size_t s2 = s1 + 1; s2 < w.size(); ++s2) {
        if (w[s1] != w[s2]) continue;
        bool leaves = false;
        for (std::size_t k = s1; k <= s2; ++k) leaves |= line(w[s1], w[k]) >= rho;
        if (leaves) brute.emplace_back(s1, s2);
      }
    }
    ASSERT_EQ(detect_loops(w, rho, line, true), brute);
    for (const auto& p : detect_loops(w, rho, line)) {
      ASSERT_TRUE(std::find(brute.begin(), brute.end(), p) != brute.end());
    }
  }
}

TEST(DetectLongJumps, VisitingVEveryStep) {
  const Path w{0, 5, 0, 5};
  EXPECT_TRUE(detect_long_jumps(w, 1.0, StateSet{0, 5}, line).empty());
}

TEST(DetectLongJumps, OneRunOneWitness) {
  // V = {9}; the run 0 1 2 3 avoids V and spans distance 3.
  const Path w{0, 1, 2, 3, 9};
  const auto jumps = detect_long_jumps(w, 2.0, StateSet{9}, line);
  ASSERT_EQ(jumps.size(), 1u);
  EXPECT_EQ(jumps[0], (IndexPair{0, 3}));
  EXPECT_EQ(detect_long_jumps(w, 2.0, StateSet{9}, line, true).size(), 3u);
}

}  // namespace
}  // namespace lerw

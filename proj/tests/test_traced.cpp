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

#include "lerw/errors.hpp"
#include "lerw/network.hpp"
#include "lerw/traced.hpp"
#include "lerw/verify.hpp"
#include "oracles.hpp"

namespace lerw {
namespace {

MarkovChain<Rational> four_cycle() {
  const Rational h(1, 2);
  return build_chain<Rational>({"a", "b", "c", "d"},
                               {{0, h, 0, h}, {h, 0, h, 0}, {0, h, 0, h}, {h, 0, h, 0}});
}

TEST(TracedKernel, FourCycleExample) {
  const auto t = traced_kernel(four_cycle(), StateSet{0, 2}, StateSet{3},
                               TraceVariant::kExcludeCurrent);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t.names(), (std::vector<std::string>{"a", "c", "Delta"}));
  EXPECT_EQ(t.prob(0, 1), Rational(1, 3));
  EXPECT_EQ(t.prob(0, 2), Rational(2, 3));
  EXPECT_EQ(t.prob(0, 0), 0);
  EXPECT_EQ(t.absorbing(), std::optional<StateId>(2));
}

TEST(TracedKernel, HittingSetAllowsReturns) {
  const auto t =
      traced_kernel(four_cycle(), StateSet{0, 2}, StateSet{3}, TraceVariant::kHittingSet);
  // From a: via b back to a (1/4) or on to c (1/4); via d absorbed (1/2).
  EXPECT_EQ(t.prob(0, 0), Rational(1, 4));
  EXPECT_EQ(t.prob(0, 1), Rational(1, 4));
  EXPECT_EQ(t.prob(0, 2), Rational(1, 2));
}

TEST(TracedKernel, FullSetIsIdentityOperation) {
  const auto c = four_cycle();
  const auto t = traced_kernel(c, StateSet::range(4), StateSet{}, TraceVariant::kExcludeCurrent);
  for (StateId x = 0; x < 4; ++x) {
    for (StateId y = 0; y < 4; ++y) EXPECT_EQ(t.prob(x, y), c.prob(x, y));
  }
}

TEST(TracedKernel, VariantNames) {
  EXPECT_EQ(parse_trace_variant("hitting-set"), TraceVariant::kHittingSet);
  EXPECT_EQ(to_string(TraceVariant::kExcludeCurrent), "exclude-current");
  EXPECT_THROW(parse_trace_variant("other"), ValidationError);
}

TEST(TracedKernel, SingularWhenTrapped) {
  // 1 <-> 2 forever, never reaching {0} or A = {3}.
  const auto c = build_chain<Rational>({}, {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
  EXPECT_THROW(traced_kernel(c, StateSet{0}, StateSet{3}, TraceVariant::kHittingSet),
               SingularSystemError);
  EXPECT_THROW(traced_kernel(c, StateSet{}, StateSet{3}, TraceVariant::kHittingSet),
               ValidationError);
}

TEST(TracedKernel, TowerProperty) {
  RngStream rng(61, 0);
  int checked = 0;
  while (checked < 20) {
    const auto c = random_rational_chain({6, 0.4, 6}, rng);
    const StateSet target{static_cast<StateId>(rng() % 6)};
    const StateSet v2 = testing::random_subset(rng, 6, 0.7).set_union(StateSet{0});
    StateSet v1;
    for (StateId v : v2) {
      if (rng() % 2) v1 = v1.with(v);
    }
    if (v1.set_difference(target).empty()) continue;
    try {
      EXPECT_TRUE(traced_tower_holds(c, v1, v2, target, TraceVariant::kHittingSet));
      EXPECT_TRUE(traced_tower_holds(c, v1, v2, target, TraceVariant::kExcludeCurrent));
      ++checked;
    } catch (const SingularSystemError&) {
    }
  }
}

TEST(TracedKernel, PreservesReversibility) {
  RngStream rng(62, 0);
  for (int i = 0; i < 20; ++i) {
    ElectricalNetwork<Rational>::EdgeMap edges;
    for (StateId u = 0; u < 6; ++u) {
      for (StateId v = u + 1; v < 6; ++v) {
        if (v == u + 1 || rng() % 3 == 0) edges[{u, v}] = Rational(1 + rng() % 5);
      }
    }
    const ElectricalNetwork<Rational> net({}, edges, 6);
    const auto walk = walk_from_network(net);
    const StateSet sub{0, 2, 3, 5};
    // The hitting-set trace is reversible for the original weights c_x.
    const auto t = traced_kernel(walk, sub, StateSet{}, TraceVariant::kHittingSet);
    for (StateId x = 0; x < 4; ++x) {
      for (StateId y = 0; y < 4; ++y) {
        EXPECT_EQ(net.weight(sub.ids()[x]) * t.prob(x, y),
                  net.weight(sub.ids()[y]) * t.prob(y, x));
      }
    }
  }
}

}  // namespace
}  // namespace lerw

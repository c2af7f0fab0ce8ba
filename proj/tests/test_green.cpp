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

#include <algorithm>

#include "lerw/errors.hpp"
#include "lerw/green.hpp"
#include "lerw/verify.hpp"
#include "oracles.hpp"

namespace lerw {
namespace {

using testing::escape_chain;
namespace frozen = testing::frozen;

TEST(Green, SingletonWithoutSelfLoop) {
  const auto c = escape_chain();
  EXPECT_EQ(green(c, StateSet{0}, 0, 0), 1);
}

TEST(Green, EscapeChain) {
  const auto c = escape_chain();
  const GreenTable<Rational> g(c, StateSet{0, 1});
  EXPECT_EQ(g(0, 0), frozen::kEscapeGreenAA);
  EXPECT_EQ(g(0, 1), frozen::kEscapeGreenAB);
  EXPECT_EQ(green_diagonal(c, StateSet{0, 1}, 0), frozen::kEscapeGreenAA);
  EXPECT_THROW(g(0, 2), ValidationError);
}

TEST(Green, DeterministicPass) {
  const auto c = build_chain<Rational>({}, {{0, 1, 0}, {0, 0, 1}, {0, 0, 1}});
  const GreenTable<Rational> g(c, StateSet{0, 1});
  EXPECT_EQ(g(0, 0), 1);
  EXPECT_EQ(g(0, 1), 1);
  EXPECT_EQ(g(1, 0), 0);
}

TEST(Green, NoExitIsSingular) {
  const auto c = build_chain<Rational>({}, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
  EXPECT_THROW(GreenTable<Rational>(c, StateSet{0, 1}), SingularSystemError);
  EXPECT_THROW(GreenTable<Rational>(c, StateSet::range(3)), ValidationError);
}

TEST(Green, DoubleMatchesRational) {
  const auto c = escape_chain();
  EXPECT_NEAR(green(to_double(c), StateSet{0, 1}, 0, 1), frozen::kEscapeGreenAB.get_d(), 1e-14);
}

TEST(FProduct, Examples) {
  const auto c = escape_chain();
  const StateSet b{0, 1};
  const std::vector<StateId> one{1};
  EXPECT_EQ(f_product(c, b, std::span<const StateId>(one)), frozen::kEscapeGreenAA);
  const std::vector<StateId> two{0, 1};
  EXPECT_EQ(f_product(c, b, std::span<const StateId>(two)), frozen::kEscapeGreenAA);
}

TEST(FProduct, PermutationInvarianceUpToFourPoints) {
  RngStream rng(41, 0);
  for (int i = 0; i < 50; ++i) {
    const auto inst = random_green_instance({5, 0.3, 6}, 4, rng);
    std::vector<StateId> pts(inst.domain.begin(), inst.domain.begin() + 4);
    const Rational ref = f_product(inst.chain, inst.domain, std::span<const StateId>(pts));
    do {
      ASSERT_EQ(f_product(inst.chain, inst.domain, std::span<const StateId>(pts)), ref);
    } while (std::next_permutation(pts.begin(), pts.end()));
  }
}

TEST(Green, IdentityFuzzRationalAndDouble) {
  GreenCheckOptions o;
  o.instances = 200;
  o.permutation_instances = 20;
  o.seed = 42;
  EXPECT_EQ(verify_green<Rational>(o).failures, 0u);
  const auto d = verify_green<double>(o);
  EXPECT_EQ(d.failures, 0u);
  EXPECT_LE(d.max_relative_error, 1e-10);
}

TEST(LePathProbability, Examples) {
  const auto c = escape_chain();
  EXPECT_EQ(le_path_probability(c, StateSet{2}, Path{0, 2}), frozen::kEscapeLeDirect);
  EXPECT_EQ(le_path_probability(c, StateSet{2}, Path{0, 1, 2}), frozen::kEscapeLeViaB);
  const auto det = build_chain<Rational>({}, {{0, 1, 0}, {0, 0, 1}, {0, 0, 1}});
  EXPECT_EQ(le_path_probability(det, StateSet{2}, Path{0, 1, 2}), 1);
  EXPECT_THROW(le_path_probability(c, StateSet{2}, Path{0, 1, 0, 2}), ValidationError);
}

TEST(LePathProbability, SumsToOneOnRandomChains) {
  RngStream rng(43, 0);
  for (int i = 0; i < 30; ++i) {
    const auto c = random_rational_chain({5, 0.3, 6}, rng);
    const StateSet a{static_cast<StateId>(rng() % 5)};
    for (StateId x : reachability_closure(c, a)) {
      if (a.contains(x)) continue;
      Rational total = 0;
      for (const auto& p : admissible_le_paths(c, x, a)) total += le_path_probability(c, a, p);
      ASSERT_EQ(total, 1);
    }
  }
}

TEST(ExpectedEntryTime, RequiresAlmostSureEntry) {
  const auto c = build_chain<Rational>({}, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
  EXPECT_THROW(expected_entry_time(c, StateSet{2}), UnreachableTargetError);
}

}  // namespace
}  // namespace lerw

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

#include <vector>

#include "lerw/errors.hpp"
#include "lerw/metrics.hpp"
#include "lerw/rng.hpp"

namespace lerw {
namespace {

TEST(Hausdorff, Examples) {
  const std::vector<Point2> a{{0, 0}, {1, 0}};
  EXPECT_EQ(hausdorff(std::span<const Point2>(a), std::span<const Point2>(a)), 0.0);
  const std::vector<Point2> o{{0, 0}}, p{{3, 4}};
  EXPECT_DOUBLE_EQ(hausdorff(std::span<const Point2>(o), std::span<const Point2>(p)), 5.0);
  EXPECT_DOUBLE_EQ(hausdorff(std::span<const Point2>(a), std::span<const Point2>(o)), 1.0);
  const std::vector<Point2> none;
  EXPECT_THROW(hausdorff(std::span<const Point2>(none), std::span<const Point2>(a)),
               ValidationError);
}

TEST(Hausdorff, SymmetricAndTriangle) {
  RngStream rng(81, 0);
  auto random_set = [&] {
    std::vector<Point2> s(1 + rng() % 6);
    for (auto& q : s) q = {rng.next_double(), rng.next_double()};
    return s;
  };
  for (int i = 0; i < 200; ++i) {
    const auto a = random_set(), b = random_set(), c = random_set();
    const std::span<const Point2> sa(a), sb(b), sc(c);
    ASSERT_DOUBLE_EQ(hausdorff(sa, sb), hausdorff(sb, sa));
    ASSERT_LE(hausdorff(sa, sc), hausdorff(sa, sb) + hausdorff(sb, sc) + 1e-12);
  }
}

TEST(Hausdorff, VertexSets) {
  const std::vector<StateId> a{0, 1}, b{2};
  const PointMetric line = [](StateId u, StateId v) {
    return std::abs(static_cast<double>(u) - static_cast<double>(v));
  };
  EXPECT_DOUBLE_EQ(hausdorff(std::span<const StateId>(a), std::span<const StateId>(b), line), 2.0);
}

TEST(Prokhorov, Identical) {
  const std::vector<double> p{0.25, 0.75};
  const std::vector<std::vector<double>> d{{0, 1}, {1, 0}};
  EXPECT_EQ(prokhorov(p, p, d), 0.0);
}

TEST(Prokhorov, DiracMasses) {
  const std::vector<double> one{1.0};
  for (double dist : {0.1, 0.5, 0.9, 2.0}) {
    EXPECT_NEAR(prokhorov(one, one, {{dist}}), std::min(dist, 1.0), 1e-5) << dist;
  }
}

TEST(Prokhorov, MovedAtomAndSymmetry) {
  // Mass 0.2 moves by 0.6; the rest stays put.
  const std::vector<double> p{0.8, 0.2}, q{0.8, 0.2};
  const std::vector<std::vector<double>> d{{0, 3}, {3, 0.6}};
  EXPECT_LE(prokhorov(p, q, d), 0.6 + 1e-5);
  EXPECT_LE(prokhorov(p, q, d), 0.2 + 1e-5);

  RngStream rng(82, 0);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng() % 4, m = 1 + rng() % 4;
    std::vector<double> a(n), b(m);
    double sa = 0, sb = 0;
    for (auto& x : a) sa += (x = 0.1 + rng.next_double());
    for (auto& x : b) sb += (x = 0.1 + rng.next_double());
    for (auto& x : a) x /= sa;
    for (auto& x : b) x /= sb;
    std::vector<std::vector<double>> dab(n, std::vector<double>(m)), dba(m, std::vector<double>(n));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < m; ++c) dab[r][c] = dba[c][r] = rng.next_double();
    }
    ASSERT_NEAR(prokhorov(a, b, dab), prokhorov(b, a, dba), 2e-6);
  }
}

TEST(EmpiricalSetLaw, TotalVariation) {
  EmpiricalSetLaw p, q;
  p.add(StateSet{0, 1}, 3);
  p.add(StateSet{0, 2}, 1);
  q.add(StateSet{0, 1}, 1);
  q.add(StateSet{0, 2}, 1);
  EXPECT_EQ(p.total, 4u);
  EXPECT_DOUBLE_EQ(total_variation(p, q), 0.25);
  EXPECT_DOUBLE_EQ(total_variation(p, p), 0.0);
  EXPECT_EQ(joint_support(p, q), 2u);
  const PointMetric discrete = [](StateId u, StateId v) { return u == v ? 0.0 : 1.0; };
  EXPECT_EQ(prokhorov(p, p, discrete), 0.0);
}

}  // namespace
}  // namespace lerw

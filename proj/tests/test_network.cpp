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
#include <sstream>

#include "lerw/chain.hpp"
#include "lerw/errors.hpp"
#include "lerw/fractal.hpp"
#include "lerw/network.hpp"
#include "lerw/traced.hpp"
#include "oracles.hpp"

namespace lerw {
namespace {

template <Scalar S>
ElectricalNetwork<S> unit_path(std::size_t edges) {
  typename ElectricalNetwork<S>::EdgeMap m;
  for (StateId i = 0; i < edges; ++i) m[{i, i + 1}] = S(1);
  return ElectricalNetwork<S>({}, m, edges + 1);
}

template <Scalar S>
ElectricalNetwork<S> unit_cycle(std::size_t n) {
  typename ElectricalNetwork<S>::EdgeMap m;
  for (StateId i = 0; i < n; ++i) m[{i, static_cast<StateId>((i + 1) % n)}] = S(1);
  return ElectricalNetwork<S>({}, m, n);
}

ElectricalNetwork<Rational> random_network(RngStream& rng, std::size_t n) {
  ElectricalNetwork<Rational>::EdgeMap m;
  for (StateId u = 0; u < n; ++u) {
    for (StateId v = u + 1; v < n; ++v) {
      if (v == u + 1 || rng() % 3 == 0) m[{u, v}] = Rational(1 + rng() % 4, 1 + rng() % 3);
    }
  }
  return ElectricalNetwork<Rational>({}, m, n);
}

TEST(Network, Validation) {
  ElectricalNetwork<Rational>::EdgeMap loop{{{0, 0}, 1}, {{0, 1}, 1}};
  EXPECT_THROW(ElectricalNetwork<Rational>({}, loop, 2), ValidationError);
  ElectricalNetwork<Rational>::EdgeMap split{{{0, 1}, 1}, {{2, 3}, 1}};
  EXPECT_THROW(ElectricalNetwork<Rational>({}, split, 4), ValidationError);
  ElectricalNetwork<Rational>::EdgeMap negative{{{0, 1}, -1}};
  EXPECT_THROW(ElectricalNetwork<Rational>({}, negative, 2), ValidationError);
}

TEST(WalkFromNetwork, Examples) {
  const auto tri = walk_from_network(unit_cycle<Rational>(3));
  EXPECT_EQ(tri.prob(0, 1), Rational(1, 2));
  EXPECT_EQ(tri.prob(0, 0), 0);
  ElectricalNetwork<Rational>::EdgeMap m{{{0, 1}, 2}, {{1, 2}, 1}};
  const ElectricalNetwork<Rational> net({"a", "b", "c"}, m, 3);
  const auto w = walk_from_network(net);
  EXPECT_EQ(w.prob(1, 0), Rational(2, 3));
  EXPECT_EQ(w.prob(1, 2), Rational(1, 3));
  for (StateId x = 0; x < 3; ++x) {
    for (StateId y = 0; y < 3; ++y) {
      EXPECT_EQ(net.weight(x) * w.prob(x, y), net.weight(y) * w.prob(y, x));
    }
  }
}

TEST(EffectiveResistance, Examples) {
  EXPECT_EQ(effective_resistance(unit_path<Rational>(2), 0, 2), 2);
  EXPECT_EQ(effective_resistance(unit_cycle<Rational>(3), 0, 1), Rational(2, 3));
  EXPECT_EQ(effective_resistance(unit_cycle<Rational>(4), 0, 2), 1);
  EXPECT_NEAR(effective_resistance(unit_cycle<double>(4), 0, 2), 1.0, 1e-14);
  EXPECT_EQ(effective_resistance_to_set(unit_path<Rational>(4), 2, StateSet{0, 4}), 1);
  EXPECT_EQ(effective_resistance_to_set(unit_path<Rational>(4), 0, StateSet{0, 4}), 0);
}

TEST(EffectiveResistance, MetricAxiomsOnRandomNetworks) {
  RngStream rng(71, 0);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 3 + rng() % 10;
    const auto net = to_double(random_network(rng, n));
    const StateId x = rng() % n, y = rng() % n, z = rng() % n;
    const double rxy = x == y ? 0 : effective_resistance(net, x, y);
    const double ryx = x == y ? 0 : effective_resistance(net, y, x);
    const double rxz = x == z ? 0 : effective_resistance(net, x, z);
    const double rzy = z == y ? 0 : effective_resistance(net, z, y);
    ASSERT_GE(rxy, 0);
    ASSERT_NEAR(rxy, ryx, 1e-9);
    ASSERT_LE(rxy, rxz + rzy + 1e-9);
  }
}

TEST(TraceNetwork, Examples) {
  const auto t = trace_network(unit_path<Rational>(2), StateSet{0, 2});
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.conductance(0, 1), Rational(1, 2));
  ElectricalNetwork<Rational>::EdgeMap star{{{0, 1}, 1}, {{0, 2}, 1}, {{0, 3}, 1}};
  const auto tri = trace_network(ElectricalNetwork<Rational>({}, star, 4), StateSet{1, 2, 3});
  for (StateId u = 0; u < 3; ++u) {
    for (StateId v = u + 1; v < 3; ++v) EXPECT_EQ(tri.conductance(u, v), Rational(1, 3));
  }
  const auto same = trace_network(unit_cycle<Rational>(5), StateSet::range(5));
  EXPECT_EQ(same.edges(), unit_cycle<Rational>(5).edges());
  EXPECT_THROW(trace_network(unit_cycle<Rational>(5), StateSet{1}), ValidationError);
}

TEST(TraceNetwork, SchurInvarianceAndTower) {
  RngStream rng(72, 0);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 5 + rng() % 6;
    const auto net = random_network(rng, n);
    const StateSet v2 = testing::random_subset(rng, n, 0.7).set_union(StateSet{0, 1});
    StateSet v1{0, 1};
    for (StateId v : v2) {
      if (rng() % 2) v1 = v1.with(v);
    }
    const auto t2 = trace_network(net, v2);
    for (std::size_t a = 0; a < v2.size(); ++a) {
      for (std::size_t b = a + 1; b < v2.size(); ++b) {
        ASSERT_EQ(effective_resistance(t2, StateId(a), StateId(b)),
                  effective_resistance(net, v2.ids()[a], v2.ids()[b]));
      }
    }
    std::vector<StateId> local;
    for (StateId v : v1) {
      local.push_back(std::lower_bound(v2.begin(), v2.end(), v) - v2.begin());
    }
    ASSERT_EQ(trace_network(t2, StateSet(local)).edges(), trace_network(net, v1).edges());
    // Double mode agrees within tolerance.
    const auto d1 = trace_network(to_double(net), v1).edges();
    for (const auto& [key, c] : trace_network(net, v1).edges()) {
      ASSERT_NEAR(d1.at(key), c.get_d(), 1e-10 * std::max(1.0, c.get_d()));
    }
  }
}

TEST(TraceNetwork, WalkMatchesTracedKernel) {
  RngStream rng(73, 0);
  for (int i = 0; i < 20; ++i) {
    const auto net = random_network(rng, 7);
    const StateSet sub{1, 3, 4, 6};
    const auto walk = walk_from_network(trace_network(net, sub));
    const auto traced =
        traced_kernel(walk_from_network(net), sub, StateSet{}, TraceVariant::kExcludeCurrent);
    for (StateId x = 0; x < 4; ++x) {
      for (StateId y = 0; y < 4; ++y) ASSERT_EQ(walk.prob(x, y), traced.prob(x, y));
    }
  }
}

TEST(HarmonicExtension, Examples) {
  const auto h = harmonic_extension(unit_path<Rational>(4), {{0, Rational(0)}, {4, Rational(1)}});
  EXPECT_EQ(h, (std::vector<Rational>{0, Rational(1, 4), Rational(1, 2), Rational(3, 4), 1}));
  const auto c = harmonic_extension(unit_cycle<Rational>(5), {{0, Rational(7)}});
  for (const auto& v : c) EXPECT_EQ(v, 7);
}

TEST(HarmonicExtension, MatchesHittingFrequency) {
  // Triangle 0-1-2 with pendant 3 on vertex 2; y = 0, A = {3}.
  ElectricalNetwork<double>::EdgeMap m{{{0, 1}, 1}, {{1, 2}, 1}, {{0, 2}, 1}, {{2, 3}, 1}};
  const ElectricalNetwork<double> net({}, m, 4);
  const auto h = harmonic_extension(net, {{0, 1.0}, {3, 0.0}});
  const auto walk = walk_from_network(net);
  const TrajectorySampler sampler(walk, StateSet{0, 3});
  const int n = 100000;
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    RngStream rng(74, i);
    hits += sampler.sample(1, rng).back() == 0;
  }
  const double p = h[1];
  EXPECT_NEAR(double(hits) / n, p, 3 * std::sqrt(p * (1 - p) / n));
}

TEST(HittingBound, Examples) {
  const auto same = check_hitting_bound(unit_path<Rational>(4), 1, 1, StateSet{4});
  EXPECT_EQ(same.probability, 1);
  EXPECT_TRUE(same.holds);
  const auto path = check_hitting_bound(unit_path<Rational>(10), 5, 6, StateSet{0});
  ASSERT_TRUE(path.bound);
  EXPECT_TRUE(path.holds);
  EXPECT_GT(path.probability, *path.bound);
}

TEST(HittingBound, NeverViolatedOnRandomNetworks) {
  RngStream rng(75, 0);
  for (int i = 0; i < 1000; ++i) {
    const auto net = random_network(rng, 8);
    const StateId x = rng() % 8;
    StateId y = rng() % 8, a = rng() % 8;
    while (a == x || a == y) a = (a + 1) % 8;
    ASSERT_TRUE(check_hitting_bound(net, x, y, StateSet{a}).holds);
  }
}

TEST(ExitTimeBound, UpperFormOnRandomNetworks) {
  RngStream rng(76, 0);
  for (int i = 0; i < 200; ++i) {
    const auto net = random_network(rng, 7);
    const auto r = check_exit_time_bound(net, 0, StateSet{6});
    ASSERT_TRUE(r.holds);
    ASSERT_LE(r.expected_exit_time, r.weight_of_domain * r.resistance);
  }
}

TEST(NetworkIo, RoundTrip) {
  std::istringstream in("# comment\nu v 2\nv w 1/3\n");
  const auto net = read_network<Rational>(in);
  EXPECT_EQ(net.size(), 3u);
  EXPECT_EQ(net.conductance(net.index_of("v"), net.index_of("w")), Rational(1, 3));
  std::ostringstream out;
  write_network(out, net);
  std::istringstream again(out.str());
  EXPECT_EQ(read_network<Rational>(again).edges(), net.edges());
}

}  // namespace
}  // namespace lerw

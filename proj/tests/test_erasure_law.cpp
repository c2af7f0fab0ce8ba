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

#include <sstream>

#include "lerw/erasure.hpp"
#include "lerw/erasure_law.hpp"
#include "lerw/errors.hpp"
#include "lerw/traced.hpp"
#include "lerw/verify.hpp"
#include "oracles.hpp"

namespace lerw {
namespace {

using testing::escape_chain;
namespace frozen = testing::frozen;

TEST(ExactLaw, EscapeChainLoopErasure) {
  const auto law = exact_erasure_law(escape_chain(), 0, StateSet{2}, Pipeline::loop_erasure());
  ASSERT_EQ(law.support.size(), 2u);
  EXPECT_EQ(law.support.at(Path{0, 2}), frozen::kEscapeLeDirect);
  EXPECT_EQ(law.support.at(Path{0, 1, 2}), frozen::kEscapeLeViaB);
  EXPECT_EQ(law.tail_bound, 0);
  EXPECT_EQ(law.total_mass(), 1);
}

TEST(ExactLaw, EscapeChainRefinementEqualsLoopErasure) {
  const auto le = exact_erasure_law(escape_chain(), 0, StateSet{2}, Pipeline::loop_erasure());
  const auto ref = exact_erasure_law(escape_chain(), 0, StateSet{2},
                                     Pipeline::refinement({StateSet{0}, StateSet{0, 1}}));
  EXPECT_EQ(total_variation(le, ref), 0);
  EXPECT_EQ(le.support, ref.support);
}

TEST(ExactLaw, DeterministicChainSingleAtom) {
  const auto c = build_chain<Rational>({}, {{0, 1, 0}, {0, 0, 1}, {0, 0, 1}});
  const auto law = exact_erasure_law(c, 0, StateSet{2}, Pipeline::loop_erasure());
  ASSERT_EQ(law.support.size(), 1u);
  EXPECT_EQ(law.support.at(Path{0, 1, 2}), 1);
  const auto en = enumerate_erasure_law(c, 0, StateSet{2}, Pipeline::loop_erasure(), 5);
  EXPECT_EQ(en.support.at(Path{0, 1, 2}), 1);
  EXPECT_EQ(en.tail_bound, 0);
}

TEST(ExactLaw, DoubleModeAgrees) {
  const auto law =
      exact_erasure_law(to_double(escape_chain()), 0, StateSet{2}, Pipeline::loop_erasure());
  EXPECT_NEAR(law.support.at(Path{0, 2}), 2.0 / 3, 1e-14);
  EXPECT_NEAR(law.total_mass(), 1.0, 1e-12);
}

TEST(ExactLaw, UnreachableTarget) {
  const auto c = build_chain<Rational>({}, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
  EXPECT_THROW(exact_erasure_law(c, 0, StateSet{2}, Pipeline::loop_erasure()),
               UnreachableTargetError);
}

TEST(Enumeration, EscapeChainWithinTail) {
  for (std::size_t cap : {4u, 10u, 30u}) {
    const auto en =
        enumerate_erasure_law(escape_chain(), 0, StateSet{2}, Pipeline::loop_erasure(), cap);
    const auto exact = exact_erasure_law(escape_chain(), 0, StateSet{2}, Pipeline::loop_erasure());
    EXPECT_LE(total_variation(en, exact), en.tail_bound);
    EXPECT_EQ(en.total_mass() + en.unresolved, 1);
    EXPECT_LE(en.unresolved, en.tail_bound);
    EXPECT_EQ(en.tail_bound, entry_tail_bound(escape_chain(), StateSet{2}, cap));
  }
}

TEST(Enumeration, Guards) {
  EXPECT_THROW(enumerate_erasure_law(escape_chain(), 0, StateSet{2}, Pipeline::loop_erasure(), 41),
               GuardExceeded);
  EnumerationGuard tight;
  tight.max_tail_bound = 1e-9;
  EXPECT_THROW(enumerate_erasure_law(escape_chain(), 0, StateSet{2}, Pipeline::loop_erasure(), 4,
                                     tight),
               GuardExceeded);
  AutomatonOptions tiny;
  tiny.max_states = 3;
  EXPECT_THROW(exact_erasure_law(escape_chain(), 0, StateSet{2}, Pipeline::loop_erasure(), tiny),
               GuardExceeded);
}

TEST(Automaton, MatchesRefinementEraseOnRandomPaths) {
  RngStream rng(51, 0);
  for (int i = 0; i < 3000; ++i) {
    const std::size_t n = 2 + rng() % 5;
    std::vector<StateSet> seq;
    const std::size_t stages = 1 + rng() % 3;
    StateSet cur;
    for (std::size_t j = 0; j < stages; ++j) {
      cur = cur.set_union(testing::random_subset(rng, n, 0.35));
      seq.push_back(cur);
    }
    const Path w = testing::random_path(rng, n, 40);
    RefinementAutomaton automaton(n, seq);
    auto state = automaton.initial(w[0]);
    for (std::size_t k = 1; k < w.size(); ++k) state = automaton.step(state, w[k]);
    ASSERT_EQ(automaton.output(state), refinement_erase(w, seq).vector()) << to_string(w);
    ASSERT_EQ(automaton.position(state), w.back());
  }
}

TEST(ProductFormula, MatchesAutomatonAndEnumeration) {
  RngStream rng(52, 0);
  for (int i = 0; i < 20; ++i) {
    const auto c = random_rational_chain({4, 0.3, 5}, rng);
    const StateSet a{3};
    if (!reachability_closure(c, a).contains(0)) continue;
    const auto formula = le_law_product_formula(c, 0, a);
    const auto exact = exact_erasure_law(c, 0, a, Pipeline::loop_erasure());
    EXPECT_EQ(formula.support, exact.support);
    EXPECT_EQ(formula.total_mass(), 1);
    const auto en = enumerate_erasure_law(c, 0, a, Pipeline::loop_erasure(), 24);
    EXPECT_LE(total_variation(en, formula), en.tail_bound);
  }
}

TEST(PathLawIo, RoundTrip) {
  const auto law = exact_erasure_law(escape_chain(), 0, StateSet{2}, Pipeline::loop_erasure());
  std::ostringstream out;
  write_path_law(out, law, escape_chain().names());
  EXPECT_EQ(out.str(), "# tail_bound 0\na b c\t1/3\na c\t2/3\n");
  std::istringstream in(out.str());
  const auto back = read_path_law<Rational>(in, escape_chain().names());
  EXPECT_EQ(back.support, law.support);
}

TEST(RefinementLaw, SmallFuzzAndNegativeControl) {
  RngStream rng(53, 0);
  Theorem1Options injected;
  injected.automaton.inject_ple_off_by_one = true;
  injected.max_levels = 2;
  bool any_detected = false;
  for (int i = 0; i < 8; ++i) {
    const auto c = random_rational_chain({4, 0.3, 6}, rng);
    const auto report = verify_theorem1(c);
    EXPECT_TRUE(report.passed());
    EXPECT_EQ(report.max_tv, 0);
    any_detected |= !verify_theorem1(c, injected).passed();
  }
  EXPECT_TRUE(any_detected);
  EXPECT_TRUE(verify_theorem1(escape_chain()).passed());
}

TEST(RefinementSequences, Shapes) {
  const auto seqs = refinement_sequences(4, StateSet{0, 1, 2}, 3);
  // [V], 6 two-level, and chains S1 < S2 of proper nonempty subsets of a
  // 3-set: 6 pairs (singleton inside a pair).
  EXPECT_EQ(seqs.size(), 1u + 6u + 6u);
  for (const auto& s : seqs) {
    EXPECT_EQ(s.back(), StateSet::range(4));
    validate_nested(s);
  }
}

// Conditioned on the traced refinement output y, the erased path is y with
// independent bridges glued in, each with the law of one excursion from
// y_{i-1} to y_i.
TEST(BridgeDecomposition, JointEqualsTracedTimesBridges) {
  RngStream rng(54, 0);
  int checked = 0;
  while (checked < 40) {
    const auto chain = random_rational_chain({4, 0.3, 6}, rng);
    if (chain.prob(3, 3) != 0) continue;  // keeps bridges finite: (y, y') or (y, 3, y')
    const StateId a = static_cast<StateId>(rng() % 3);
    const StateSet target{a};
    if (reachability_closure(chain, target) != StateSet::range(4)) continue;
    const StateSet v2{0, 1, 2};
    const StateSet v1 = testing::random_subset(rng, 3);
    StateId x = a;
    while (x == a) x = static_cast<StateId>(rng() % 3);

    const auto joint = exact_erasure_law(chain, x, target, Pipeline::refinement({v1, v2}));
    const auto traced = traced_kernel(chain, v2, target, TraceVariant::kHittingSet);
    std::vector<StateId> to_orig;  // traced index -> original state
    for (StateId v : v2) {
      if (v != a) to_orig.push_back(v);
    }
    to_orig.push_back(a);  // Delta
    auto to_traced = [&](StateId v) {
      return static_cast<StateId>(std::find(to_orig.begin(), to_orig.end(), v) - to_orig.begin());
    };
    std::vector<StateId> v1_traced;
    for (StateId v : v1) v1_traced.push_back(to_traced(v));
    const StateSet all_traced = StateSet::range(static_cast<StateId>(to_orig.size()));
    const auto traced_law =
        exact_erasure_law(traced, to_traced(x), StateSet{to_traced(a)},
                          Pipeline::refinement({StateSet(v1_traced), all_traced}));

    Rational total = 0;
    std::map<Path, Rational> projected;
    for (const auto& [w, p] : joint.support) {
      std::vector<StateId> y;
      Rational bridges = 1;
      std::size_t last = 0;
      for (std::size_t k = 0; k < w.size(); ++k) {
        if (!v2.contains(w[k])) continue;
        if (k > 0) {
          Rational seg = 1;
          for (std::size_t s = last; s < k; ++s) seg *= chain.prob(w[s], w[s + 1]);
          bridges *= seg / traced.prob(to_traced(w[last]), to_traced(w[k]));
        }
        y.push_back(to_traced(w[k]));
        last = k;
      }
      const Path yp(y);
      projected[yp] += p;
      ASSERT_TRUE(traced_law.support.count(yp));
      ASSERT_EQ(p, traced_law.support.at(yp) * bridges) << to_string(w);
      total += p;
    }
    EXPECT_EQ(total, 1);
    EXPECT_EQ(projected, traced_law.support);
    ++checked;
  }
}

}  // namespace
}  // namespace lerw

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

#ifndef LERW_VERIFY_HPP_
#define LERW_VERIFY_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lerw/chain.hpp"
#include "lerw/erasure_law.hpp"
#include "lerw/rng.hpp"
#include "lerw/traced.hpp"

namespace lerw {

struct RandomChainOptions {
  std::size_t num_states = 5;
  double zero_probability = 0.3;  // chance that an off-support entry is zero
  int max_weight = 6;             // entries are weight / row total
};

// Rows of small integer weights normalized to exact fractions. Every row
// has at least one nonzero entry.
MarkovChain<Rational> random_rational_chain(const RandomChainOptions& options,
                                            RngStream& rng);

// Nested sequences S_1 < ... < S_{l-1} < V with nonempty proper S_j inside
// `free_states`, for l = 1 .. max_levels. Sets are compared only on the
// free states since loops can only be based there.
std::vector<std::vector<StateSet>> refinement_sequences(std::size_t num_states,
                                                        const StateSet& free_states,
                                                        int max_levels);

struct Theorem1Options {
  int max_levels = 3;
  AutomatonOptions automaton;
  // Also rebuild the LE law from the Green product formula.
  bool check_product_formula = true;
  std::size_t max_failures = 1;
};

struct Theorem1Failure {
  StateSet target;
  StateId start;
  std::vector<StateSet> nested;
  Path path;
  Rational le_probability;
  Rational refined_probability;
  Rational tv;
  std::string what;  // which comparison failed
};

struct Theorem1Report {
  std::size_t cases = 0;
  std::size_t laws = 0;
  std::size_t max_automaton_states = 0;
  Rational max_tv = 0;
  std::vector<Theorem1Failure> failures;

  bool passed() const { return failures.empty(); }
};

// For every nonempty A, every start x in V_A \ A and every refinement
// sequence, compares the exact refinement law with the exact LE law.
Theorem1Report verify_theorem1(const MarkovChain<Rational>& chain,
                               const Theorem1Options& options = {});

struct GreenCheckOptions {
  std::size_t instances = 1000;
  std::size_t permutation_instances = 100;
  std::size_t permutation_points = 3;
  RandomChainOptions chain{5, 0.3, 6};
  std::uint64_t seed = 0;
  double tolerance = 1e-10;  // relative, double mode only
};

struct GreenInstanceResult {
  std::string kind;  // "identity" or "permutation"
  std::size_t instance;
  StateSet domain;
  std::vector<StateId> points;
  double lhs;
  double rhs;
  bool ok;
};

struct GreenCheckReport {
  std::vector<GreenInstanceResult> rows;
  std::size_t failures = 0;
  double max_relative_error = 0;
};

// A random chain together with a proper subset B whose exit is almost sure
// and at least `min_size` points, drawn from stream (seed, index).
struct GreenInstance {
  MarkovChain<Rational> chain;
  StateSet domain;
};
GreenInstance random_green_instance(const RandomChainOptions& options,
                                    std::size_t min_size, RngStream& rng);

// G_{B\{y}}(x,x) G_B(y,y) = G_B(x,x) G_{B\{x}}(y,y) on random (chain, B, x, y),
// then F_B over every ordering of random distinct points. Exact equality
// in rational mode.
template <Scalar S>
GreenCheckReport verify_green(const GreenCheckOptions& options);

// traced(traced(P, V_2, A), V_1, Delta) against traced(P, V_1, A), row by
// row, for V_1 inside V_2 and nonempty A. Exact in rational mode.
template <Scalar S>
bool traced_tower_holds(const MarkovChain<S>& chain, const StateSet& v1, const StateSet& v2,
                        const StateSet& target, TraceVariant variant);

}  // namespace lerw

#endif  // LERW_VERIFY_HPP_

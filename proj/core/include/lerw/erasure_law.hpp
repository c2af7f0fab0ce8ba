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

#ifndef LERW_ERASURE_LAW_HPP_
#define LERW_ERASURE_LAW_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lerw/chain.hpp"

namespace lerw {

// A finite law over paths. tail_bound is a certified upper bound on the
// mass not represented in support; unresolved is the exact missing mass
// when it is known (always <= tail_bound). Both are zero for exact laws.
template <Scalar S>
struct PathLaw {
  std::map<Path, S> support;
  S tail_bound{0};
  S unresolved{0};

  S total_mass() const;
};

// 1/2 sum |p - q| over the union of supports.
template <Scalar S>
S total_variation(const PathLaw<S>& p, const PathLaw<S>& q);

// First path (in map order) where the two laws disagree.
template <Scalar S>
std::optional<Path> first_difference(const PathLaw<S>& p, const PathLaw<S>& q);

// Sorted text: "# tail_bound <v>" then one "path<TAB>probability" per line.
template <Scalar S>
void write_path_law(std::ostream& out, const PathLaw<S>& law,
                    const std::vector<std::string>& names);

template <Scalar S>
PathLaw<S> read_path_law(std::istream& in, const std::vector<std::string>& names);

// The operator applied to X|[0, tau_A]: plain loop erasure, or the
// refinement L_{V_m} o ... o L_{V_1} for a nested sequence.
struct Pipeline {
  std::vector<StateSet> nested;  // empty means plain LE

  static Pipeline loop_erasure() { return {}; }
  static Pipeline refinement(std::vector<StateSet> sets) { return {std::move(sets)}; }
  bool is_loop_erasure() const { return nested.empty(); }
  // The nested sequence to run; plain LE is the single full set.
  std::vector<StateSet> stages(std::size_t num_states) const;
};

struct AutomatonOptions {
  std::size_t max_states = 2'000'000;
  // Test hook: when the first stage erases a loop at the point recorded in
  // slot i > 0 it restores slot i - 1 instead, erasing one point too many.
  bool inject_ple_off_by_one = false;
};

// Online evaluation of a refinement pipeline as a deterministic automaton
// over input symbols. Stage j keeps the current PLE output of its input as
// records (value, state of stage j+1 after that value) for the points of
// V_j; a returning V_j point truncates to its record and restores the
// downstream snapshot. The last stage stores its output path. States are
// hash-consed per stage, so equal histories share one id.
class RefinementAutomaton {
 public:
  using Id = std::uint32_t;

  RefinementAutomaton(std::size_t num_states, std::vector<StateSet> nested,
                      AutomatonOptions options = {});

  Id empty() const { return empty_; }
  Id step(Id state, StateId z);
  Id initial(StateId x) { return step(empty_, x); }

  // Output of the whole pipeline for the input consumed so far.
  const std::vector<StateId>& output(Id state) const;
  // Current input position (the PLE output always ends at the last input).
  StateId position(Id state) const { return output(state).back(); }

  std::size_t num_states() const;

 private:
  struct Record {
    StateId value;
    Id snapshot;
    friend bool operator==(const Record&, const Record&) = default;
  };
  struct Node {
    std::vector<Record> records;
    Id downstream;
    friend bool operator==(const Node&, const Node&) = default;
  };
  struct NodeHash {
    std::size_t operator()(const Node& n) const;
  };
  struct PathHash {
    std::size_t operator()(const std::vector<StateId>& p) const;
  };
  struct Stage {
    std::vector<bool> mask;
    std::vector<Node> nodes;
    std::unordered_map<Node, Id, NodeHash> index;
    std::unordered_map<std::uint64_t, Id> memo;
  };

  Id step_stage(std::size_t j, Id state, StateId z);
  Id intern(std::size_t j, Node node);
  Id intern_final(std::vector<StateId> path);
  Id final_id(Id stage0_state) const;
  void count_state();

  std::vector<Stage> stages_;
  std::vector<std::vector<StateId>> final_nodes_;
  std::unordered_map<std::vector<StateId>, Id, PathHash> final_index_;
  std::unordered_map<std::uint64_t, Id> final_memo_;
  AutomatonOptions options_;
  std::size_t total_ = 0;
  Id empty_ = 0;
};

// Exact law of pipeline(X|[0, tau_A]) under P_x, from one absorbing linear
// solve over the automaton states (no truncation, tail_bound = 0).
template <Scalar S>
PathLaw<S> exact_erasure_law(const MarkovChain<S>& chain, StateId x,
                             const StateSet& target, const Pipeline& pipeline,
                             AutomatonOptions options = {});

// Same, reusing an automaton built for this chain's state count. The
// automaton does not depend on x or A, so one instance serves many queries.
template <Scalar S>
PathLaw<S> exact_erasure_law(const MarkovChain<S>& chain, StateId x,
                             const StateSet& target, RefinementAutomaton& automaton);

struct EnumerationGuard {
  std::size_t max_chain_states = 8;
  std::size_t max_length_cap = 40;
  // Refuse when the certified tail bound exceeds this.
  double max_tail_bound = 1.0;
};

// Sums over every trajectory with tau_A <= length_cap, grouping trajectories
// by automaton state. tail_bound = (1 - p_min)^floor(cap / D), D = number of
// states, p_min = min over V_A \ A of P_x(tau_A <= D).
template <Scalar S>
PathLaw<S> enumerate_erasure_law(const MarkovChain<S>& chain, StateId x,
                                 const StateSet& target,
                                 const Pipeline& pipeline,
                                 std::size_t length_cap,
                                 EnumerationGuard guard = {},
                                 AutomatonOptions options = {});

// The certified bound used by enumerate_erasure_law.
template <Scalar S>
S entry_tail_bound(const MarkovChain<S>& chain, const StateSet& target,
                   std::size_t length_cap);

// LE law assembled from le_path_probability over admissible paths.
template <Scalar S>
PathLaw<S> le_law_product_formula(const MarkovChain<S>& chain, StateId x,
                                  const StateSet& target);

}  // namespace lerw

#endif  // LERW_ERASURE_LAW_HPP_

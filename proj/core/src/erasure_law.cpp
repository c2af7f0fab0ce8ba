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

#include "lerw/erasure_law.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "lerw/erasure.hpp"
#include "lerw/errors.hpp"
#include "lerw/green.hpp"

namespace lerw {
namespace {

inline std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

inline std::uint64_t memo_key(std::uint32_t state, StateId z) {
  return (static_cast<std::uint64_t>(state) << 32) | z;
}

}  // namespace

template <Scalar S>
S PathLaw<S>::total_mass() const {
  S total(0);
  for (const auto& [path, p] : support) total += p;
  return total;
}

template struct PathLaw<Rational>;
template struct PathLaw<double>;

template <Scalar S>
S total_variation(const PathLaw<S>& p, const PathLaw<S>& q) {
  S sum(0);
  for (const auto& [path, a] : p.support) {
    auto it = q.support.find(path);
    sum += abs_value(it == q.support.end() ? a : S(a - it->second));
  }
  for (const auto& [path, b] : q.support) {
    if (!p.support.count(path)) sum += abs_value(b);
  }
  return sum / 2;
}

template <Scalar S>
std::optional<Path> first_difference(const PathLaw<S>& p, const PathLaw<S>& q) {
  std::optional<Path> best;
  auto consider = [&](const Path& path) {
    if (!best || path < *best) best = path;
  };
  for (const auto& [path, a] : p.support) {
    auto it = q.support.find(path);
    if (it == q.support.end() || it->second != a) consider(path);
  }
  for (const auto& [path, b] : q.support) {
    if (!p.support.count(path)) consider(path);
  }
  return best;
}

template <Scalar S>
void write_path_law(std::ostream& out, const PathLaw<S>& law,
                    const std::vector<std::string>& names) {
  out << "# tail_bound " << format_scalar<S>(law.tail_bound) << '\n';
  for (const auto& [path, p] : law.support) {
    for (std::size_t i = 0; i < path.size(); ++i) {
      out << (i ? " " : "") << names.at(path[i]);
    }
    out << '\t' << format_scalar<S>(p) << '\n';
  }
}

template <Scalar S>
PathLaw<S> read_path_law(std::istream& in,
                         const std::vector<std::string>& names) {
  PathLaw<S> law;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string key, value;
      if (ss >> key >> value && key == "tail_bound") {
        law.tail_bound = parse_scalar<S>(value);
      }
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ValidationError("law line without tab");
    std::istringstream ss(line.substr(0, tab));
    std::vector<StateId> states;
    std::string tok;
    while (ss >> tok) {
      auto it = std::find(names.begin(), names.end(), tok);
      if (it == names.end()) throw ValidationError("unknown state '" + tok + "'");
      states.push_back(static_cast<StateId>(it - names.begin()));
    }
    law.support[Path(std::move(states))] += parse_scalar<S>(line.substr(tab + 1));
  }
  return law;
}

#define LERW_INSTANTIATE(S)                                                    \
  template S total_variation(const PathLaw<S>&, const PathLaw<S>&);            \
  template std::optional<Path> first_difference(const PathLaw<S>&,             \
                                                const PathLaw<S>&);            \
  template void write_path_law(std::ostream&, const PathLaw<S>&,               \
                               const std::vector<std::string>&);               \
  template PathLaw<S> read_path_law(std::istream&,                             \
                                    const std::vector<std::string>&);
LERW_INSTANTIATE(Rational)
LERW_INSTANTIATE(double)
#undef LERW_INSTANTIATE

std::vector<StateSet> Pipeline::stages(std::size_t num_states) const {
  if (nested.empty()) return {StateSet::range(static_cast<StateId>(num_states))};
  return nested;
}

std::size_t RefinementAutomaton::NodeHash::operator()(const Node& n) const {
  std::size_t h = n.downstream;
  for (const auto& r : n.records) h = mix(mix(h, r.value), r.snapshot);
  return h;
}

std::size_t RefinementAutomaton::PathHash::operator()(
    const std::vector<StateId>& p) const {
  std::size_t h = p.size();
  for (StateId s : p) h = mix(h, s);
  return h;
}

RefinementAutomaton::RefinementAutomaton(std::size_t num_states,
                                         std::vector<StateSet> nested,
                                         AutomatonOptions options)
    : options_(options) {
  if (nested.empty()) throw ValidationError("pipeline has no stages");
  validate_nested(nested);
  for (const auto& v : nested) {
    if (!v.empty() && v.ids().back() >= num_states) {
      throw ValidationError("pipeline set contains an unknown state");
    }
  }
  stages_.resize(nested.size());
  for (std::size_t j = 0; j < nested.size(); ++j) {
    stages_[j].mask = nested[j].mask(num_states);
  }
  Id below = intern_final({});
  for (std::size_t j = stages_.size() - 1; j-- > 0;) {
    below = intern(j, Node{{}, below});
  }
  empty_ = below;
}

RefinementAutomaton::Id RefinementAutomaton::step(Id state, StateId z) {
  return step_stage(0, state, z);
}

void RefinementAutomaton::count_state() {
  if (++total_ > options_.max_states) {
    throw GuardExceeded("refinement automaton exceeded " +
                        std::to_string(options_.max_states) + " states");
  }
}

RefinementAutomaton::Id RefinementAutomaton::intern(std::size_t j, Node node) {
  Stage& stage = stages_[j];
  auto it = stage.index.find(node);
  if (it != stage.index.end()) return it->second;
  count_state();
  const Id id = static_cast<Id>(stage.nodes.size());
  stage.nodes.push_back(node);
  stage.index.emplace(std::move(node), id);
  return id;
}

RefinementAutomaton::Id RefinementAutomaton::intern_final(
    std::vector<StateId> path) {
  auto it = final_index_.find(path);
  if (it != final_index_.end()) return it->second;
  count_state();
  const Id id = static_cast<Id>(final_nodes_.size());
  final_nodes_.push_back(path);
  final_index_.emplace(std::move(path), id);
  return id;
}

RefinementAutomaton::Id RefinementAutomaton::step_stage(std::size_t j, Id state,
                                                        StateId z) {
  const std::uint64_t key = memo_key(state, z);
  const bool last = j + 1 == stages_.size();
  auto& memo = last ? final_memo_ : stages_[j].memo;
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  Id result;
  const bool in_v = stages_[j].mask[z];
  if (last) {
    std::vector<StateId> path = final_nodes_[state];
    auto pos = in_v ? std::find(path.begin(), path.end(), z) : path.end();
    if (pos != path.end()) {
      path.erase(pos + 1, path.end());
    } else {
      path.push_back(z);
    }
    result = intern_final(std::move(path));
  } else {
    Node node = stages_[j].nodes[state];
    auto rec = std::find_if(node.records.begin(), node.records.end(),
                            [z](const Record& r) { return r.value == z; });
    if (in_v && rec != node.records.end()) {
      const std::size_t i = static_cast<std::size_t>(rec - node.records.begin());
      if (options_.inject_ple_off_by_one && j == 0 && i > 0) {
        node.records.resize(i);
        node.downstream = step_stage(j + 1, node.records.back().snapshot, z);
        node.records.push_back({z, node.downstream});
      } else {
        node.records.resize(i + 1);
        node.downstream = node.records.back().snapshot;
      }
    } else {
      node.downstream = step_stage(j + 1, node.downstream, z);
      if (in_v) node.records.push_back({z, node.downstream});
    }
    result = intern(j, std::move(node));
  }
  // The recursive calls may have rehashed other memo tables, not this one.
  (last ? final_memo_ : stages_[j].memo).emplace(key, result);
  return result;
}

RefinementAutomaton::Id RefinementAutomaton::final_id(Id state) const {
  for (std::size_t j = 0; j + 1 < stages_.size(); ++j) {
    state = stages_[j].nodes[state].downstream;
  }
  return state;
}

const std::vector<StateId>& RefinementAutomaton::output(Id state) const {
  return final_nodes_[final_id(state)];
}

std::size_t RefinementAutomaton::num_states() const { return total_; }

namespace {

template <Scalar S>
void check_query(const MarkovChain<S>& chain, StateId x, const StateSet& target) {
  if (x >= chain.size()) throw ValidationError("start state out of range");
  if (target.empty()) throw ValidationError("target set is empty");
  if (target.ids().back() >= chain.size()) {
    throw ValidationError("target set contains an unknown state");
  }
  if (!reachability_closure(chain, target).contains(x)) {
    throw UnreachableTargetError("target is not reached almost surely from " +
                                 chain.name(x));
  }
}

}  // namespace

template <Scalar S>
PathLaw<S> exact_erasure_law(const MarkovChain<S>& chain, StateId x,
                             const StateSet& target, const Pipeline& pipeline,
                             AutomatonOptions options) {
  RefinementAutomaton automaton(chain.size(), pipeline.stages(chain.size()),
                                options);
  return exact_erasure_law(chain, x, target, automaton);
}

template <Scalar S>
PathLaw<S> exact_erasure_law(const MarkovChain<S>& chain, StateId x,
                             const StateSet& target, RefinementAutomaton& automaton) {
  check_query(chain, x, target);
  PathLaw<S> law;
  if (target.contains(x)) {
    law.support.emplace(Path{x}, S(1));
    return law;
  }
  const std::vector<bool> in_a = target.mask(chain.size());
  using Id = RefinementAutomaton::Id;
  std::vector<Id> order{automaton.initial(x)};
  std::unordered_map<Id, std::size_t> index{{order[0], 0}};
  std::vector<SparseRow<S>> rows;
  struct Exit {
    std::size_t from;
    Id state;
    S prob;
  };
  std::vector<Exit> exits;
  for (std::size_t k = 0; k < order.size(); ++k) {
    rows.emplace_back();
    rows[k].push_back({k, S(1)});
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    const StateId pos = automaton.position(order[k]);
    for (const auto& t : chain.row(pos)) {
      const Id next = automaton.step(order[k], t.target);
      if (in_a[t.target]) {
        exits.push_back({k, next, t.prob});
        continue;
      }
      auto [it, inserted] = index.try_emplace(next, order.size());
      if (inserted) {
        order.push_back(next);
        rows.emplace_back();
        rows.back().push_back({it->second, S(1)});
      }
      // Occupation measure: y = e_init + Q^T y.
      rows[it->second].push_back({k, S(-t.prob)});
    }
  }
  std::vector<S> rhs(order.size(), S(0));
  rhs[0] = S(1);
  const std::vector<S> visits = solve_sparse<S>(std::move(rows), std::move(rhs));
  for (const auto& e : exits) {
    law.support[Path(automaton.output(e.state))] += visits[e.from] * e.prob;
  }
  for (auto it = law.support.begin(); it != law.support.end();) {
    it = is_zero(it->second) ? law.support.erase(it) : std::next(it);
  }
  return law;
}

template <Scalar S>
S entry_tail_bound(const MarkovChain<S>& chain, const StateSet& target,
                   std::size_t length_cap) {
  const std::size_t n = chain.size();
  const std::vector<bool> in_a = target.mask(n);
  std::vector<S> h(n, S(0));
  for (StateId a : target) h[a] = S(1);
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<S> next(n, S(0));
    for (StateId z = 0; z < n; ++z) {
      if (in_a[z]) {
        next[z] = S(1);
        continue;
      }
      for (const auto& tr : chain.row(z)) next[z] += tr.prob * h[tr.target];
    }
    h = std::move(next);
  }
  std::optional<S> p_min;
  for (StateId z : reachability_closure(chain, target)) {
    if (in_a[z]) continue;
    if (!p_min || h[z] < *p_min) p_min = h[z];
  }
  if (!p_min) return S(0);
  const S q = S(1) - *p_min;
  S bound(1);
  for (std::size_t i = 0; i < length_cap / n; ++i) bound *= q;
  return bound;
}

template <Scalar S>
PathLaw<S> enumerate_erasure_law(const MarkovChain<S>& chain, StateId x,
                                 const StateSet& target,
                                 const Pipeline& pipeline,
                                 std::size_t length_cap, EnumerationGuard guard,
                                 AutomatonOptions options) {
  if (chain.size() > guard.max_chain_states) {
    throw GuardExceeded("enumeration is limited to " +
                        std::to_string(guard.max_chain_states) + " states");
  }
  if (length_cap > guard.max_length_cap) {
    throw GuardExceeded("length cap above " +
                        std::to_string(guard.max_length_cap));
  }
  check_query(chain, x, target);
  PathLaw<S> law;
  law.tail_bound = entry_tail_bound(chain, target, length_cap);
  if (to_double(law.tail_bound) > guard.max_tail_bound) {
    throw GuardExceeded("tail bound " + format_scalar<S>(law.tail_bound) +
                        " above the requested tolerance");
  }
  if (target.contains(x)) {
    law.support.emplace(Path{x}, S(1));
    law.tail_bound = S(0);
    return law;
  }
  const std::vector<bool> in_a = target.mask(chain.size());
  RefinementAutomaton automaton(chain.size(), pipeline.stages(chain.size()),
                                options);
  std::map<RefinementAutomaton::Id, S> current{{automaton.initial(x), S(1)}};
  for (std::size_t step = 0; step < length_cap && !current.empty(); ++step) {
    std::map<RefinementAutomaton::Id, S> next;
    for (const auto& [state, mass] : current) {
      const StateId pos = automaton.position(state);
      for (const auto& t : chain.row(pos)) {
        const auto to = automaton.step(state, t.target);
        if (in_a[t.target]) {
          law.support[Path(automaton.output(to))] += mass * t.prob;
        } else {
          next[to] += mass * t.prob;
        }
      }
    }
    current = std::move(next);
  }
  for (const auto& [state, mass] : current) law.unresolved += mass;
  return law;
}

template <Scalar S>
PathLaw<S> le_law_product_formula(const MarkovChain<S>& chain, StateId x,
                                  const StateSet& target) {
  check_query(chain, x, target);
  PathLaw<S> law;
  for (const Path& w : admissible_le_paths(chain, x, target)) {
    const S p = le_path_probability(chain, target, w);
    if (!is_zero(p)) law.support.emplace(w, p);
  }
  return law;
}

#define LERW_INSTANTIATE(S)                                                   \
  template PathLaw<S> exact_erasure_law(const MarkovChain<S>&, StateId,       \
                                        const StateSet&, const Pipeline&,     \
                                        AutomatonOptions);                    \
  template PathLaw<S> exact_erasure_law(const MarkovChain<S>&, StateId,       \
                                        const StateSet&, RefinementAutomaton&);\
  template S entry_tail_bound(const MarkovChain<S>&, const StateSet&,         \
                              std::size_t);                                   \
  template PathLaw<S> enumerate_erasure_law(                                  \
      const MarkovChain<S>&, StateId, const StateSet&, const Pipeline&,       \
      std::size_t, EnumerationGuard, AutomatonOptions);                       \
  template PathLaw<S> le_law_product_formula(const MarkovChain<S>&, StateId,  \
                                             const StateSet&);
LERW_INSTANTIATE(Rational)
LERW_INSTANTIATE(double)
#undef LERW_INSTANTIATE

}  // namespace lerw

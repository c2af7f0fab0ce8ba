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

#ifndef LERW_NETWORK_HPP_
#define LERW_NETWORK_HPP_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lerw/chain.hpp"

namespace lerw {

template <Scalar S>
struct Neighbor {
  StateId vertex;
  S conductance;
};

// Finite connected network with symmetric positive conductances and no
// self-loops. Conductances are keyed by unordered pairs.
template <Scalar S>
class ElectricalNetwork {
 public:
  using EdgeMap = std::map<std::pair<StateId, StateId>, S>;

  // Keys may be given in either order; duplicate keys in both orders are
  // summed. Names default to "0", "1", ... when empty.
  ElectricalNetwork(std::vector<std::string> names, const EdgeMap& conductances,
                    std::size_t num_vertices);

  std::size_t size() const { return adjacency_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  StateId index_of(const std::string& name) const;

  S conductance(StateId x, StateId y) const;
  // c_x = sum_y c_{x,y}.
  const S& weight(StateId x) const { return weights_[x]; }
  std::span<const Neighbor<S>> neighbors(StateId x) const { return adjacency_[x]; }
  // Each edge once, with first < second.
  EdgeMap edges() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<Neighbor<S>>> adjacency_;
  std::vector<S> weights_;
};

ElectricalNetwork<double> to_double(const ElectricalNetwork<Rational>& net);

// P(x, y) = c_{x,y} / c_x.
template <Scalar S>
MarkovChain<S> walk_from_network(const ElectricalNetwork<S>& net);

// Energy minimizing extension of boundary data (vertex -> value). Rejects
// interior vertices with no path to the boundary.
template <Scalar S>
std::vector<S> harmonic_extension(const ElectricalNetwork<S>& net,
                                  const std::map<StateId, S>& boundary);

// Effective resistance from x to the set A (wired together), via the
// Dirichlet problem with x at potential 1 and A at 0. Zero when x is in A.
template <Scalar S>
S effective_resistance_to_set(const ElectricalNetwork<S>& net, StateId x,
                              const StateSet& target);

template <Scalar S>
S effective_resistance(const ElectricalNetwork<S>& net, StateId x, StateId y) {
  return effective_resistance_to_set(net, x, StateSet{y});
}

// Schur complement of the weighted Laplacian onto V_sub, returned as a
// network on V_sub (vertices in increasing order). Rational mode eliminates
// one vertex at a time (star-mesh); double mode uses a sparse LDL^T of the
// eliminated block.
template <Scalar S>
ElectricalNetwork<S> trace_network(const ElectricalNetwork<S>& net,
                                   const StateSet& v_sub);

template <Scalar S>
struct HittingBoundReport {
  S probability;  // P_x(tau_y < tau_A)
  S r_xy;
  S r_xa;
  std::optional<S> bound;  // 1 - R(x,y) / (R(x,A) - R(x,y)); empty if vacuous
  bool holds;
};

// Lower bound on the probability of reaching y before A in terms of
// effective resistances. Vacuous when R(x,A) <= R(x,y).
template <Scalar S>
HittingBoundReport<S> check_hitting_bound(const ElectricalNetwork<S>& net,
                                          StateId x, StateId y,
                                          const StateSet& target);

template <Scalar S>
struct ExitTimeReport {
  S expected_exit_time;  // E_x tau_A for the induced walk
  S weight_of_domain;    // sum of c_y over y outside A
  S resistance;          // R(x, A)
  bool holds;            // E_x tau_A <= weight_of_domain * R(x, A)
};

template <Scalar S>
ExitTimeReport<S> check_exit_time_bound(const ElectricalNetwork<S>& net,
                                        StateId x, const StateSet& target);

// Lines "u v conductance", '#' comments. Vertex order is first appearance.
template <Scalar S>
ElectricalNetwork<S> read_network(std::istream& in);

template <Scalar S>
void write_network(std::ostream& out, const ElectricalNetwork<S>& net);

}  // namespace lerw

#endif  // LERW_NETWORK_HPP_

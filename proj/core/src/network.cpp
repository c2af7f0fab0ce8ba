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

#include "lerw/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>

#include "lerw/errors.hpp"
#include "lerw/green.hpp"
#include "lerw/linalg.hpp"

namespace lerw {

template <Scalar S>
ElectricalNetwork<S>::ElectricalNetwork(std::vector<std::string> names,
                                        const EdgeMap& conductances,
                                        std::size_t num_vertices)
    : names_(std::move(names)), adjacency_(num_vertices), weights_(num_vertices, S(0)) {
  if (num_vertices == 0) throw ValidationError("network has no vertices");
  if (names_.empty()) {
    for (std::size_t i = 0; i < num_vertices; ++i) names_.push_back(std::to_string(i));
  }
  if (names_.size() != num_vertices) {
    throw ValidationError("network name count does not match vertex count");
  }
  EdgeMap merged;
  for (const auto& [key, raw] : conductances) {
    const S c = canonical(raw);
    auto [x, y] = key;
    if (x >= num_vertices || y >= num_vertices) {
      throw ValidationError("edge endpoint out of range");
    }
    if (x == y) throw ValidationError("self-loop at " + names_[x]);
    if (c < 0) throw ValidationError("negative conductance");
    if (x > y) std::swap(x, y);
    merged[{x, y}] += c;
  }
  for (const auto& [key, c] : merged) {
    if (is_zero(c)) continue;
    adjacency_[key.first].push_back({key.second, c});
    adjacency_[key.second].push_back({key.first, c});
    weights_[key.first] += c;
    weights_[key.second] += c;
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end(),
              [](const auto& a, const auto& b) { return a.vertex < b.vertex; });
  }
  std::vector<bool> seen(num_vertices, false);
  std::deque<StateId> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    const StateId u = queue.front();
    queue.pop_front();
    for (const auto& nb : adjacency_[u]) {
      if (!seen[nb.vertex]) {
        seen[nb.vertex] = true;
        ++count;
        queue.push_back(nb.vertex);
      }
    }
  }
  if (count != num_vertices) throw ValidationError("network is disconnected");
}

template <Scalar S>
StateId ElectricalNetwork<S>::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw ValidationError("unknown vertex '" + name + "'");
  return static_cast<StateId>(it - names_.begin());
}

template <Scalar S>
S ElectricalNetwork<S>::conductance(StateId x, StateId y) const {
  const auto& adj = adjacency_.at(x);
  auto it = std::lower_bound(adj.begin(), adj.end(), y,
                             [](const auto& nb, StateId v) { return nb.vertex < v; });
  return (it != adj.end() && it->vertex == y) ? it->conductance : S(0);
}

template <Scalar S>
typename ElectricalNetwork<S>::EdgeMap ElectricalNetwork<S>::edges() const {
  EdgeMap out;
  for (StateId x = 0; x < size(); ++x) {
    for (const auto& nb : adjacency_[x]) {
      if (x < nb.vertex) out.emplace(std::make_pair(x, nb.vertex), nb.conductance);
    }
  }
  return out;
}

template class ElectricalNetwork<Rational>;
template class ElectricalNetwork<double>;

ElectricalNetwork<double> to_double(const ElectricalNetwork<Rational>& net) {
  ElectricalNetwork<double>::EdgeMap edges;
  for (const auto& [key, c] : net.edges()) edges.emplace(key, c.get_d());
  return ElectricalNetwork<double>(net.names(), edges, net.size());
}

template <Scalar S>
MarkovChain<S> walk_from_network(const ElectricalNetwork<S>& net) {
  std::vector<typename MarkovChain<S>::Row> rows(net.size());
  for (StateId x = 0; x < net.size(); ++x) {
    for (const auto& nb : net.neighbors(x)) {
      rows[x].push_back({nb.vertex, S(nb.conductance / net.weight(x))});
    }
    if constexpr (std::is_same_v<S, double>) {
      double sum = 0;
      for (const auto& t : rows[x]) sum += t.prob;
      for (auto& t : rows[x]) t.prob /= sum;
    }
  }
  return MarkovChain<S>(net.names(), std::move(rows));
}

template <Scalar S>
std::vector<S> harmonic_extension(const ElectricalNetwork<S>& net,
                                  const std::map<StateId, S>& boundary) {
  const std::size_t n = net.size();
  if (boundary.empty()) throw ValidationError("boundary set is empty");
  std::vector<int> pos(n, -1);
  std::vector<StateId> interior;
  for (StateId x = 0; x < n; ++x) {
    if (!boundary.count(x)) {
      pos[x] = static_cast<int>(interior.size());
      interior.push_back(x);
    }
  }
  std::vector<S> values(n, S(0));
  for (const auto& [b, v] : boundary) {
    if (b >= n) throw ValidationError("boundary vertex out of range");
    values[b] = v;
  }
  if (interior.empty()) return values;
  const std::size_t k = interior.size();
  std::vector<SparseRow<S>> rows(k);
  std::vector<S> rhs(k, S(0));
  for (std::size_t i = 0; i < k; ++i) {
    const StateId z = interior[i];
    rows[i].push_back({i, net.weight(z)});
    for (const auto& nb : net.neighbors(z)) {
      if (pos[nb.vertex] >= 0) {
        rows[i].push_back({static_cast<std::size_t>(pos[nb.vertex]), S(-nb.conductance)});
      } else {
        rhs[i] += nb.conductance * values[nb.vertex];
      }
    }
  }
  // The network is connected, so every interior component touches the
  // boundary and the Dirichlet Laplacian is positive definite.
  const auto solution = solve_spd<S>(rows, {rhs});
  for (std::size_t i = 0; i < k; ++i) values[interior[i]] = solution[0][i];
  return values;
}

template <Scalar S>
S effective_resistance_to_set(const ElectricalNetwork<S>& net, StateId x,
                              const StateSet& target) {
  if (target.empty()) throw ValidationError("target set is empty");
  if (x >= net.size() || target.ids().back() >= net.size()) {
    throw ValidationError("vertex out of range");
  }
  if (target.contains(x)) return S(0);
  std::map<StateId, S> boundary{{x, S(1)}};
  for (StateId a : target) boundary[a] = S(0);
  const std::vector<S> h = harmonic_extension(net, boundary);
  S current(0);
  for (const auto& nb : net.neighbors(x)) current += nb.conductance * (S(1) - h[nb.vertex]);
  if (!(current > 0)) throw SingularSystemError("no current flows to the target");
  return S(1) / current;
}

namespace {

ElectricalNetwork<Rational> star_mesh(const ElectricalNetwork<Rational>& net,
                                      const StateSet& v_sub) {
  const std::size_t n = net.size();
  std::vector<std::map<StateId, Rational>> adj(n);
  for (StateId x = 0; x < n; ++x) {
    for (const auto& nb : net.neighbors(x)) adj[x][nb.vertex] = nb.conductance;
  }
  std::vector<bool> alive(n, true);
  std::vector<StateId> order;
  for (StateId x = 0; x < n; ++x) {
    if (!v_sub.contains(x)) order.push_back(x);
  }
  while (!order.empty()) {
    // Lowest current degree first keeps the fill small.
    auto best = std::min_element(order.begin(), order.end(), [&](StateId a, StateId b) {
      return std::make_pair(adj[a].size(), a) < std::make_pair(adj[b].size(), b);
    });
    const StateId z = *best;
    order.erase(best);
    Rational cz = 0;
    for (const auto& [u, c] : adj[z]) cz += c;
    std::vector<std::pair<StateId, Rational>> nbs(adj[z].begin(), adj[z].end());
    for (const auto& [u, c] : nbs) adj[u].erase(z);
    for (std::size_t i = 0; i < nbs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbs.size(); ++j) {
        const Rational add = nbs[i].second * nbs[j].second / cz;
        adj[nbs[i].first][nbs[j].first] += add;
        adj[nbs[j].first][nbs[i].first] += add;
      }
    }
    adj[z].clear();
    alive[z] = false;
  }
  std::vector<StateId> new_id(n, 0);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < v_sub.size(); ++i) {
    new_id[v_sub.ids()[i]] = static_cast<StateId>(i);
    names.push_back(net.names()[v_sub.ids()[i]]);
  }
  ElectricalNetwork<Rational>::EdgeMap edges;
  for (StateId x : v_sub) {
    for (const auto& [u, c] : adj[x]) {
      if (x < u) edges[{new_id[x], new_id[u]}] = c;
    }
  }
  return ElectricalNetwork<Rational>(std::move(names), edges, v_sub.size());
}

ElectricalNetwork<double> block_schur(const ElectricalNetwork<double>& net,
                                      const StateSet& v_sub) {
  const std::size_t n = net.size();
  std::vector<int> ipos(n, -1), spos(n, -1);
  std::vector<StateId> interior;
  for (StateId x = 0; x < n; ++x) {
    if (v_sub.contains(x)) continue;
    ipos[x] = static_cast<int>(interior.size());
    interior.push_back(x);
  }
  for (std::size_t i = 0; i < v_sub.size(); ++i) spos[v_sub.ids()[i]] = static_cast<int>(i);
  const std::size_t k = interior.size(), s = v_sub.size();
  // Schur complement C = L_SS - L_SI L_II^{-1} L_IS; only its off-diagonal
  // entries are needed, as conductances -C(u, v).
  std::vector<std::vector<double>> c(s, std::vector<double>(s, 0.0));
  for (std::size_t a = 0; a < s; ++a) {
    for (const auto& nb : net.neighbors(v_sub.ids()[a])) {
      if (spos[nb.vertex] >= 0) c[a][spos[nb.vertex]] += nb.conductance;
    }
  }
  if (k > 0) {
    std::vector<SparseRow<double>> rows(k);
    for (std::size_t i = 0; i < k; ++i) {
      rows[i].push_back({i, net.weight(interior[i])});
      for (const auto& nb : net.neighbors(interior[i])) {
        if (ipos[nb.vertex] >= 0) {
          rows[i].push_back({static_cast<std::size_t>(ipos[nb.vertex]), -nb.conductance});
        }
      }
    }
    // Column b of L_IS is minus the conductances from b into the interior.
    std::vector<std::vector<double>> rhs(s, std::vector<double>(k, 0.0));
    for (std::size_t b = 0; b < s; ++b) {
      for (const auto& nb : net.neighbors(v_sub.ids()[b])) {
        if (ipos[nb.vertex] >= 0) rhs[b][ipos[nb.vertex]] = nb.conductance;
      }
    }
    // X_b = L_II^{-1} (c_{I,b}) is the harmonic measure of b seen from I.
    const auto x = solve_spd<double>(rows, rhs);
    for (std::size_t a = 0; a < s; ++a) {
      for (const auto& nb : net.neighbors(v_sub.ids()[a])) {
        if (ipos[nb.vertex] < 0) continue;
        for (std::size_t b = 0; b < s; ++b) {
          if (b != a) c[a][b] += nb.conductance * x[b][ipos[nb.vertex]];
        }
      }
    }
  }
  std::vector<std::string> names;
  for (StateId x : v_sub) names.push_back(net.names()[x]);
  ElectricalNetwork<double>::EdgeMap edges;
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = a + 1; b < s; ++b) {
      const double value = 0.5 * (c[a][b] + c[b][a]);
      const double scale = net.weight(v_sub.ids()[a]) + net.weight(v_sub.ids()[b]);
      if (std::abs(value) <= 1e-13 * scale) continue;
      if (value < 0) throw SingularSystemError("negative traced conductance");
      edges[{static_cast<StateId>(a), static_cast<StateId>(b)}] = value;
    }
  }
  return ElectricalNetwork<double>(std::move(names), edges, s);
}

}  // namespace

template <Scalar S>
ElectricalNetwork<S> trace_network(const ElectricalNetwork<S>& net,
                                   const StateSet& v_sub) {
  if (v_sub.size() < 2) throw ValidationError("trace needs at least two vertices");
  if (v_sub.ids().back() >= net.size()) throw ValidationError("vertex out of range");
  if constexpr (std::is_same_v<S, Rational>) {
    return star_mesh(net, v_sub);
  } else {
    return block_schur(net, v_sub);
  }
}

template <Scalar S>
HittingBoundReport<S> check_hitting_bound(const ElectricalNetwork<S>& net,
                                          StateId x, StateId y,
                                          const StateSet& target) {
  if (target.contains(y)) throw ValidationError("y must lie outside A");
  HittingBoundReport<S> report;
  std::map<StateId, S> boundary{{y, S(1)}};
  for (StateId a : target) boundary[a] = S(0);
  report.probability = harmonic_extension(net, boundary)[x];
  report.r_xy = effective_resistance(net, x, y);
  report.r_xa = effective_resistance_to_set(net, x, target);
  if (report.r_xa > report.r_xy) {
    report.bound = S(1) - report.r_xy / (report.r_xa - report.r_xy);
    if constexpr (std::is_same_v<S, Rational>) {
      report.holds = report.probability >= *report.bound;
    } else {
      report.holds = report.probability >= *report.bound - 1e-12;
    }
  } else {
    report.holds = true;
  }
  return report;
}

template <Scalar S>
ExitTimeReport<S> check_exit_time_bound(const ElectricalNetwork<S>& net,
                                        StateId x, const StateSet& target) {
  ExitTimeReport<S> report;
  const MarkovChain<S> walk = walk_from_network(net);
  report.expected_exit_time = expected_entry_time(walk, target)[x];
  report.weight_of_domain = S(0);
  for (StateId y = 0; y < net.size(); ++y) {
    if (!target.contains(y)) report.weight_of_domain += net.weight(y);
  }
  report.resistance = effective_resistance_to_set(net, x, target);
  const S rhs = report.weight_of_domain * report.resistance;
  if constexpr (std::is_same_v<S, Rational>) {
    report.holds = report.expected_exit_time <= rhs;
  } else {
    report.holds = report.expected_exit_time <= rhs * (1 + 1e-10);
  }
  return report;
}

template <Scalar S>
ElectricalNetwork<S> read_network(std::istream& in) {
  std::vector<std::string> names;
  typename ElectricalNetwork<S>::EdgeMap edges;
  auto id = [&](const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it != names.end()) return static_cast<StateId>(it - names.begin());
    names.push_back(name);
    return static_cast<StateId>(names.size() - 1);
  };
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line.substr(0, line.find('#')));
    std::string u, v, c, extra;
    if (!(ss >> u)) continue;
    if (!(ss >> v >> c) || (ss >> extra)) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": expected 'u v conductance'");
    }
    const StateId a = id(u), b = id(v);
    if (a == b) throw ValidationError("line " + std::to_string(line_no) + ": self-loop");
    const S value = parse_scalar<S>(c);
    if (!(value > 0)) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": conductance must be positive");
    }
    edges[{std::min(a, b), std::max(a, b)}] += value;
  }
  const std::size_t n = names.size();
  return ElectricalNetwork<S>(std::move(names), edges, n);
}

template <Scalar S>
void write_network(std::ostream& out, const ElectricalNetwork<S>& net) {
  for (const auto& [key, c] : net.edges()) {
    out << net.names()[key.first] << ' ' << net.names()[key.second] << ' '
        << format_scalar<S>(c) << '\n';
  }
}

#define LERW_INSTANTIATE(S)                                                    \
  template MarkovChain<S> walk_from_network(const ElectricalNetwork<S>&);      \
  template std::vector<S> harmonic_extension(const ElectricalNetwork<S>&,      \
                                             const std::map<StateId, S>&);     \
  template S effective_resistance_to_set(const ElectricalNetwork<S>&, StateId, \
                                         const StateSet&);                     \
  template ElectricalNetwork<S> trace_network(const ElectricalNetwork<S>&,     \
                                              const StateSet&);                \
  template HittingBoundReport<S> check_hitting_bound(                          \
      const ElectricalNetwork<S>&, StateId, StateId, const StateSet&);         \
  template ExitTimeReport<S> check_exit_time_bound(const ElectricalNetwork<S>&,\
                                                   StateId, const StateSet&);  \
  template ElectricalNetwork<S> read_network(std::istream&);                   \
  template void write_network(std::ostream&, const ElectricalNetwork<S>&);
LERW_INSTANTIATE(Rational)
LERW_INSTANTIATE(double)
#undef LERW_INSTANTIATE

}  // namespace lerw

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

#include "lerw/traced.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include "lerw/errors.hpp"
#include "lerw/linalg.hpp"

namespace lerw {

std::string_view to_string(TraceVariant variant) {
  return variant == TraceVariant::kHittingSet ? "hitting-set" : "exclude-current";
}

TraceVariant parse_trace_variant(std::string_view text) {
  if (text == "hitting-set") return TraceVariant::kHittingSet;
  if (text == "exclude-current") return TraceVariant::kExcludeCurrent;
  throw ValidationError("unknown trace variant '" + std::string(text) + "'");
}

namespace {

// Law of the first state in `stop` for the chain started from `initial`
// (a distribution at time one). Solves for the occupation measure of the
// free states reachable from the initial support.
template <Scalar S>
std::map<StateId, S> first_stop(const MarkovChain<S>& chain,
                                const std::vector<bool>& stop,
                                std::span<const Transition<S>> initial) {
  const std::size_t n = chain.size();
  std::map<StateId, S> out;
  std::vector<int> pos(n, -1);
  std::vector<StateId> free;
  std::deque<StateId> queue;
  for (const auto& t : initial) {
    if (stop[t.target]) {
      out[t.target] += t.prob;
    } else if (pos[t.target] < 0) {
      pos[t.target] = static_cast<int>(free.size());
      free.push_back(t.target);
      queue.push_back(t.target);
    }
  }
  while (!queue.empty()) {
    const StateId z = queue.front();
    queue.pop_front();
    for (const auto& t : chain.row(z)) {
      if (!stop[t.target] && pos[t.target] < 0) {
        pos[t.target] = static_cast<int>(free.size());
        free.push_back(t.target);
        queue.push_back(t.target);
      }
    }
  }
  if (free.empty()) return out;
  // Every free state must reach the stop set, or the system is singular.
  {
    std::vector<bool> good(n, false);
    std::vector<std::vector<StateId>> preds(n);
    for (StateId z : free) {
      for (const auto& t : chain.row(z)) preds[t.target].push_back(z);
    }
    std::deque<StateId> q;
    for (StateId z = 0; z < n; ++z) {
      if (stop[z]) {
        good[z] = true;
        q.push_back(z);
      }
    }
    while (!q.empty()) {
      const StateId u = q.front();
      q.pop_front();
      for (StateId z : preds[u]) {
        if (!good[z]) {
          good[z] = true;
          q.push_back(z);
        }
      }
    }
    for (StateId z : free) {
      if (!good[z]) {
        throw SingularSystemError("trace: state " + chain.name(z) +
                                  " never reaches the traced set or A");
      }
    }
  }
  const std::size_t k = free.size();
  std::vector<SparseRow<S>> rows(k);
  std::vector<S> rhs(k, S(0));
  for (std::size_t i = 0; i < k; ++i) rows[i].push_back({i, S(1)});
  for (const auto& t : initial) {
    if (!stop[t.target]) rhs[pos[t.target]] += t.prob;
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& t : chain.row(free[i])) {
      if (!stop[t.target]) {
        rows[pos[t.target]].push_back({i, S(-t.prob)});
      }
    }
  }
  const std::vector<S> occupation = solve_sparse<S>(std::move(rows), std::move(rhs));
  for (std::size_t i = 0; i < k; ++i) {
    if (is_zero(occupation[i])) continue;
    for (const auto& t : chain.row(free[i])) {
      if (stop[t.target]) out[t.target] += occupation[i] * t.prob;
    }
  }
  return out;
}

}  // namespace

template <Scalar S>
MarkovChain<S> traced_kernel(const MarkovChain<S>& chain, const StateSet& v_sub,
                             const StateSet& target, TraceVariant variant) {
  const std::size_t n = chain.size();
  if (v_sub.empty()) throw ValidationError("traced set is empty");
  if (v_sub.ids().back() >= n || (!target.empty() && target.ids().back() >= n)) {
    throw ValidationError("traced or target set contains an unknown state");
  }
  const StateSet kept = v_sub.set_difference(target);
  if (kept.empty()) throw ValidationError("traced set lies inside A");
  const bool killed = !target.empty();
  const std::size_t m = kept.size() + (killed ? 1 : 0);
  const StateId delta = static_cast<StateId>(kept.size());
  std::vector<StateId> new_id(n, delta);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    new_id[kept.ids()[i]] = static_cast<StateId>(i);
  }
  std::vector<std::string> names;
  for (StateId s : kept) names.push_back(chain.name(s));
  if (killed) {
    std::string name = "Delta";
    while (std::find(names.begin(), names.end(), name) != names.end()) name += "'";
    names.push_back(name);
  }

  std::vector<bool> stop = v_sub.set_union(target).mask(n);
  std::vector<typename MarkovChain<S>::Row> rows(m);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const StateId x = kept.ids()[i];
    const bool exclude = variant == TraceVariant::kExcludeCurrent;
    if (exclude) stop[x] = false;
    const auto hits = first_stop(chain, stop, chain.row(x));
    if (exclude) stop[x] = true;
    std::map<StateId, S> row;
    S sum(0);
    for (const auto& [y, p] : hits) {
      const StateId to = target.contains(y) ? delta : new_id[y];
      row[to] += p;
      sum += p;
    }
    if constexpr (std::is_same_v<S, double>) {
      // Sparse solves leave ~1e-15 relative error per entry; anything
      // larger means the system was badly conditioned.
      if (std::abs(sum - 1.0) > 1e-9) {
        throw SingularSystemError("traced row does not sum to one");
      }
      for (auto& [y, p] : row) p /= sum;
    }
    for (const auto& [y, p] : row) rows[i].push_back({y, p});
  }
  std::optional<StateId> absorbing;
  if (killed) {
    rows[delta].push_back({delta, S(1)});
    absorbing = delta;
  }
  return MarkovChain<S>(std::move(names), std::move(rows), absorbing);
}

template MarkovChain<Rational> traced_kernel(const MarkovChain<Rational>&,
                                             const StateSet&, const StateSet&,
                                             TraceVariant);
template MarkovChain<double> traced_kernel(const MarkovChain<double>&,
                                           const StateSet&, const StateSet&,
                                           TraceVariant);

}  // namespace lerw

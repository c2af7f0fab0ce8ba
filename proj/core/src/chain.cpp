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

#include "lerw/chain.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include "lerw/errors.hpp"

namespace lerw {
namespace {

template <Scalar S>
bool row_sum_ok(const S& sum) {
  if constexpr (std::is_same_v<S, Rational>) {
    return sum == 1;
  } else {
    return std::abs(sum - 1.0) <= 1e-12;
  }
}

}  // namespace

template <Scalar S>
MarkovChain<S>::MarkovChain(std::vector<std::string> names,
                            std::vector<Row> rows,
                            std::optional<StateId> absorbing)
    : names_(std::move(names)), absorbing_(absorbing) {
  const std::size_t n = rows.size();
  if (n == 0) throw ValidationError("chain has no states");
  if (names_.empty()) {
    for (std::size_t i = 0; i < n; ++i) names_.push_back(std::to_string(i));
  }
  if (names_.size() != n) {
    throw ValidationError("kernel has " + std::to_string(n) + " rows but " +
                          std::to_string(names_.size()) + " state names");
  }
  {
    std::vector<std::string> sorted = names_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ValidationError("duplicate state name");
    }
  }
  rows_.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::map<StateId, S> merged;
    for (const auto& t : rows[x]) {
      if (t.target >= n) throw ValidationError("transition target out of range");
      const S prob = canonical(t.prob);
      if (prob < 0) {
        throw ValidationError("negative entry in row " + names_[x]);
      }
      if (prob > 1) throw ValidationError("entry above 1 in row " + names_[x]);
      merged[t.target] += prob;
    }
    S sum(0);
    for (const auto& [y, p] : merged) {
      sum += p;
      if (!is_zero(p)) rows_[x].push_back({y, p});
    }
    if (!row_sum_ok(sum)) {
      throw ValidationError("row " + names_[x] + " sums to " +
                            format_scalar<S>(sum) + ", expected 1");
    }
  }
  if (absorbing_) {
    const StateId d = *absorbing_;
    if (d >= n) throw ValidationError("absorbing state out of range");
    if (rows_[d].size() != 1 || rows_[d][0].target != d) {
      throw ValidationError("absorbing state " + names_[d] +
                            " must have a Dirac row");
    }
  }
}

template <Scalar S>
StateId MarkovChain<S>::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<StateId>(i);
  }
  throw ValidationError("unknown state '" + std::string(name) + "'");
}

template <Scalar S>
S MarkovChain<S>::prob(StateId from, StateId to) const {
  const auto& r = rows_.at(from);
  auto it = std::lower_bound(
      r.begin(), r.end(), to,
      [](const Transition<S>& t, StateId v) { return t.target < v; });
  if (it != r.end() && it->target == to) return it->prob;
  return S(0);
}

template class MarkovChain<Rational>;
template class MarkovChain<double>;

template <Scalar S>
MarkovChain<S> build_chain(std::vector<std::string> names,
                           const std::vector<std::vector<S>>& kernel_rows,
                           std::optional<StateId> absorbing) {
  const std::size_t n = kernel_rows.size();
  std::vector<typename MarkovChain<S>::Row> rows(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (kernel_rows[x].size() != n) {
      throw ValidationError("kernel is not square: row " + std::to_string(x) +
                            " has " + std::to_string(kernel_rows[x].size()) +
                            " entries");
    }
    for (std::size_t y = 0; y < n; ++y) {
      rows[x].push_back({static_cast<StateId>(y), kernel_rows[x][y]});
    }
  }
  return MarkovChain<S>(std::move(names), std::move(rows), absorbing);
}

template MarkovChain<Rational> build_chain(std::vector<std::string>,
                                           const std::vector<std::vector<Rational>>&,
                                           std::optional<StateId>);
template MarkovChain<double> build_chain(std::vector<std::string>,
                                         const std::vector<std::vector<double>>&,
                                         std::optional<StateId>);

MarkovChain<double> to_double(const MarkovChain<Rational>& chain) {
  std::vector<MarkovChain<double>::Row> rows(chain.size());
  for (StateId x = 0; x < chain.size(); ++x) {
    double sum = 0;
    for (const auto& t : chain.row(x)) {
      rows[x].push_back({t.target, t.prob.get_d()});
      sum += rows[x].back().prob;
    }
    // Rounding each entry can move the sum by a few ulps; fold the
    // difference into the largest entry.
    auto largest = std::max_element(
        rows[x].begin(), rows[x].end(),
        [](const auto& a, const auto& b) { return a.prob < b.prob; });
    largest->prob += 1.0 - sum;
  }
  return MarkovChain<double>(chain.names(), std::move(rows), chain.absorbing());
}

template <Scalar S>
StateSet reachability_closure(const MarkovChain<S>& chain,
                              const StateSet& target) {
  const std::size_t n = chain.size();
  const std::vector<bool> in_a = target.mask(n);
  std::vector<std::vector<StateId>> preds(n);
  for (StateId x = 0; x < n; ++x) {
    for (const auto& t : chain.row(x)) preds[t.target].push_back(x);
  }
  // R: states from which A is reachable at all.
  std::vector<bool> reaches(n, false);
  std::deque<StateId> queue;
  for (StateId a : target) {
    if (a < n && !reaches[a]) {
      reaches[a] = true;
      queue.push_back(a);
    }
  }
  while (!queue.empty()) {
    const StateId y = queue.front();
    queue.pop_front();
    for (StateId x : preds[y]) {
      if (!reaches[x] && !in_a[x]) {
        reaches[x] = true;
        queue.push_back(x);
      }
    }
  }
  // Bad: states that can reach a state outside R while avoiding A.
  std::vector<bool> bad(n, false);
  for (StateId x = 0; x < n; ++x) {
    if (!reaches[x]) {
      bad[x] = true;
      queue.push_back(x);
    }
  }
  while (!queue.empty()) {
    const StateId y = queue.front();
    queue.pop_front();
    for (StateId x : preds[y]) {
      if (!bad[x] && !in_a[x]) {
        bad[x] = true;
        queue.push_back(x);
      }
    }
  }
  std::vector<StateId> ids;
  for (StateId x = 0; x < n; ++x) {
    if (!bad[x]) ids.push_back(x);
  }
  return StateSet(std::move(ids));
}

template StateSet reachability_closure(const MarkovChain<Rational>&, const StateSet&);
template StateSet reachability_closure(const MarkovChain<double>&, const StateSet&);

template <Scalar S>
TrajectorySampler::TrajectorySampler(const MarkovChain<S>& chain,
                                     StateSet target, std::uint64_t step_cap)
    : target_(std::move(target)), step_cap_(step_cap) {
  if (target_.empty()) throw ValidationError("target set is empty");
  const std::size_t n = chain.size();
  if (target_.ids().back() >= n) {
    throw ValidationError("target state out of range");
  }
  cumulative_.resize(n);
  targets_.resize(n);
  for (StateId x = 0; x < n; ++x) {
    double acc = 0;
    for (const auto& t : chain.row(x)) {
      acc += to_double(t.prob);
      cumulative_[x].push_back(acc);
      targets_[x].push_back(t.target);
    }
    // Guard against rounding leaving u just above the last threshold.
    cumulative_[x].back() = 2.0;
  }
  in_target_ = target_.mask(n);
  closure_ = reachability_closure(chain, target_).mask(n);
}

template TrajectorySampler::TrajectorySampler(const MarkovChain<Rational>&,
                                              StateSet, std::uint64_t);
template TrajectorySampler::TrajectorySampler(const MarkovChain<double>&,
                                              StateSet, std::uint64_t);

Path TrajectorySampler::sample(StateId start, RngStream& rng) const {
  if (start >= cumulative_.size()) throw ValidationError("start out of range");
  if (!closure_[start]) {
    throw UnreachableTargetError("target set is not reached almost surely");
  }
  std::vector<StateId> states{start};
  StateId x = start;
  std::uint64_t steps = 0;
  while (!in_target_[x]) {
    if (++steps > step_cap_) {
      throw StepCapExceeded("trajectory exceeded " + std::to_string(step_cap_) +
                            " steps");
    }
    const auto& cdf = cumulative_[x];
    const double u = rng.next_double();
    const auto k = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    x = targets_[x][static_cast<std::size_t>(k)];
    states.push_back(x);
  }
  return Path(std::move(states));
}

}  // namespace lerw

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

#include "lerw/green.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "lerw/errors.hpp"

namespace lerw {
namespace {

StateSet complement(const StateSet& s, std::size_t n) {
  return StateSet::range(static_cast<StateId>(n)).set_difference(s);
}

void check_domain(std::size_t n, const StateSet& domain) {
  if (!domain.empty() && domain.ids().back() >= n) {
    throw ValidationError("domain contains an unknown state");
  }
}

// Solves h(z) = sum_u P(z,u) h(u) + P(z, y) on `unknowns`, with h = 0
// elsewhere except at y. Every unknown must be able to reach y inside them.
template <Scalar S>
std::vector<S> hitting_values(const MarkovChain<S>& chain,
                              const std::vector<StateId>& unknowns, StateId y) {
  const std::size_t k = unknowns.size();
  std::vector<int> pos(chain.size(), -1);
  for (std::size_t i = 0; i < k; ++i) pos[unknowns[i]] = static_cast<int>(i);
  std::vector<SparseRow<S>> rows(k);
  std::vector<S> rhs(k, S(0));
  for (std::size_t i = 0; i < k; ++i) {
    rows[i].push_back({i, S(1)});
    for (const auto& t : chain.row(unknowns[i])) {
      if (t.target == y) {
        rhs[i] += t.prob;
      } else if (pos[t.target] >= 0) {
        rows[i].push_back({static_cast<std::size_t>(pos[t.target]), -t.prob});
      }
    }
  }
  return solve_sparse<S>(std::move(rows), std::move(rhs));
}

// States of B that can reach y by a path whose intermediate states stay in
// B (y excluded).
template <Scalar S>
std::vector<StateId> can_reach_within(const MarkovChain<S>& chain,
                                      const std::vector<bool>& in_b, StateId y) {
  const std::size_t n = chain.size();
  std::vector<std::vector<StateId>> preds(n);
  for (StateId z = 0; z < n; ++z) {
    if (!in_b[z]) continue;
    for (const auto& t : chain.row(z)) preds[t.target].push_back(z);
  }
  std::vector<bool> seen(n, false);
  std::deque<StateId> queue{y};
  seen[y] = true;
  std::vector<StateId> out;
  while (!queue.empty()) {
    const StateId u = queue.front();
    queue.pop_front();
    for (StateId z : preds[u]) {
      if (!seen[z]) {
        seen[z] = true;
        out.push_back(z);
        queue.push_back(z);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

template <Scalar S>
GreenTable<S>::GreenTable(const MarkovChain<S>& chain, StateSet domain)
    : domain_(std::move(domain)) {
  const std::size_t n = chain.size();
  check_domain(n, domain_);
  if (domain_.size() >= n) {
    throw ValidationError("Green domain must be a proper subset of the states");
  }
  const StateSet exit = complement(domain_, n);
  if (!domain_.is_subset_of(reachability_closure(chain, exit))) {
    throw SingularSystemError("exit from the Green domain is not almost sure");
  }
  const std::size_t k = domain_.size();
  DenseMatrix<S> m = DenseMatrix<S>::identity(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& t : chain.row(domain_.ids()[i])) {
      if (domain_.contains(t.target)) m(i, position(t.target)) -= t.prob;
    }
  }
  values_ = solve(m, DenseMatrix<S>::identity(k));
  if constexpr (std::is_same_v<S, Rational>) {
    for (StateId y : domain_) {
      for (StateId x : domain_) {
        const S lhs = (*this)(x, y);
        const S rhs = hit_before_exit(chain, domain_, x, y) * (*this)(y, y);
        if (lhs != rhs) {
          throw SingularSystemError("Green table failed the hitting identity");
        }
      }
    }
  }
}

template <Scalar S>
std::size_t GreenTable<S>::position(StateId s) const {
  const auto& ids = domain_.ids();
  auto it = std::lower_bound(ids.begin(), ids.end(), s);
  if (it == ids.end() || *it != s) {
    throw ValidationError("state " + std::to_string(s) +
                          " is outside the Green domain");
  }
  return static_cast<std::size_t>(it - ids.begin());
}

template <Scalar S>
const S& GreenTable<S>::operator()(StateId x, StateId y) const {
  return values_(position(x), position(y));
}

template class GreenTable<Rational>;
template class GreenTable<double>;

template <Scalar S>
S hit_before_exit(const MarkovChain<S>& chain, const StateSet& domain,
                  StateId x, StateId y) {
  check_domain(chain.size(), domain);
  if (!domain.contains(x) || !domain.contains(y)) {
    throw ValidationError("hit_before_exit: states must lie in the domain");
  }
  if (x == y) return S(1);
  const std::vector<bool> in_b = domain.without(y).mask(chain.size());
  const std::vector<StateId> unknowns = can_reach_within(chain, in_b, y);
  auto it = std::find(unknowns.begin(), unknowns.end(), x);
  if (it == unknowns.end()) return S(0);
  return hitting_values(chain, unknowns, y)[it - unknowns.begin()];
}

template <Scalar S>
S green_diagonal(const MarkovChain<S>& chain, const StateSet& domain,
                 StateId x) {
  check_domain(chain.size(), domain);
  if (!domain.contains(x)) {
    throw ValidationError("green_diagonal: state outside the domain");
  }
  const std::vector<bool> in_b = domain.without(x).mask(chain.size());
  const std::vector<StateId> unknowns = can_reach_within(chain, in_b, x);
  const std::vector<S> h =
      unknowns.empty() ? std::vector<S>{} : hitting_values(chain, unknowns, x);
  S ret(0);
  for (const auto& t : chain.row(x)) {
    if (t.target == x) {
      ret += t.prob;
      continue;
    }
    auto it = std::lower_bound(unknowns.begin(), unknowns.end(), t.target);
    if (it != unknowns.end() && *it == t.target) {
      ret += t.prob * h[it - unknowns.begin()];
    }
  }
  if (ret >= S(1)) {
    throw SingularSystemError("state never leaves the Green domain");
  }
  return S(1) / (S(1) - ret);
}

template <Scalar S>
S f_product(const MarkovChain<S>& chain, const StateSet& domain,
            std::span<const StateId> points) {
  StateSet remaining = domain;
  S product(1);
  for (StateId y : points) {
    if (!remaining.contains(y)) {
      throw ValidationError("f_product: points must be distinct members of B");
    }
    product *= green_diagonal(chain, remaining, y);
    remaining = remaining.without(y);
  }
  return product;
}

template <Scalar S>
S le_path_probability(const MarkovChain<S>& chain, const StateSet& target,
                      const Path& w) {
  const std::size_t n = chain.size();
  if (w.max_state() >= n) throw ValidationError("path leaves the state space");
  if (!is_self_avoiding(w)) throw ValidationError("path is not self-avoiding");
  if (!target.contains(w.back())) {
    throw ValidationError("path does not end in the target set");
  }
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (target.contains(w[i])) {
      throw ValidationError("path enters the target set before its end");
    }
  }
  StateSet domain = complement(target, n);
  S product(1);
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const S step = chain.prob(w[i], w[i + 1]);
    if (is_zero(step)) return S(0);
    product *= green_diagonal(chain, domain, w[i]) * step;
    domain = domain.without(w[i]);
  }
  return product;
}

template <Scalar S>
std::vector<Path> admissible_le_paths(const MarkovChain<S>& chain, StateId x,
                                      const StateSet& target) {
  std::vector<Path> out;
  std::vector<StateId> stack{x};
  std::vector<bool> used(chain.size(), false);
  used[x] = true;
  std::function<void()> extend = [&] {
    const StateId u = stack.back();
    if (target.contains(u)) {
      out.emplace_back(stack);
      return;
    }
    for (const auto& t : chain.row(u)) {
      if (used[t.target]) continue;
      used[t.target] = true;
      stack.push_back(t.target);
      extend();
      stack.pop_back();
      used[t.target] = false;
    }
  };
  extend();
  return out;
}

template <Scalar S>
std::vector<S> expected_entry_time(const MarkovChain<S>& chain,
                                   const StateSet& target) {
  const std::size_t n = chain.size();
  const StateSet closure = reachability_closure(chain, target);
  if (closure.size() != n) {
    throw UnreachableTargetError("target is not reached almost surely");
  }
  const std::vector<bool> in_a = target.mask(n);
  std::vector<SparseRow<S>> rows(n);
  std::vector<S> rhs(n, S(0));
  for (StateId x = 0; x < n; ++x) {
    rows[x].push_back({x, S(1)});
    if (in_a[x]) continue;
    rhs[x] = S(1);
    for (const auto& t : chain.row(x)) {
      if (!in_a[t.target]) rows[x].push_back({t.target, -t.prob});
    }
  }
  return solve_sparse<S>(std::move(rows), std::move(rhs));
}

#define LERW_INSTANTIATE(S)                                                   \
  template S green_diagonal(const MarkovChain<S>&, const StateSet&, StateId); \
  template S hit_before_exit(const MarkovChain<S>&, const StateSet&, StateId, \
                             StateId);                                        \
  template S f_product(const MarkovChain<S>&, const StateSet&,                \
                       std::span<const StateId>);                             \
  template S le_path_probability(const MarkovChain<S>&, const StateSet&,      \
                                 const Path&);                                \
  template std::vector<Path> admissible_le_paths(const MarkovChain<S>&,       \
                                                 StateId, const StateSet&);   \
  template std::vector<S> expected_entry_time(const MarkovChain<S>&,          \
                                              const StateSet&);
LERW_INSTANTIATE(Rational)
LERW_INSTANTIATE(double)
#undef LERW_INSTANTIATE

}  // namespace lerw

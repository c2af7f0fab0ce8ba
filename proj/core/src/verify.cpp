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

#include "lerw/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lerw/errors.hpp"
#include "lerw/green.hpp"

namespace lerw {

MarkovChain<Rational> random_rational_chain(const RandomChainOptions& options,
                                            RngStream& rng) {
  const std::size_t n = options.num_states;
  if (n == 0) throw ValidationError("random chain needs states");
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<int> weights(n, 0);
    int total = 0;
    while (total == 0) {
      for (std::size_t y = 0; y < n; ++y) {
        weights[y] = rng.next_double() < options.zero_probability
                         ? 0
                         : 1 + static_cast<int>(rng() % options.max_weight);
        total += weights[y];
      }
    }
    for (std::size_t y = 0; y < n; ++y) {
      rows[x][y] = Rational(weights[y], total);
      rows[x][y].canonicalize();
    }
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  return build_chain<Rational>(std::move(names), rows);
}

std::vector<std::vector<StateSet>> refinement_sequences(std::size_t num_states,
                                                        const StateSet& free_states,
                                                        int max_levels) {
  const StateSet full = StateSet::range(static_cast<StateId>(num_states));
  const std::size_t k = free_states.size();
  std::vector<StateSet> proper;  // nonempty proper subsets of the free states
  for (std::uint32_t mask = 1; mask + 1 < (1u << k); ++mask) {
    std::vector<StateId> ids;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (1u << i)) ids.push_back(free_states.ids()[i]);
    }
    proper.emplace_back(std::move(ids));
  }
  std::vector<std::vector<StateSet>> out{{full}};
  std::vector<std::vector<StateSet>> frontier{{}};
  for (int level = 2; level <= max_levels; ++level) {
    std::vector<std::vector<StateSet>> next;
    for (const auto& prefix : frontier) {
      for (const auto& s : proper) {
        if (!prefix.empty() &&
            (!prefix.back().is_subset_of(s) || prefix.back() == s)) {
          continue;
        }
        auto seq = prefix;
        seq.push_back(s);
        auto closed = seq;
        closed.push_back(full);
        out.push_back(std::move(closed));
        next.push_back(std::move(seq));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

Theorem1Report verify_theorem1(const MarkovChain<Rational>& chain,
                               const Theorem1Options& options) {
  const std::size_t n = chain.size();
  if (n > 16) throw GuardExceeded("theorem check is limited to 16 states");
  Theorem1Report report;
  struct Query {
    StateSet target;
    StateSet free;
    std::vector<StateId> starts;
  };
  std::vector<Query> queries;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<StateId> ids;
    for (StateId i = 0; i < n; ++i) {
      if (mask & (1u << i)) ids.push_back(i);
    }
    Query q{StateSet(std::move(ids)), {}, {}};
    q.free = StateSet::range(static_cast<StateId>(n)).set_difference(q.target);
    for (StateId x : reachability_closure(chain, q.target)) {
      if (!q.target.contains(x)) q.starts.push_back(x);
    }
    if (!q.starts.empty()) queries.push_back(std::move(q));
  }
  // Reference LE laws, by automaton and (optionally) by product formula.
  RefinementAutomaton le_automaton(n, {StateSet::range(static_cast<StateId>(n))},
                                   options.automaton);
  std::map<std::pair<std::size_t, StateId>, PathLaw<Rational>> reference;
  auto fail = [&](Theorem1Failure f) {
    if (report.failures.size() < options.max_failures) report.failures.push_back(std::move(f));
  };
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    for (StateId x : queries[qi].starts) {
      PathLaw<Rational> law = exact_erasure_law(chain, x, queries[qi].target, le_automaton);
      ++report.laws;
      if (options.check_product_formula) {
        const auto formula = le_law_product_formula(chain, x, queries[qi].target);
        ++report.laws;
        const Rational tv = total_variation(law, formula);
        if (tv != 0 || formula.total_mass() != 1) {
          const Path p = first_difference(law, formula).value_or(Path{x});
          fail({queries[qi].target, x, {}, p, formula.support.count(p) ? formula.support.at(p) : 0,
                law.support.count(p) ? law.support.at(p) : 0, tv,
                "product formula vs automaton LE"});
        }
      }
      reference.emplace(std::make_pair(qi, x), std::move(law));
    }
  }
  report.max_automaton_states = le_automaton.num_states();

  // Sequences depend on A only through the free states; group by them.
  std::map<StateSet, std::vector<std::size_t>> by_free;
  for (std::size_t qi = 0; qi < queries.size(); ++qi) by_free[queries[qi].free].push_back(qi);
  for (const auto& [free, qis] : by_free) {
    for (const auto& seq : refinement_sequences(n, free, options.max_levels)) {
      if (seq.size() == 1) continue;  // plain LE, already the reference
      RefinementAutomaton automaton(n, seq, options.automaton);
      for (std::size_t qi : qis) {
        for (StateId x : queries[qi].starts) {
          const PathLaw<Rational> law = exact_erasure_law(chain, x, queries[qi].target, automaton);
          ++report.cases;
          ++report.laws;
          const PathLaw<Rational>& le = reference.at({qi, x});
          const Rational tv = total_variation(le, law);
          if (tv > report.max_tv) report.max_tv = tv;
          if (tv != 0) {
            const Path p = *first_difference(le, law);
            fail({queries[qi].target, x, seq, p, le.support.count(p) ? le.support.at(p) : 0,
                  law.support.count(p) ? law.support.at(p) : 0, tv,
                  "refinement vs loop erasure"});
          }
        }
      }
      report.max_automaton_states = std::max(report.max_automaton_states, automaton.num_states());
    }
  }
  return report;
}

GreenInstance random_green_instance(const RandomChainOptions& options,
                                    std::size_t min_size, RngStream& rng) {
  const std::size_t n = options.num_states;
  if (min_size + 1 > n) throw ValidationError("domain needs a proper subset");
  for (int attempt = 0; attempt < 10000; ++attempt) {
    auto chain = random_rational_chain(options, rng);
    std::vector<StateId> perm(n);
    for (StateId i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    const std::size_t size = min_size + rng() % (n - min_size);
    std::vector<StateId> ids(perm.begin(), perm.begin() + size);
    StateSet domain(std::move(ids));
    const StateSet outside = StateSet::range(static_cast<StateId>(n)).set_difference(domain);
    const StateSet closure = reachability_closure(chain, outside);
    if (domain.is_subset_of(closure)) return {std::move(chain), std::move(domain)};
  }
  throw GuardExceeded("no random domain with almost sure exit");
}

namespace {

template <Scalar S>
bool agree(const S& a, const S& b, double tolerance, double& rel) {
  if constexpr (std::is_same_v<S, Rational>) {
    rel = a == b ? 0.0 : to_double(abs_value(a - b) / abs_value(b));
    return a == b;
  } else {
    rel = std::abs(a - b) / std::max(std::abs(b), 1e-300);
    return rel <= tolerance;
  }
}

template <Scalar S>
MarkovChain<S> as_mode(const MarkovChain<Rational>& chain) {
  if constexpr (std::is_same_v<S, Rational>) {
    return chain;
  } else {
    return to_double(chain);
  }
}

}  // namespace

template <Scalar S>
GreenCheckReport verify_green(const GreenCheckOptions& options) {
  GreenCheckReport report;
  auto record = [&](GreenInstanceResult row, double rel) {
    report.max_relative_error = std::max(report.max_relative_error, rel);
    if (!row.ok) ++report.failures;
    report.rows.push_back(std::move(row));
  };
  for (std::size_t i = 0; i < options.instances; ++i) {
    RngStream rng(options.seed, i);
    const GreenInstance inst = random_green_instance(options.chain, 2, rng);
    const auto& ids = inst.domain.ids();
    const StateId x = ids[rng() % ids.size()];
    StateId y = x;
    while (y == x) y = ids[rng() % ids.size()];
    const auto chain = as_mode<S>(inst.chain);
    const S lhs = green_diagonal(chain, inst.domain.without(y), x) *
                  green_diagonal(chain, inst.domain, y);
    const S rhs = green_diagonal(chain, inst.domain, x) *
                  green_diagonal(chain, inst.domain.without(x), y);
    double rel = 0;
    const bool ok = agree(lhs, rhs, options.tolerance, rel);
    record({"identity", i, inst.domain, {x, y}, to_double(lhs), to_double(rhs), ok}, rel);
  }
  const std::size_t k = options.permutation_points;
  for (std::size_t i = 0; i < options.permutation_instances; ++i) {
    // Separate streams from the identity instances.
    RngStream rng(options.seed, (std::uint64_t{1} << 32) + i);
    const GreenInstance inst = random_green_instance(options.chain, k, rng);
    std::vector<StateId> points = inst.domain.ids();
    std::shuffle(points.begin(), points.end(), rng);
    points.resize(k);
    std::sort(points.begin(), points.end());
    const auto chain = as_mode<S>(inst.chain);
    const S reference = f_product(chain, inst.domain, std::span<const StateId>(points));
    do {
      const S value = f_product(chain, inst.domain, std::span<const StateId>(points));
      double rel = 0;
      const bool ok = agree(value, reference, options.tolerance, rel);
      record({"permutation", i, inst.domain, points, to_double(value), to_double(reference), ok}, rel);
    } while (std::next_permutation(points.begin(), points.end()));
  }
  return report;
}

template <Scalar S>
bool traced_tower_holds(const MarkovChain<S>& chain, const StateSet& v1, const StateSet& v2,
                        const StateSet& target, TraceVariant variant) {
  if (!v1.is_subset_of(v2)) throw ValidationError("tower needs V_1 inside V_2");
  if (target.empty()) throw ValidationError("tower check needs a nonempty target");
  const auto outer = traced_kernel(chain, v2, target, variant);
  const StateSet v2_free = v2.set_difference(target);
  std::vector<StateId> v1_local;
  for (StateId v : v1.set_difference(target)) {
    v1_local.push_back(static_cast<StateId>(
        std::lower_bound(v2_free.begin(), v2_free.end(), v) - v2_free.begin()));
  }
  const StateId delta = static_cast<StateId>(v2_free.size());
  const auto twice = traced_kernel(outer, StateSet(std::move(v1_local)), StateSet{delta}, variant);
  const auto once = traced_kernel(chain, v1, target, variant);
  if (once.size() != twice.size()) return false;
  for (StateId s = 0; s < once.size(); ++s) {
    const auto a = once.row(s);
    const auto b = twice.row(s);
    if (!std::equal(a.begin(), a.end(), b.begin(), b.end())) return false;
  }
  return true;
}

template bool traced_tower_holds(const MarkovChain<Rational>&, const StateSet&, const StateSet&,
                                 const StateSet&, TraceVariant);
template bool traced_tower_holds(const MarkovChain<double>&, const StateSet&, const StateSet&,
                                 const StateSet&, TraceVariant);

template GreenCheckReport verify_green<Rational>(const GreenCheckOptions&);
template GreenCheckReport verify_green<double>(const GreenCheckOptions&);

}  // namespace lerw

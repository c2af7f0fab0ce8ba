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

#ifndef LERW_CHAIN_HPP_
#define LERW_CHAIN_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lerw/path.hpp"
#include "lerw/rng.hpp"
#include "lerw/scalar.hpp"

namespace lerw {

template <Scalar S>
struct Transition {
  StateId target;
  S prob;

  friend bool operator==(const Transition&, const Transition&) = default;
};

// Finite Markov chain with a row-stochastic kernel stored as sparse rows
// sorted by target. Immutable after construction.
template <Scalar S>
class MarkovChain {
 public:
  using Row = std::vector<Transition<S>>;

  // Validates the kernel: entries in [0,1], rows summing to one (exactly in
  // rational mode, within 1e-12 in double mode), and a Dirac row at the
  // absorbing state if one is given. Zero entries are dropped.
  MarkovChain(std::vector<std::string> names, std::vector<Row> rows,
              std::optional<StateId> absorbing = std::nullopt);

  std::size_t size() const { return rows_.size(); }
  static constexpr NumericMode mode() { return mode_of<S>(); }

  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(StateId s) const { return names_[s]; }
  // Throws ValidationError for unknown names.
  StateId index_of(std::string_view name) const;

  std::span<const Transition<S>> row(StateId s) const { return rows_[s]; }
  S prob(StateId from, StateId to) const;
  std::optional<StateId> absorbing() const { return absorbing_; }

  friend bool operator==(const MarkovChain&, const MarkovChain&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<Row> rows_;
  std::optional<StateId> absorbing_;
};

// Builds a chain from dense rows. Names default to "0", "1", ... when empty.
template <Scalar S>
MarkovChain<S> build_chain(std::vector<std::string> names,
                           const std::vector<std::vector<S>>& kernel_rows,
                           std::optional<StateId> absorbing = std::nullopt);

MarkovChain<double> to_double(const MarkovChain<Rational>& chain);

// V_A = {x : P_x(tau_A < infinity) = 1}, from the support graph alone: x is
// excluded iff some path avoiding A leads from x to a state that cannot
// reach A.
template <Scalar S>
StateSet reachability_closure(const MarkovChain<S>& chain, const StateSet& target);

inline constexpr std::uint64_t kDefaultStepCap = 100'000'000;

// Samples X|[0, tau_A] by inverse-CDF lookup on precomputed double rows.
class TrajectorySampler {
 public:
  template <Scalar S>
  TrajectorySampler(const MarkovChain<S>& chain, StateSet target,
                    std::uint64_t step_cap = kDefaultStepCap);

  // Throws UnreachableTargetError before sampling if start is not in V_A,
  // and StepCapExceeded if a trajectory runs past the cap.
  Path sample(StateId start, RngStream& rng) const;

  const StateSet& target() const { return target_; }

 private:
  std::vector<std::vector<double>> cumulative_;
  std::vector<std::vector<StateId>> targets_;
  std::vector<bool> in_target_;
  std::vector<bool> closure_;
  StateSet target_;
  std::uint64_t step_cap_;
};

template <Scalar S>
Path sample_until_entry(const MarkovChain<S>& chain, StateId start,
                        const StateSet& target, RngStream& rng,
                        std::uint64_t step_cap = kDefaultStepCap) {
  return TrajectorySampler(chain, target, step_cap).sample(start, rng);
}

}  // namespace lerw

#endif  // LERW_CHAIN_HPP_

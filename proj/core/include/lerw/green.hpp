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

#ifndef LERW_GREEN_HPP_
#define LERW_GREEN_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "lerw/chain.hpp"
#include "lerw/linalg.hpp"

namespace lerw {

// G_B(x, y): expected number of visits to y before leaving B, from x.
template <Scalar S>
class GreenTable {
 public:
  // Solves (I - P|_{BxB}) G = I. B must be a proper subset whose exit is
  // almost sure from each of its states (SingularSystemError otherwise). In
  // rational mode the strong Markov identity
  // G_B(x,y) = P_x(tau_y < tau_{V\B}) G_B(y,y) is checked for every pair.
  GreenTable(const MarkovChain<S>& chain, StateSet domain);

  const StateSet& domain() const { return domain_; }
  // Throws ValidationError when x or y is outside B.
  const S& operator()(StateId x, StateId y) const;

 private:
  std::size_t position(StateId s) const;

  StateSet domain_;
  DenseMatrix<S> values_;
};

template <Scalar S>
S green(const MarkovChain<S>& chain, const StateSet& domain, StateId x,
        StateId y) {
  return GreenTable<S>(chain, domain)(x, y);
}

// G_B(x, x) from the return probability of x before leaving B. Only
// excursions that can come back to x matter, so B need not have an almost
// sure exit elsewhere; SingularSystemError if x itself never leaves B.
template <Scalar S>
S green_diagonal(const MarkovChain<S>& chain, const StateSet& domain, StateId x);

// P_x(tau_y < tau_{V\B}) for x, y in B, via its own linear system.
template <Scalar S>
S hit_before_exit(const MarkovChain<S>& chain, const StateSet& domain,
                  StateId x, StateId y);

// F_B(y_0, ..., y_n) = G_B(y_0,y_0) G_{B\{y_0}}(y_1,y_1) ... Points must be
// distinct members of B.
template <Scalar S>
S f_product(const MarkovChain<S>& chain, const StateSet& domain,
            std::span<const StateId> points);

// Probability that the loop erasure of X|[0, tau_A] started at w_0 equals
// w: the product over n of G_{A^c \ {w_0..w_{n-1}}}(w_n, w_n) P(w_n, w_{n+1}).
template <Scalar S>
S le_path_probability(const MarkovChain<S>& chain, const StateSet& target,
                      const Path& w);

// Every self-avoiding path from x with positive kernel weight whose
// interior avoids A and whose last state is in A, in lexicographic order.
template <Scalar S>
std::vector<Path> admissible_le_paths(const MarkovChain<S>& chain, StateId x,
                                      const StateSet& target);

// E_x[tau_A] for every state (zero on A); requires almost sure entry.
template <Scalar S>
std::vector<S> expected_entry_time(const MarkovChain<S>& chain,
                                   const StateSet& target);

}  // namespace lerw

#endif  // LERW_GREEN_HPP_

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

#ifndef LERW_TRACED_HPP_
#define LERW_TRACED_HPP_

#include <string_view>

#include "lerw/chain.hpp"

namespace lerw {

enum class TraceVariant {
  // Next visit to V_sub at a time >= 1, stopped on entering A. May return
  // to the current state.
  kHittingSet,
  // Next visit to V_sub minus the current state, stopped on entering A.
  // Never self-transitions.
  kExcludeCurrent,
};

std::string_view to_string(TraceVariant variant);
TraceVariant parse_trace_variant(std::string_view text);

// The chain watched only on V_sub. States of the result are V_sub \ A in
// increasing order, followed by an absorbing state "Delta" standing for the
// whole of A when A is non-empty. Throws SingularSystemError when the walk
// can avoid V_sub and A forever with positive probability.
template <Scalar S>
MarkovChain<S> traced_kernel(const MarkovChain<S>& chain, const StateSet& v_sub,
                             const StateSet& target, TraceVariant variant);

}  // namespace lerw

#endif  // LERW_TRACED_HPP_

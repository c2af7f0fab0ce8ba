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

#ifndef LERW_EVENTS_HPP_
#define LERW_EVENTS_HPP_

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "lerw/path.hpp"

namespace lerw {

using PointMetric = std::function<double(StateId, StateId)>;
using IndexPair = std::pair<std::size_t, std::size_t>;

// Index pairs (s1, s2) with w_{s1} = w_{s2} whose excursion is not contained
// in the open rho-ball around w_{s1}. By default only the maximal loop per
// repeated state is reported (first visit to last visit); exhaustive lists
// every qualifying pair. Sorted by s1 then s2.
std::vector<IndexPair> detect_loops(const Path& w, double rho,
                                    const PointMetric& metric,
                                    bool exhaustive = false);

// Index pairs (s1, s2), s1 < s2, with d(w_{s1}, w_{s2}) >= rho and no visit
// to v in w_{s1..s2}. By default one witness per maximal v-free run (the
// farthest pair, earliest on ties); exhaustive lists every qualifying pair.
std::vector<IndexPair> detect_long_jumps(const Path& w, double rho,
                                         const StateSet& v,
                                         const PointMetric& metric,
                                         bool exhaustive = false);

}  // namespace lerw

#endif  // LERW_EVENTS_HPP_

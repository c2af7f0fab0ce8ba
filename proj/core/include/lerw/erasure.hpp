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

#ifndef LERW_ERASURE_HPP_
#define LERW_ERASURE_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "lerw/path.hpp"

namespace lerw {

// An erased path together with the (0-based) indices it keeps.
struct ErasureResult {
  Path path;
  std::vector<std::size_t> indices;
};

// Chronological loop erasure: n_0 = 0 and n_i = (last visit to w_{n_{i-1}})
// + 1 until w_{n_{i-1}} = w_eta. Linear time.
ErasureResult loop_erase(const Path& w);

// Erases only loops based at points of v_tilde; points outside v_tilde are
// stepped over one at a time.
ErasureResult partial_loop_erase(const Path& w, const StateSet& v_tilde);

// Throws ValidationError unless sets[0] is a subset of sets[1], and so on.
void validate_nested(std::span<const StateSet> sets);

// L_{V_m} o ... o L_{V_1}(w). The empty sequence is the identity.
Path refinement_erase(const Path& w, std::span<const StateSet> nested);

// Erase loops chronologically up to the unique visit of b kept by the LE,
// then in reverse order afterwards. Equal to loop_erase(w) when the LE of w
// misses b.
Path algorithm_one(const Path& w, StateId b);

// Same split as algorithm_one, but the tail after b is partially erased
// with v1 in reverse order. This is the path before the final LE.
Path algorithm_two_pre(const Path& w, StateId b, const StateSet& v1);

// loop_erase(algorithm_two_pre(w, b, v1)).
Path algorithm_two(const Path& w, StateId b, const StateSet& v1);

}  // namespace lerw

#endif  // LERW_ERASURE_HPP_

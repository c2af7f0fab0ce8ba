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

#include "lerw/erasure.hpp"

#include <algorithm>
#include <unordered_map>

#include "lerw/errors.hpp"

namespace lerw {
namespace {

// Index of the last occurrence of each state. Dense when state ids are
// small relative to the path, hashed otherwise.
class LastVisit {
 public:
  explicit LastVisit(const Path& w) {
    const StateId top = w.max_state();
    if (top <= 4 * w.size() + 1024) {
      dense_.assign(static_cast<std::size_t>(top) + 1, 0);
      for (std::size_t i = 0; i < w.size(); ++i) dense_[w[i]] = i;
    } else {
      sparse_.reserve(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) sparse_[w[i]] = i;
    }
  }

  std::size_t operator()(StateId s) const {
    return dense_.empty() ? sparse_.at(s) : dense_[s];
  }

 private:
  std::vector<std::size_t> dense_;
  std::unordered_map<StateId, std::size_t> sparse_;
};

ErasureResult finish(const Path& w, std::vector<std::size_t> indices) {
  std::vector<StateId> states;
  states.reserve(indices.size());
  for (std::size_t i : indices) states.push_back(w[i]);
  return {Path(std::move(states)), std::move(indices)};
}

}  // namespace

ErasureResult loop_erase(const Path& w) {
  const LastVisit last(w);
  const StateId end = w.back();
  std::vector<std::size_t> indices;
  std::size_t n = 0;
  while (true) {
    indices.push_back(n);
    if (w[n] == end) break;
    n = last(w[n]) + 1;
  }
  return finish(w, std::move(indices));
}

ErasureResult partial_loop_erase(const Path& w, const StateSet& v_tilde) {
  const LastVisit last(w);
  const std::size_t eta = w.steps();
  const StateId end = w.back();
  std::vector<std::size_t> indices;
  std::size_t n = 0;
  while (true) {
    indices.push_back(n);
    if (v_tilde.contains(w[n])) {
      if (w[n] == end) break;
      n = last(w[n]) + 1;
    } else {
      if (n == eta) break;
      ++n;
    }
  }
  return finish(w, std::move(indices));
}

void validate_nested(std::span<const StateSet> sets) {
  for (std::size_t j = 1; j < sets.size(); ++j) {
    if (!sets[j - 1].is_subset_of(sets[j])) {
      throw ValidationError("sequence is not nested at level " +
                            std::to_string(j + 1));
    }
  }
}

Path refinement_erase(const Path& w, std::span<const StateSet> nested) {
  validate_nested(nested);
  Path current = w;
  for (const auto& v : nested) current = partial_loop_erase(current, v).path;
  return current;
}

namespace {

// Shared skeleton of both algorithms. tail_erase is applied to the reversed
// tail after the kept visit of b, which the caller has checked exists.
template <typename TailErase>
Path split_at_b(const Path& w, StateId b, TailErase tail_erase) {
  const ErasureResult le = loop_erase(w);
  auto it = std::find(le.path.begin(), le.path.end(), b);
  const std::size_t j = static_cast<std::size_t>(it - le.path.begin());
  const std::size_t nj = le.indices[j];
  const Path head = slice(le.path, 0, j);
  const Path tail = reverse(tail_erase(reverse(slice(w, nj, w.steps()))));
  return concat(head, tail);
}

bool le_hits(const Path& w, StateId b) {
  const Path le = loop_erase(w).path;
  return std::find(le.begin(), le.end(), b) != le.end();
}

}  // namespace

Path algorithm_one(const Path& w, StateId b) {
  if (!le_hits(w, b)) return loop_erase(w).path;
  return split_at_b(w, b, [](const Path& p) { return loop_erase(p).path; });
}

Path algorithm_two_pre(const Path& w, StateId b, const StateSet& v1) {
  if (!le_hits(w, b)) return partial_loop_erase(w, v1).path;
  return split_at_b(
      w, b, [&](const Path& p) { return partial_loop_erase(p, v1).path; });
}

Path algorithm_two(const Path& w, StateId b, const StateSet& v1) {
  return loop_erase(algorithm_two_pre(w, b, v1)).path;
}

}  // namespace lerw

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

#include "lerw/path.hpp"

#include <algorithm>

#include "lerw/errors.hpp"

namespace lerw {

Path::Path(std::vector<StateId> states) : states_(std::move(states)) {
  if (states_.empty()) throw ValidationError("a path needs at least one state");
}

Path::Path(std::initializer_list<StateId> states)
    : Path(std::vector<StateId>(states)) {}

StateId Path::max_state() const {
  return *std::max_element(states_.begin(), states_.end());
}

StateSet::StateSet(std::vector<StateId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

StateSet::StateSet(std::initializer_list<StateId> ids)
    : StateSet(std::vector<StateId>(ids)) {}

StateSet StateSet::range(StateId n) {
  std::vector<StateId> ids(n);
  for (StateId i = 0; i < n; ++i) ids[i] = i;
  return StateSet(std::move(ids));
}

bool StateSet::contains(StateId s) const {
  return std::binary_search(ids_.begin(), ids_.end(), s);
}

bool StateSet::is_subset_of(const StateSet& other) const {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(),
                       ids_.end());
}

StateSet StateSet::without(StateId s) const {
  std::vector<StateId> ids;
  ids.reserve(ids_.size());
  for (StateId x : ids_) {
    if (x != s) ids.push_back(x);
  }
  return StateSet(std::move(ids));
}

StateSet StateSet::with(StateId s) const {
  std::vector<StateId> ids = ids_;
  ids.push_back(s);
  return StateSet(std::move(ids));
}

StateSet StateSet::set_union(const StateSet& other) const {
  std::vector<StateId> ids;
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                 std::back_inserter(ids));
  return StateSet(std::move(ids));
}

StateSet StateSet::set_difference(const StateSet& other) const {
  std::vector<StateId> ids;
  std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(),
                      other.ids_.end(), std::back_inserter(ids));
  return StateSet(std::move(ids));
}

std::vector<bool> StateSet::mask(std::size_t n) const {
  std::size_t size = n;
  if (!ids_.empty()) size = std::max<std::size_t>(size, ids_.back() + 1);
  std::vector<bool> m(size, false);
  for (StateId s : ids_) m[s] = true;
  return m;
}

bool is_self_avoiding(const Path& w) {
  std::vector<StateId> sorted(w.begin(), w.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

StateSet image(const Path& w) { return StateSet(w.vector()); }

Path restrict(const Path& w, std::span<const std::size_t> indices) {
  std::vector<StateId> out;
  out.reserve(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= w.size() || (k > 0 && indices[k] <= indices[k - 1])) {
      throw ValidationError("restriction indices must be increasing and in range");
    }
    out.push_back(w[indices[k]]);
  }
  return Path(std::move(out));
}

Path reverse(const Path& w) {
  return Path(std::vector<StateId>(w.vector().rbegin(), w.vector().rend()));
}

Path concat(const Path& w1, const Path& w2) {
  if (w1.back() != w2.front()) {
    throw ValidationError("concat: first path ends at " + std::to_string(w1.back()) +
                          " but second starts at " + std::to_string(w2.front()));
  }
  std::vector<StateId> out = w1.vector();
  out.insert(out.end(), w2.begin() + 1, w2.end());
  return Path(std::move(out));
}

Path slice(const Path& w, std::size_t s, std::size_t t) {
  if (s > t || t >= w.size()) throw ValidationError("slice out of range");
  return Path(std::vector<StateId>(w.begin() + s, w.begin() + t + 1));
}

std::string to_string(const Path& w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(w[i]);
  }
  return out + ")";
}

}  // namespace lerw

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

#ifndef LERW_PATH_HPP_
#define LERW_PATH_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace lerw {

using StateId = std::uint32_t;

// A non-empty finite sequence of states w = (w_0, ..., w_eta).
class Path {
 public:
  explicit Path(std::vector<StateId> states);
  Path(std::initializer_list<StateId> states);

  std::size_t size() const { return states_.size(); }
  // eta: the number of steps.
  std::size_t steps() const { return states_.size() - 1; }

  StateId front() const { return states_.front(); }
  StateId back() const { return states_.back(); }
  StateId operator[](std::size_t i) const { return states_[i]; }

  std::span<const StateId> states() const { return states_; }
  const std::vector<StateId>& vector() const { return states_; }

  auto begin() const { return states_.begin(); }
  auto end() const { return states_.end(); }

  // Largest state id on the path; sizes membership tables.
  StateId max_state() const;

  friend auto operator<=>(const Path&, const Path&) = default;
  friend bool operator==(const Path&, const Path&) = default;

 private:
  std::vector<StateId> states_;
};

// Sorted, duplicate-free set of state ids.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::vector<StateId> ids);
  StateSet(std::initializer_list<StateId> ids);

  static StateSet range(StateId n);  // {0, ..., n-1}

  bool contains(StateId s) const;
  bool empty() const { return ids_.empty(); }
  std::size_t size() const { return ids_.size(); }
  bool is_subset_of(const StateSet& other) const;

  StateSet without(StateId s) const;
  StateSet with(StateId s) const;
  StateSet set_union(const StateSet& other) const;
  StateSet set_difference(const StateSet& other) const;

  // Dense membership table of length max(n, max id + 1).
  std::vector<bool> mask(std::size_t n) const;

  const std::vector<StateId>& ids() const { return ids_; }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  friend auto operator<=>(const StateSet&, const StateSet&) = default;
  friend bool operator==(const StateSet&, const StateSet&) = default;

 private:
  std::vector<StateId> ids_;
};

bool is_self_avoiding(const Path& w);

// The set of distinct states visited by w.
StateSet image(const Path& w);

// w|_I for a strictly increasing index list I.
Path restrict(const Path& w, std::span<const std::size_t> indices);

// Reversal (w_eta, ..., w_0).
Path reverse(const Path& w);

// Gluing w1 (+) w2; requires w1.back() == w2.front(). The shared endpoint
// appears once, so |concat| = |w1| + |w2| - 1.
Path concat(const Path& w1, const Path& w2);

// Subpath w_s, ..., w_t (inclusive).
Path slice(const Path& w, std::size_t s, std::size_t t);

std::string to_string(const Path& w);

}  // namespace lerw

#endif  // LERW_PATH_HPP_

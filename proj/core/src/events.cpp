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

#include "lerw/events.hpp"

#include <algorithm>
#include <map>

namespace lerw {
namespace {

bool leaves_ball(const Path& w, std::size_t s1, std::size_t s2, double rho,
                 const PointMetric& metric) {
  for (std::size_t t = s1 + 1; t < s2; ++t) {
    if (metric(w[s1], w[t]) >= rho) return true;
  }
  return false;
}

}  // namespace

std::vector<IndexPair> detect_loops(const Path& w, double rho,
                                    const PointMetric& metric,
                                    bool exhaustive) {
  std::vector<IndexPair> out;
  if (exhaustive) {
    for (std::size_t s1 = 0; s1 < w.size(); ++s1) {
      for (std::size_t s2 = s1 + 1; s2 < w.size(); ++s2) {
        if (w[s1] == w[s2] && leaves_ball(w, s1, s2, rho, metric)) {
          out.emplace_back(s1, s2);
        }
      }
    }
    return out;
  }
  std::map<StateId, IndexPair> span;
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto [it, inserted] = span.try_emplace(w[i], i, i);
    if (!inserted) it->second.second = i;
  }
  for (const auto& [state, p] : span) {
    if (p.first < p.second && leaves_ball(w, p.first, p.second, rho, metric)) {
      out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IndexPair> detect_long_jumps(const Path& w, double rho,
                                         const StateSet& v,
                                         const PointMetric& metric,
                                         bool exhaustive) {
  std::vector<IndexPair> out;
  std::size_t i = 0;
  while (i < w.size()) {
    if (v.contains(w[i])) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end + 1 < w.size() && !v.contains(w[end + 1])) ++end;
    double best = -1;
    IndexPair best_pair{0, 0};
    for (std::size_t s1 = i; s1 <= end; ++s1) {
      for (std::size_t s2 = s1 + 1; s2 <= end; ++s2) {
        const double d = metric(w[s1], w[s2]);
        if (d < rho) continue;
        if (exhaustive) {
          out.emplace_back(s1, s2);
        } else if (d > best) {
          best = d;
          best_pair = {s1, s2};
        }
      }
    }
    if (!exhaustive && best >= 0) out.push_back(best_pair);
    i = end + 1;
  }
  return out;
}

}  // namespace lerw

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

#ifndef LERW_METRICS_HPP_
#define LERW_METRICS_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "lerw/events.hpp"
#include "lerw/path.hpp"

namespace lerw {

using Point2 = std::array<double, 2>;
using GroundMetric = std::function<double(const Point2&, const Point2&)>;

double euclidean(const Point2& a, const Point2& b);

// max(sup_a inf_b d, sup_b inf_a d). Throws ValidationError on empty input.
double hausdorff(std::span<const Point2> a, std::span<const Point2> b,
                 const GroundMetric& metric = euclidean);

// Same on vertex sets, with distances supplied per vertex pair.
double hausdorff(std::span<const StateId> a, std::span<const StateId> b,
                 const PointMetric& metric);

// Finite-support Prokhorov distance. dist[i][j] is the ground distance
// between atom i of p and atom j of q. Each candidate eps is decided by a
// max-flow over the bipartite graph of pairs with dist < eps (Strassen's
// condition) and eps is bisected on [0, 1] to the given tolerance. Returns
// exactly 0 when the laws can be matched along zero-distance pairs.
double prokhorov(std::span<const double> p, std::span<const double> q,
                 const std::vector<std::vector<double>>& dist,
                 double tolerance = 1e-6);

// Image sets (as vertex ids, which map to exact coordinates) with counts.
struct EmpiricalSetLaw {
  std::map<StateSet, std::uint64_t> atoms;
  std::uint64_t total = 0;

  void add(const StateSet& image, std::uint64_t count = 1);
};

double total_variation(const EmpiricalSetLaw& p, const EmpiricalSetLaw& q);

// Joint support size of two empirical laws.
std::size_t joint_support(const EmpiricalSetLaw& p, const EmpiricalSetLaw& q);

double prokhorov(const EmpiricalSetLaw& p, const EmpiricalSetLaw& q,
                 const PointMetric& metric, double tolerance = 1e-6);

}  // namespace lerw

#endif  // LERW_METRICS_HPP_

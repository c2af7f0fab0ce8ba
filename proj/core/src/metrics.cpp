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

#include "lerw/metrics.hpp"

#include <algorithm>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>
#include <cmath>
#include <limits>

#include "lerw/errors.hpp"

namespace lerw {
namespace {

// Directed sup-inf with early exit: once a point of `to` is closer than the
// running maximum, the current point cannot raise it. Scanning starts at
// the previous nearest index because consecutive points are usually close.
template <typename Dist>
double directed(std::size_t na, std::size_t nb, Dist dist) {
  double cmax = 0;
  std::size_t hint = 0;
  for (std::size_t i = 0; i < na; ++i) {
    double cmin = std::numeric_limits<double>::infinity();
    std::size_t best = hint;
    for (std::size_t step = 0; step < nb; ++step) {
      const std::size_t j = (hint + step) % nb;
      const double d = dist(i, j);
      if (d < cmin) {
        cmin = d;
        best = j;
      }
      if (cmin < cmax) break;
    }
    hint = best;
    cmax = std::max(cmax, cmin);
  }
  return cmax;
}

}  // namespace

double euclidean(const Point2& a, const Point2& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

double hausdorff(std::span<const Point2> a, std::span<const Point2> b,
                 const GroundMetric& metric) {
  if (a.empty() || b.empty()) throw ValidationError("hausdorff of an empty set");
  return std::max(
      directed(a.size(), b.size(), [&](auto i, auto j) { return metric(a[i], b[j]); }),
      directed(b.size(), a.size(), [&](auto i, auto j) { return metric(b[i], a[j]); }));
}

double hausdorff(std::span<const StateId> a, std::span<const StateId> b,
                 const PointMetric& metric) {
  if (a.empty() || b.empty()) throw ValidationError("hausdorff of an empty set");
  return std::max(
      directed(a.size(), b.size(), [&](auto i, auto j) { return metric(a[i], b[j]); }),
      directed(b.size(), a.size(), [&](auto i, auto j) { return metric(b[i], a[j]); }));
}

namespace {

using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
using FlowGraph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::directedS, boost::no_property,
    boost::property<boost::edge_capacity_t, std::int64_t,
                    boost::property<boost::edge_residual_capacity_t, std::int64_t,
                                    boost::property<boost::edge_reverse_t,
                                                    Traits::edge_descriptor>>>>;

constexpr double kScale = 1125899906842624.0;  // 2^50

std::int64_t max_flow(const std::vector<std::int64_t>& supply,
                      const std::vector<std::int64_t>& demand,
                      const std::vector<std::vector<double>>& dist,
                      bool transpose, double eps, bool zero_only) {
  const std::size_t n = supply.size(), m = demand.size();
  FlowGraph g(n + m + 2);
  auto cap = boost::get(boost::edge_capacity, g);
  auto rev = boost::get(boost::edge_reverse, g);
  auto add = [&](std::size_t u, std::size_t v, std::int64_t c) {
    auto e = boost::add_edge(u, v, g).first;
    auto r = boost::add_edge(v, u, g).first;
    cap[e] = c;
    cap[r] = 0;
    rev[e] = r;
    rev[r] = e;
  };
  const std::size_t source = n + m, sink = n + m + 1;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    add(source, i, supply[i]);
    total += supply[i];
  }
  for (std::size_t j = 0; j < m; ++j) add(n + j, sink, demand[j]);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = transpose ? dist[j][i] : dist[i][j];
      if (zero_only ? d == 0 : d < eps) add(i, n + j, total);
    }
  }
  return boost::push_relabel_max_flow(g, source, sink);
}

std::vector<std::int64_t> scaled(std::span<const double> p) {
  std::vector<std::int64_t> out;
  for (double v : p) out.push_back(std::llround(v * kScale));
  return out;
}

}  // namespace

double prokhorov(std::span<const double> p, std::span<const double> q,
                 const std::vector<std::vector<double>>& dist, double tolerance) {
  if (dist.size() != p.size()) throw ValidationError("distance matrix shape");
  for (const auto& row : dist) {
    if (row.size() != q.size()) throw ValidationError("distance matrix shape");
  }
  const auto sp = scaled(p), sq = scaled(q);
  // Rounding each atom moves mass by at most half a unit.
  const auto slack = static_cast<std::int64_t>(p.size() + q.size());
  auto feasible = [&](double eps, bool zero_only) {
    const auto need = static_cast<std::int64_t>(std::ceil((1.0 - eps) * kScale)) - slack;
    return max_flow(sp, sq, dist, false, eps, zero_only) >= need &&
           max_flow(sq, sp, dist, true, eps, zero_only) >= need;
  };
  if (feasible(0.0, true)) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid, false) ? hi : lo) = mid;
  }
  return hi;
}

void EmpiricalSetLaw::add(const StateSet& image, std::uint64_t count) {
  atoms[image] += count;
  total += count;
}

double total_variation(const EmpiricalSetLaw& p, const EmpiricalSetLaw& q) {
  if (p.total == 0 || q.total == 0) throw ValidationError("empty empirical law");
  const double np = static_cast<double>(p.total), nq = static_cast<double>(q.total);
  double sum = 0;
  for (const auto& [set, c] : p.atoms) {
    auto it = q.atoms.find(set);
    const double b = it == q.atoms.end() ? 0.0 : static_cast<double>(it->second) / nq;
    sum += std::abs(static_cast<double>(c) / np - b);
  }
  for (const auto& [set, c] : q.atoms) {
    if (!p.atoms.count(set)) sum += static_cast<double>(c) / nq;
  }
  return sum / 2;
}

std::size_t joint_support(const EmpiricalSetLaw& p, const EmpiricalSetLaw& q) {
  std::size_t count = p.atoms.size();
  for (const auto& [set, c] : q.atoms) count += p.atoms.count(set) ? 0 : 1;
  return count;
}

double prokhorov(const EmpiricalSetLaw& p, const EmpiricalSetLaw& q,
                 const PointMetric& metric, double tolerance) {
  std::vector<double> wp, wq;
  std::vector<const StateSet*> ap, aq;
  for (const auto& [set, c] : p.atoms) {
    wp.push_back(static_cast<double>(c) / static_cast<double>(p.total));
    ap.push_back(&set);
  }
  for (const auto& [set, c] : q.atoms) {
    wq.push_back(static_cast<double>(c) / static_cast<double>(q.total));
    aq.push_back(&set);
  }
  std::vector<std::vector<double>> dist(ap.size(), std::vector<double>(aq.size()));
  for (std::size_t i = 0; i < ap.size(); ++i) {
    for (std::size_t j = 0; j < aq.size(); ++j) {
      dist[i][j] = *ap[i] == *aq[j] ? 0.0 : hausdorff(ap[i]->ids(), aq[j]->ids(), metric);
    }
  }
  return prokhorov(wp, wq, dist, tolerance);
}

}  // namespace lerw

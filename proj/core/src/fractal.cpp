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

#include "lerw/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "lerw/errors.hpp"

namespace lerw {
namespace {

std::uint64_t key_of(std::int64_t x, std::int64_t y) {
  return (static_cast<std::uint64_t>(x) << 32) | static_cast<std::uint64_t>(y);
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

using Point = std::array<std::int64_t, 2>;

// Sorts vertices by (y, x) and assigns ids.
void index_vertices(FractalGraph& g, std::vector<Point> points) {
  std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
    return std::tie(a[1], a[0]) < std::tie(b[1], b[0]);
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  g.coords = std::move(points);
  g.lookup.reserve(g.coords.size());
  for (std::size_t i = 0; i < g.coords.size(); ++i) {
    g.lookup.emplace(key_of(g.coords[i][0], g.coords[i][1]), static_cast<StateId>(i));
  }
}

StateSet ids_of(const FractalGraph& g, const std::vector<Point>& points) {
  std::vector<StateId> ids;
  for (const auto& p : points) ids.push_back(*g.vertex_at(p[0], p[1]));
  return StateSet(std::move(ids));
}

void finish_edges(FractalGraph& g) {
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
}

}  // namespace

CarpetTemplate CarpetTemplate::standard() {
  CarpetTemplate t;
  t.k = 3;
  for (int j = 1; j <= 3; ++j) {
    for (int i = 1; i <= 3; ++i) {
      if (i != 2 || j != 2) t.cells.emplace_back(i, j);
    }
  }
  return t;
}

std::vector<std::string> validate_carpet_template(const CarpetTemplate& t) {
  std::vector<std::string> violations;
  const int k = t.k;
  if (k < 3) return {"Range"};
  std::set<std::pair<int, int>> cells;
  for (const auto& c : t.cells) {
    if (c.first < 1 || c.first > k || c.second < 1 || c.second > k) {
      return {"Range"};
    }
    cells.insert(c);
  }
  const int n = static_cast<int>(cells.size());
  if (n < 4 * k - 4 || n >= k * k) violations.push_back("Size");

  auto kept = [&](int i, int j) { return cells.count({i, j}) > 0; };
  bool symmetric = true;
  for (const auto& [i, j] : cells) {
    const int ri = k + 1 - i, rj = k + 1 - j;
    const std::pair<int, int> images[] = {{ri, j}, {i, rj}, {ri, rj}, {j, i},
                                          {rj, i}, {j, ri}, {rj, ri}};
    for (const auto& [a, b] : images) symmetric = symmetric && kept(a, b);
  }
  if (!symmetric) violations.push_back("Symmetry");

  // Closed cells touching at a corner are connected.
  if (!cells.empty()) {
    std::set<std::pair<int, int>> seen{*cells.begin()};
    std::deque<std::pair<int, int>> queue{*cells.begin()};
    while (!queue.empty()) {
      auto [i, j] = queue.front();
      queue.pop_front();
      for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          const std::pair<int, int> nb{i + di, j + dj};
          if (kept(nb.first, nb.second) && seen.insert(nb).second) queue.push_back(nb);
        }
      }
    }
    if (seen.size() != cells.size()) violations.push_back("Connected");
  }

  bool nondiagonal = true;
  for (int i = 1; i < k; ++i) {
    for (int j = 1; j < k; ++j) {
      const bool a = kept(i, j), b = kept(i + 1, j), c = kept(i, j + 1),
                 d = kept(i + 1, j + 1);
      const int count = a + b + c + d;
      if (count == 2 && ((a && d) || (b && c))) nondiagonal = false;
    }
  }
  if (!nondiagonal) violations.push_back("Nondiagonality");

  bool borders = true;
  for (int i = 1; i <= k; ++i) {
    borders = borders && kept(i, 1) && kept(i, k) && kept(1, i) && kept(k, i);
  }
  if (!borders) violations.push_back("Borders");
  return violations;
}

CarpetTemplate read_carpet_template(std::istream& in) {
  std::stringstream content;
  std::string line;
  while (std::getline(in, line)) content << line.substr(0, line.find('#')) << '\n';
  CarpetTemplate t;
  t.cells.clear();
  if (!(content >> t.k)) throw ValidationError("template file has no k");
  int i, j;
  while (content >> i >> j) t.cells.emplace_back(i, j);
  if (!content.eof()) throw ValidationError("malformed template cell list");
  return t;
}

void write_carpet_template(std::ostream& out, const CarpetTemplate& t) {
  out << t.k << '\n';
  for (const auto& [i, j] : t.cells) out << i << ' ' << j << '\n';
}

std::optional<StateId> FractalGraph::vertex_at(std::int64_t x, std::int64_t y) const {
  if (x < 0 || y < 0) return std::nullopt;
  auto it = lookup.find(key_of(x, y));
  if (it == lookup.end()) return std::nullopt;
  return it->second;
}

std::array<double, 2> FractalGraph::position(StateId v) const {
  const double a = static_cast<double>(coords[v][0]) / static_cast<double>(scale);
  const double b = static_cast<double>(coords[v][1]) / static_cast<double>(scale);
  if (kind == Kind::kCarpet) return {a, b};
  return {a + b / 2, b * std::sqrt(3.0) / 2};
}

double FractalGraph::distance(StateId u, StateId v) const {
  const auto p = position(u), q = position(v);
  return std::hypot(p[0] - q[0], p[1] - q[1]);
}

std::vector<StateId> FractalGraph::corners() const {
  if (kind == Kind::kGasket) {
    return {*vertex_at(0, 0), *vertex_at(scale, 0), *vertex_at(0, scale)};
  }
  return {*vertex_at(0, 0), *vertex_at(scale, 0), *vertex_at(0, scale),
          *vertex_at(scale, scale)};
}

std::vector<std::vector<StateId>> FractalGraph::adjacency() const {
  std::vector<std::vector<StateId>> adj(num_vertices());
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

FractalGraph gasket_graph(int m, std::size_t vertex_cap) {
  if (m < 0) throw ValidationError("level must be nonnegative");
  if (m > 30) throw GuardExceeded("gasket level too large");
  const double expected = (std::pow(3.0, m + 1) + 3) / 2;
  if (expected > static_cast<double>(vertex_cap)) {
    throw GuardExceeded("gasket level " + std::to_string(m) + " would have " +
                        std::to_string(static_cast<long long>(expected)) + " vertices");
  }
  FractalGraph g;
  g.kind = FractalGraph::Kind::kGasket;
  g.level = m;
  g.scale = ipow(2, m);
  // Cells by lower-left corner; cells at level j have side 2^{m-j}.
  std::vector<std::vector<Point>> levels{{Point{0, 0}}};
  for (int j = 1; j <= m; ++j) {
    const std::int64_t half = ipow(2, m - j);
    std::vector<Point> next;
    next.reserve(levels.back().size() * 3);
    for (const auto& c : levels.back()) {
      next.push_back({c[0], c[1]});
      next.push_back({c[0] + half, c[1]});
      next.push_back({c[0], c[1] + half});
    }
    levels.push_back(std::move(next));
  }
  auto corners_of = [&](const std::vector<Point>& cells, std::int64_t side) {
    std::vector<Point> pts;
    for (const auto& c : cells) {
      pts.push_back(c);
      pts.push_back({c[0] + side, c[1]});
      pts.push_back({c[0], c[1] + side});
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  };
  index_vertices(g, corners_of(levels[m], 1));
  for (const auto& c : levels[m]) {
    const StateId a = *g.vertex_at(c[0], c[1]);
    const StateId b = *g.vertex_at(c[0] + 1, c[1]);
    const StateId d = *g.vertex_at(c[0], c[1] + 1);
    g.edges.emplace_back(std::min(a, b), std::max(a, b));
    g.edges.emplace_back(std::min(a, d), std::max(a, d));
    g.edges.emplace_back(std::min(b, d), std::max(b, d));
  }
  finish_edges(g);
  for (int j = 0; j <= m; ++j) {
    g.nested.push_back(ids_of(g, corners_of(levels[j], ipow(2, m - j))));
  }
  return g;
}

FractalGraph carpet_graph(const CarpetTemplate& t, int m, std::size_t vertex_cap) {
  if (m < 0) throw ValidationError("level must be nonnegative");
  const auto violations = validate_carpet_template(t);
  if (!violations.empty()) {
    std::string msg = "invalid carpet template:";
    for (const auto& v : violations) msg += " " + v;
    throw ValidationError(msg);
  }
  const double side = std::pow(static_cast<double>(t.k), m);
  const double cells = std::pow(static_cast<double>(t.cells.size()), m);
  const double estimate = std::min(4 * cells, (side + 1) * (side + 1));
  if (side > 2e9 || estimate > static_cast<double>(vertex_cap)) {
    throw GuardExceeded("carpet level " + std::to_string(m) + " exceeds the vertex cap");
  }
  FractalGraph g;
  g.kind = FractalGraph::Kind::kCarpet;
  g.level = m;
  g.scale = ipow(t.k, m);
  std::vector<std::vector<Point>> levels{{Point{0, 0}}};
  for (int j = 1; j <= m; ++j) {
    const std::int64_t sub = ipow(t.k, m - j);
    std::vector<Point> next;
    next.reserve(levels.back().size() * t.cells.size());
    for (const auto& c : levels.back()) {
      for (const auto& [i, jj] : t.cells) {
        next.push_back({c[0] + (i - 1) * sub, c[1] + (jj - 1) * sub});
      }
    }
    levels.push_back(std::move(next));
  }
  auto corners_of = [](const std::vector<Point>& cells, std::int64_t s) {
    std::vector<Point> pts;
    pts.reserve(cells.size() * 4);
    for (const auto& c : cells) {
      pts.push_back(c);
      pts.push_back({c[0] + s, c[1]});
      pts.push_back({c[0], c[1] + s});
      pts.push_back({c[0] + s, c[1] + s});
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  };
  index_vertices(g, corners_of(levels[m], 1));
  for (StateId v = 0; v < g.num_vertices(); ++v) {
    const auto& p = g.coords[v];
    if (auto r = g.vertex_at(p[0] + 1, p[1])) g.edges.emplace_back(v, *r);
    if (auto u = g.vertex_at(p[0], p[1] + 1)) g.edges.emplace_back(v, *u);
  }
  finish_edges(g);
  for (int j = 0; j <= m; ++j) {
    g.nested.push_back(ids_of(g, corners_of(levels[j], ipow(t.k, m - j))));
  }
  return g;
}

template <Scalar S>
ElectricalNetwork<S> uniform_network(const FractalGraph& g) {
  typename ElectricalNetwork<S>::EdgeMap edges;
  for (const auto& e : g.edges) edges.emplace(e, S(1));
  return ElectricalNetwork<S>({}, edges, g.num_vertices());
}

template ElectricalNetwork<Rational> uniform_network(const FractalGraph&);
template ElectricalNetwork<double> uniform_network(const FractalGraph&);

void write_vertices(std::ostream& out, const FractalGraph& g) {
  for (StateId v = 0; v < g.num_vertices(); ++v) {
    out << v;
    for (int axis = 0; axis < 2; ++axis) {
      const std::int64_t num = g.coords[v][axis];
      const std::int64_t d = std::gcd(num, g.scale);
      out << ' ' << num / d << ' ' << g.scale / d;
    }
    out << '\n';
  }
}

void write_edges(std::ostream& out, const FractalGraph& g) {
  for (const auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
}

}  // namespace lerw

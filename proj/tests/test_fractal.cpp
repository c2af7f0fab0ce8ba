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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "lerw/errors.hpp"
#include "lerw/fractal.hpp"
#include "oracles.hpp"

namespace lerw {
namespace {

using Point = std::pair<std::int64_t, std::int64_t>;

// Brute force: kept cells of the level-m carpet, then their corners and sides.
void carpet_oracle(const CarpetTemplate& t, int m, std::set<Point>& vertices,
                   std::set<std::pair<Point, Point>>& edges) {
  std::vector<Point> cells{{0, 0}};
  for (int level = 0; level < m; ++level) {
    std::vector<Point> next;
    for (auto [x, y] : cells) {
      for (auto [i, j] : t.cells) next.push_back({x * t.k + i - 1, y * t.k + j - 1});
    }
    cells = std::move(next);
  }
  for (auto [x, y] : cells) {
    const Point p00{x, y}, p10{x + 1, y}, p01{x, y + 1}, p11{x + 1, y + 1};
    for (const auto& p : {p00, p10, p01, p11}) vertices.insert(p);
    for (const auto& e : {std::pair{p00, p10}, std::pair{p00, p01}, std::pair{p10, p11},
                          std::pair{p01, p11}}) {
      edges.insert(e);
    }
  }
}

TEST(CarpetTemplate, Validation) {
  EXPECT_TRUE(validate_carpet_template(CarpetTemplate::standard()).empty());

  CarpetTemplate corner = CarpetTemplate::standard();
  std::erase(corner.cells, std::pair{1, 1});
  const auto v = validate_carpet_template(corner);
  EXPECT_NE(std::find(v.begin(), v.end(), "Symmetry"), v.end());
  EXPECT_NE(std::find(v.begin(), v.end(), "Borders"), v.end());

  CarpetTemplate diagonal{4, {}};
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 4; ++j) {
      if (i == 1 || j == 1 || i == 4 || j == 4) diagonal.cells.push_back({i, j});
    }
  }
  diagonal.cells.push_back({2, 2});
  diagonal.cells.push_back({3, 3});
  const auto d = validate_carpet_template(diagonal);
  EXPECT_NE(std::find(d.begin(), d.end(), "Nondiagonality"), d.end());

  CarpetTemplate full{3, {}};
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) full.cells.push_back({i, j});
  }
  const auto f = validate_carpet_template(full);
  EXPECT_NE(std::find(f.begin(), f.end(), "Size"), f.end());
}

TEST(CarpetTemplate, RejectedByGraphBuilder) {
  CarpetTemplate corner = CarpetTemplate::standard();
  std::erase(corner.cells, std::pair{1, 1});
  EXPECT_THROW(carpet_graph(corner, 1), ValidationError);
}

TEST(CarpetTemplate, RoundTrip) {
  std::ostringstream out;
  write_carpet_template(out, CarpetTemplate::standard());
  std::istringstream in(out.str());
  const auto t = read_carpet_template(in);
  EXPECT_EQ(t.k, 3);
  const auto standard = CarpetTemplate::standard();
  EXPECT_EQ(std::set(t.cells.begin(), t.cells.end()),
            std::set(standard.cells.begin(), standard.cells.end()));
}

TEST(CarpetGraph, CountsMatchBruteForce) {
  const auto t = CarpetTemplate::standard();
  for (int m = 0; m <= 3; ++m) {
    std::set<Point> vertices;
    std::set<std::pair<Point, Point>> edges;
    carpet_oracle(t, m, vertices, edges);
    const auto g = carpet_graph(t, m);
    EXPECT_EQ(g.num_vertices(), vertices.size()) << "m=" << m;
    EXPECT_EQ(g.edges.size(), edges.size()) << "m=" << m;
    for (const auto& [a, b] : g.edges) {
      const Point pa{g.coords[a][0], g.coords[a][1]}, pb{g.coords[b][0], g.coords[b][1]};
      ASSERT_TRUE(edges.count({std::min(pa, pb), std::max(pa, pb)}));
    }
  }
  EXPECT_EQ(carpet_graph(t, 1).edges.size(), 24u);
}

TEST(GasketGraph, Counts) {
  for (int m = 0; m <= 6; ++m) {
    const auto g = gasket_graph(m);
    const std::size_t p = static_cast<std::size_t>(std::pow(3, m + 1));
    EXPECT_EQ(g.num_vertices(), (p + 3) / 2);
    EXPECT_EQ(g.edges.size(), p);
  }
}

TEST(GasketGraph, VertexCap) { EXPECT_THROW(gasket_graph(10, 1000), GuardExceeded); }

void expect_nested(const FractalGraph& g, const std::function<FractalGraph(int)>& make,
                   std::int64_t base) {
  ASSERT_EQ(g.nested.size(), static_cast<std::size_t>(g.level + 1));
  EXPECT_EQ(g.nested.back(), StateSet::range(static_cast<StateId>(g.num_vertices())));
  for (int j = 0; j <= g.level; ++j) {
    const auto coarse = make(j);
    ASSERT_EQ(g.nested[j].size(), coarse.num_vertices());
    std::int64_t factor = 1;
    for (int i = j; i < g.level; ++i) factor *= base;
    for (StateId v = 0; v < coarse.num_vertices(); ++v) {
      const auto id = g.vertex_at(coarse.coords[v][0] * factor, coarse.coords[v][1] * factor);
      ASSERT_TRUE(id);
      EXPECT_TRUE(g.nested[j].contains(*id));
    }
    if (j > 0) {
      EXPECT_TRUE(g.nested[j - 1].is_subset_of(g.nested[j]));
    }
  }
}

TEST(FractalGraph, Nesting) {
  const auto t = CarpetTemplate::standard();
  expect_nested(gasket_graph(4), [](int m) { return gasket_graph(m); }, 2);
  expect_nested(carpet_graph(t, 3), [&](int m) { return carpet_graph(t, m); }, 3);
}

TEST(FractalGraph, EdgeLengths) {
  for (const auto& g : {gasket_graph(4), carpet_graph(CarpetTemplate::standard(), 3)}) {
    for (const auto& [a, b] : g.edges) {
      ASSERT_NEAR(g.distance(a, b), 1.0 / static_cast<double>(g.scale), 1e-12);
    }
  }
}

std::set<std::pair<Point, Point>> edge_images(const FractalGraph& g,
                                              const std::function<Point(Point)>& map) {
  std::set<std::pair<Point, Point>> out;
  for (const auto& [a, b] : g.edges) {
    const Point pa = map({g.coords[a][0], g.coords[a][1]});
    const Point pb = map({g.coords[b][0], g.coords[b][1]});
    out.insert({std::min(pa, pb), std::max(pa, pb)});
  }
  return out;
}

TEST(FractalGraph, Symmetries) {
  const auto carpet = carpet_graph(CarpetTemplate::standard(), 3);
  const std::int64_t s = carpet.scale;
  const auto id = edge_images(carpet, [](Point p) { return p; });
  EXPECT_EQ(edge_images(carpet, [s](Point p) { return Point{s - p.first, p.second}; }), id);
  EXPECT_EQ(edge_images(carpet, [](Point p) { return Point{p.second, p.first}; }), id);
  EXPECT_EQ(edge_images(carpet, [s](Point p) { return Point{s - p.second, p.first}; }), id);

  // Affine coordinates: permuting q1, q2, q3.
  const auto gasket = gasket_graph(4);
  const std::int64_t t = gasket.scale;
  const auto gid = edge_images(gasket, [](Point p) { return p; });
  EXPECT_EQ(edge_images(gasket, [](Point p) { return Point{p.second, p.first}; }), gid);
  EXPECT_EQ(edge_images(gasket, [t](Point p) { return Point{t - p.first - p.second, p.second}; }),
            gid);
}

TEST(FractalGraph, CornersAndEmbedding) {
  const auto g = gasket_graph(2);
  const auto c = g.corners();
  ASSERT_EQ(c.size(), 3u);
  EXPECT_NEAR(g.distance(c[0], c[1]), 1.0, 1e-12);
  EXPECT_NEAR(g.distance(c[1], c[2]), 1.0, 1e-12);
  EXPECT_NEAR(g.distance(c[0], c[2]), 1.0, 1e-12);
  const auto k = carpet_graph(CarpetTemplate::standard(), 2);
  const auto kc = k.corners();
  ASSERT_EQ(kc.size(), 4u);
  EXPECT_NEAR(k.distance(kc[0], kc[3]), std::sqrt(2.0), 1e-12);
}

TEST(FractalGraph, Exports) {
  const auto g = gasket_graph(1);
  std::ostringstream v, e;
  write_vertices(v, g);
  write_edges(e, g);
  std::istringstream vin(v.str()), ein(e.str());
  std::string line;
  std::size_t lines = 0;
  while (std::getline(vin, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::int64_t id, nx, dx, ny, dy;
    ASSERT_TRUE(fields >> id >> nx >> dx >> ny >> dy);
    EXPECT_EQ(std::gcd(nx, dx), 1);
    EXPECT_EQ(nx * g.scale, g.coords[id][0] * dx);
    EXPECT_EQ(ny * g.scale, g.coords[id][1] * dy);
    ++lines;
  }
  EXPECT_EQ(lines, g.num_vertices());
  lines = 0;
  while (std::getline(ein, line)) {
    if (!line.empty() && line[0] != '#') ++lines;
  }
  EXPECT_EQ(lines, g.edges.size());
}

TEST(UniformNetwork, ResistanceOracles) {
  const auto carpet = carpet_graph(CarpetTemplate::standard(), 1);
  const auto cc = carpet.corners();
  EXPECT_EQ(effective_resistance(uniform_network<Rational>(carpet), cc[0], cc[3]),
            testing::frozen::kCarpetLevel1Corner);
  const Rational expected[] = {Rational(2, 3), Rational(10, 9), Rational(50, 27),
                               Rational(250, 81)};
  for (int m = 0; m <= 3; ++m) {
    const auto g = gasket_graph(m);
    const auto c = g.corners();
    EXPECT_EQ(effective_resistance(uniform_network<Rational>(g), c[0], c[1]), expected[m]);
  }
}

}  // namespace
}  // namespace lerw

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

#ifndef LERW_FRACTAL_HPP_
#define LERW_FRACTAL_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lerw/network.hpp"
#include "lerw/path.hpp"

namespace lerw {

// Kept cells (i, j), 1 <= i, j <= k, of the first carpet iteration; i is
// the column and j the row.
struct CarpetTemplate {
  int k = 3;
  std::vector<std::pair<int, int>> cells;

  static CarpetTemplate standard();  // k = 3, centre removed
};

// Violations are reported by name: "Size", "Symmetry", "Connected",
// "Nondiagonality", "Borders", plus "Range" for cells outside the grid.
std::vector<std::string> validate_carpet_template(const CarpetTemplate& t);

CarpetTemplate read_carpet_template(std::istream& in);
void write_carpet_template(std::ostream& out, const CarpetTemplate& t);

inline constexpr std::size_t kDefaultVertexCap = 5'000'000;

// Level-m pre-fractal graph. Vertex coordinates are integer pairs in units
// of 1/scale. For the carpet these are Cartesian; for the gasket they are
// affine coordinates with respect to q1 = (0,0), q2 = (1,0), q3 = (0,1),
// which keeps them dyadic.
struct FractalGraph {
  enum class Kind { kGasket, kCarpet };

  Kind kind;
  int level;
  std::int64_t scale;
  std::vector<std::array<std::int64_t, 2>> coords;
  std::vector<std::pair<StateId, StateId>> edges;  // first < second, sorted
  std::vector<StateSet> nested;                    // V_0, ..., V_m

  std::size_t num_vertices() const { return coords.size(); }
  std::optional<StateId> vertex_at(std::int64_t x, std::int64_t y) const;
  // Planar embedding: the unit square, or the unit equilateral triangle.
  std::array<double, 2> position(StateId v) const;
  double distance(StateId u, StateId v) const;
  // Corners of the unit square (0,0),(1,0),(0,1),(1,1), or q1, q2, q3.
  std::vector<StateId> corners() const;
  std::vector<std::vector<StateId>> adjacency() const;

  std::unordered_map<std::uint64_t, StateId> lookup;
};

FractalGraph gasket_graph(int m, std::size_t vertex_cap = kDefaultVertexCap);
FractalGraph carpet_graph(const CarpetTemplate& t, int m,
                          std::size_t vertex_cap = kDefaultVertexCap);

// Unit conductance on every edge: the induced walk is the simple random walk.
template <Scalar S>
ElectricalNetwork<S> uniform_network(const FractalGraph& g);

// "id num_x den_x num_y den_y" with reduced fractions.
void write_vertices(std::ostream& out, const FractalGraph& g);
// "id1 id2".
void write_edges(std::ostream& out, const FractalGraph& g);

}  // namespace lerw

#endif  // LERW_FRACTAL_HPP_

#pragma once

// Square grid anchored at a station with the tie-break that makes cells a
// true partition of the plane: each cell is the half-open box
// [x0, x0+phi) x [y0, y0+phi), so a cell owns its south edge (except the
// south-east corner), its west edge (except the north-west corner) and its
// south-west corner.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sinr/geometry.hpp"

namespace sinr {

struct Cell {
  std::int64_t col = 0;
  std::int64_t row = 0;

  bool operator==(const Cell& o) const { return col == o.col && row == o.row; }
  bool operator!=(const Cell& o) const { return !(*this == o); }
  auto operator<=>(const Cell& o) const = default;
};

struct Grid {
  Point origin;   // a grid vertex; in zone indexes this is the station
  Rat spacing;    // phi > 0

  Grid(Point o, Rat phi) : origin(std::move(o)), spacing(std::move(phi)) {
    if (sgn(spacing) <= 0) throw std::invalid_argument("grid spacing must be > 0");
  }

  Point vertex(std::int64_t col, std::int64_t row) const {
    return {origin.x + spacing * static_cast<long>(col), origin.y + spacing * static_cast<long>(row)};
  }

  /// South-west corner of a cell (owned by the cell).
  Point cell_corner(const Cell& c) const { return vertex(c.col, c.row); }
};

/// Exact floor((v - base)/spacing) as a checked 64-bit index.
inline std::int64_t grid_index(const Rat& v, const Rat& base, const Rat& spacing) {
  Int idx = rat_floor((v - base) / spacing);
  if (!idx.fits_slong_p()) throw std::overflow_error("grid index out of range");
  return static_cast<std::int64_t>(idx.get_si());
}

/// The unique cell owning p under the half-open tie-break.
inline Cell cell_of(const Grid& g, const Point& p) {
  return {grid_index(p.x, g.origin.x, g.spacing), grid_index(p.y, g.origin.y, g.spacing)};
}

/// The cell together with its eight neighbors.
inline std::array<Cell, 9> nine_cell(const Cell& c) {
  std::array<Cell, 9> out;
  std::size_t k = 0;
  for (std::int64_t dc = -1; dc <= 1; ++dc)
    for (std::int64_t dr = -1; dr <= 1; ++dr) out[k++] = Cell{c.col + dc, c.row + dr};
  return out;
}

/// One edge of the 9-cell perimeter. Half-open: the edge owns `a`, not `b`,
/// so the twelve edges partition the perimeter exactly.
struct BlockEdge {
  Point a, b;
  Cell exterior;  // the cell just outside the block across this edge
};

/// The twelve spacing-long edges of the 3x3 block around c, in clockwise
/// order starting at the block's north-west corner.
inline std::vector<BlockEdge> nine_cell_boundary_edges(const Grid& g, const Cell& c) {
  std::vector<BlockEdge> edges;
  edges.reserve(12);
  auto v = [&](std::int64_t dc, std::int64_t dr) { return g.vertex(c.col + dc, c.row + dr); };
  for (int k = -1; k <= 1; ++k)  // north side, west to east
    edges.push_back({v(k, 2), v(k + 1, 2), Cell{c.col + k, c.row + 2}});
  for (int k = 2; k >= 0; --k)  // east side, north to south
    edges.push_back({v(2, k), v(2, k - 1), Cell{c.col + 2, c.row + k - 1}});
  for (int k = 1; k >= -1; --k)  // south side, east to west
    edges.push_back({v(k + 1, -1), v(k, -1), Cell{c.col + k, c.row - 2}});
  for (int k = 0; k <= 2; ++k)  // west side, south to north
    edges.push_back({v(-1, k - 1), v(-1, k), Cell{c.col - 2, c.row + k - 1}});
  return edges;
}

}  // namespace sinr

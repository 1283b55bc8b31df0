#pragma once

// Grid classification of one reception zone: certified-inside cells,
// certified-outside cells, and an undecided ring along the boundary whose
// area is at most an eps-fraction of the zone.
//
// The ring is produced by a clockwise boundary walk. Each step looks at the
// 3x3 block around the current cell, finds where the boundary leaves the
// block (roots of the zone polynomial restricted to the block's perimeter
// lines), and hops to the cell past the exit point. Everything is decided
// in exact rational arithmetic:
//   * roots on grid lines come from Sturm counts, isolated by bisection;
//   * transversal crossings are told from tangential touches by the parity
//     of the root (sign flip of the restriction across it);
//   * the order in which the boundary meets candidate points is their
//     angular order around the station, which is exact because membership
//     along any ray from the station is monotone, so the boundary is a
//     radial graph;
//   * ties at grid vertices need no perturbation: the point's owner cell
//     under the half-open tie-break is the next cell.

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "sinr/bounds.hpp"
#include "sinr/grid.hpp"
#include "sinr/hearing.hpp"
#include "sinr/sturm.hpp"

namespace sinr {

enum class CellClass { plus, minus, maybe };

/// Pitch before decimal rounding: eps * delta^2 / (18 * Delta).
inline Rat grid_spacing_raw(const RadiusBounds& b, const Rat& eps) {
  if (!(sgn(eps) > 0 && eps < 1)) throw std::invalid_argument("eps must be in (0,1)");
  if (!(sgn(b.delta_lo) > 0 && b.delta_lo <= b.Delta_hi))
    throw std::invalid_argument("invalid radius bounds");
  return eps * b.delta_lo * b.delta_lo / (18 * b.Delta_hi);
}

/// Grid pitch, rounded down to a small decimal so cell arithmetic stays
/// cheap. Rounding down only shrinks the undecided ring.
inline Rat grid_spacing(const RadiusBounds& b, const Rat& eps) {
  return round_down_decimal(grid_spacing_raw(b, eps), 16);
}

/// The cell straight north of the station whose west edge carries the
/// boundary crossing: vertices below its south-west corner are in the zone,
/// vertices from its north-west corner upward are not.
inline Cell find_first_boundary_cell(const Network& net, std::size_t i, const Grid& g,
                                     const Rat& Delta_hi) {
  auto received_vertex = [&](std::int64_t k) { return is_received(net, i, g.vertex(0, k)); };
  Int hi_big = rat_ceil(Delta_hi / g.spacing) + 1;
  if (!hi_big.fits_slong_p()) throw std::overflow_error("grid too fine for the zone extent");
  std::int64_t hi = static_cast<std::int64_t>(hi_big.get_si());
  if (received_vertex(hi)) throw std::logic_error("outer radius bound fails to clear the zone");
  std::int64_t lo = 0;
  while (hi - lo > 1) {
    std::int64_t mid = lo + (hi - lo) / 2;
    (received_vertex(mid) ? lo : hi) = mid;
  }
  return {0, lo};
}

namespace brp_detail {

// A grid line in grid units: axis 0 is the vertical line x = origin.x + k*phi
// parameterized by the row coordinate; axis 1 is the horizontal line
// y = origin.y + k*phi parameterized by the column coordinate.
struct LineKey {
  int axis;
  std::int64_t k;
  auto operator<=>(const LineKey&) const = default;
};

class LineCache {
 public:
  LineCache(const Network& net, std::size_t station, const Grid& grid)
      : net_(net), station_(station), grid_(grid) {}

  const RootCounter& line(const LineKey& key) {
    auto it = lines_.find(key);
    if (it == lines_.end()) {
      LineParam lp = key.axis == 0
                         ? LineParam{grid_.vertex(key.k, 0), Point{Rat(0), grid_.spacing}}
                         : LineParam{grid_.vertex(0, key.k), Point{grid_.spacing, Rat(0)}};
      UniPoly q = hear_poly_on_line(net_, station_, lp);
      if (q.is_zero()) throw std::logic_error("zone restriction identically zero on a grid line");
      it = lines_.emplace(key, RootCounter(std::move(q))).first;
    }
    return it->second;
  }

  Point point_on(const LineKey& key, const Rat& t) const {
    return key.axis == 0 ? Point{grid_.vertex(key.k, 0).x, grid_.origin.y + grid_.spacing * t}
                         : Point{grid_.origin.x + grid_.spacing * t, grid_.vertex(0, key.k).y};
  }

  const Grid& grid() const { return grid_; }

 private:
  const Network& net_;
  std::size_t station_;
  Grid grid_;
  std::map<LineKey, RootCounter> lines_;
};

// One isolated boundary point on a grid line.
struct Mark {
  LineKey line;
  RootBracket br;
};

inline bool same_root(const RootCounter& rc, const RootBracket& a, const RootBracket& b) {
  if (a.exact && b.exact) return a.lo == b.lo;
  if (a.exact) return b.lo <= a.lo && a.lo <= b.hi;
  if (b.exact) return a.lo <= b.lo && b.lo <= a.hi;
  Rat lo = a.lo > b.lo ? a.lo : b.lo;
  Rat hi = a.hi < b.hi ? a.hi : b.hi;
  if (lo > hi) return false;
  if (lo == hi) return rc.is_root(lo);
  return rc.count(lo, hi, true, true) >= 1;
}

// Direction cone of a mark as seen from the station. For a bracket on a line
// through the station both ends give the same direction; the cone is exact
// even though the point is not.
struct Cone {
  Point a, b;  // ccw order, arc < pi
  bool single;
};

inline Cone cone_of(const LineCache& cache, const Point& station, const Mark& m) {
  Point pa = cache.point_on(m.line, m.br.lo) - station;
  if (m.br.exact) return {pa, pa, true};
  Point pb = cache.point_on(m.line, m.br.hi) - station;
  int c = sgn(cross(pa, pb));
  if (c == 0) {
    if (sgn(dot(pa, pb)) <= 0) throw std::logic_error("boundary bracket straddles the station");
    return {pa, pa, true};
  }
  if (c < 0) std::swap(pa, pb);
  return {pa, pb, false};
}

inline bool cone_contains(const Cone& c, const Point& d) {
  if (c.single) return same_direction(c.a, d);
  return sgn(cross(c.a, d)) >= 0 && sgn(cross(d, c.b)) >= 0 && sgn(dot(c.a, d)) > 0;
}

inline bool cones_disjoint(const Cone& x, const Cone& y) {
  if (x.single && y.single) return !same_direction(x.a, y.a);
  return !(cone_contains(x, y.a) || cone_contains(x, y.b) || cone_contains(y, x.a) ||
           cone_contains(y, x.b));
}

inline void refine_once(const RootCounter& rc, RootBracket& br) {
  if (br.exact) return;
  Rat mid = br.mid();
  if (rc.is_root(mid)) {
    br.lo = br.hi = mid;
    br.exact = true;
    return;
  }
  if (rc.count(br.lo, mid, false, false) == 1)
    br.hi = mid;
  else
    br.lo = mid;
}

// Shrink a one-root bracket until it is exact or has no grid vertex
// (integer parameter) strictly inside, so floor(lo) names the owner cell.
inline void settle_on_grid(const RootCounter& rc, RootBracket& br) {
  while (!br.exact) {
    Rat v(rat_ceil(br.lo));
    if (v == br.lo) v += 1;
    if (!(v < br.hi)) return;  // open interval free of integers
    if (rc.is_root(v)) {
      br.lo = br.hi = v;
      br.exact = true;
      return;
    }
    if (rc.count(br.lo, v, false, false) == 1)
      br.hi = v;
    else
      br.lo = v;
  }
}

struct Candidate {
  Mark mark;
  bool odd = false;    // membership flips across the point along the line
  Cell step_to;        // next cell if this is the exit
  bool exits = false;  // leaves the block here
  Cone cone;           // filled by the angular separation pass
};

// The clockwise boundary walk around one zone.
class Tracer {
 public:
  Tracer(const Network& net, std::size_t station, const Grid& grid, const Rat& Delta_hi)
      : cache_(net, station, grid), station_pos_(net.station(station).pos) {
    Rat cap = 2 * rat(355, 113) * Delta_hi / grid.spacing;
    step_cap_ = static_cast<long>(rat_ceil(cap).get_si()) + 16;
  }

  std::vector<Cell> run(const Cell& first) {
    std::vector<Cell> walked{first};
    Mark entry = initial_entry(first);
    initial_ = entry;
    Cell cur = first;

    for (long step = 0; step < step_cap_; ++step) {
      auto cands = perimeter_candidates(cur, entry);
      if (cands.empty()) throw std::logic_error("boundary walk found no exit from a block");

      // wrap-up check 1: the walk has come back to its starting crossing
      for (const auto& c : cands)
        if (c.mark.line == initial_.line &&
            same_root(cache_.line(initial_.line), c.mark.br, initial_.br))
          return walked;

      separate(cands, entry);
      const Candidate* exit = pick_exit(cands, entry);
      if (!exit) throw std::logic_error("boundary walk found no clockwise exit");

      // wrap-up check 2: the start direction falls strictly inside this
      // step's clockwise arc, so the loop has closed past it
      if (cw_strictly_between(rep_dir(entry), rep_dir(initial_), exit->cone.a)) return walked;

      walked.push_back(exit->step_to);
      entry = exit->mark;
      cur = exit->step_to;
    }
    throw std::logic_error("boundary walk exceeded its step budget");
  }

 private:
  Mark initial_entry(const Cell& first) {
    // the crossing on the west edge of the first cell: column line 0,
    // rows [first.row, first.row + 1]
    LineKey key{0, 0};
    const RootCounter& rc = cache_.line(key);
    Rat lo(static_cast<long>(first.row)), hi(static_cast<long>(first.row) + 1);
    auto roots = isolate_roots(rc, lo, hi);
    if (roots.empty()) throw std::logic_error("no boundary crossing on the first west edge");
    for (auto& br : roots) {
      settle_on_grid(rc, br);
      if (br.exact || rc.poly().sign_at(br.lo) * rc.poly().sign_at(br.hi) < 0)
        return Mark{key, br};
    }
    return Mark{key, roots.front()};
  }

  // All boundary points on the four perimeter sides of the 3x3 block around
  // cur. Each side owns its clockwise-first corner, so corner points are
  // enumerated exactly once.
  std::vector<Candidate> perimeter_candidates(const Cell& cur, const Mark& entry) {
    std::vector<Candidate> out;
    const std::int64_t c = cur.col, r = cur.row;

    struct Side {
      LineKey line;
      std::int64_t lo, hi;   // parameter range, length 3
      bool include_lo;       // half-open orientation
      bool interior_owner;   // points on this side belong to a block cell
      std::int64_t ext;      // row (axis 1) or col (axis 0) of the exterior cell
    };
    const Side sides[4] = {
        {{1, r + 2}, c - 1, c + 2, true, false, r + 2},   // north, owner above
        {{0, c + 2}, r - 1, r + 2, false, false, c + 2},  // east, owner east
        {{1, r - 1}, c - 1, c + 2, false, true, r - 2},   // south, owner above (in block)
        {{0, c - 1}, r - 1, r + 2, true, true, c - 2},    // west, owner east (in block)
    };

    for (const Side& sd : sides) {
      const RootCounter& rc = cache_.line(sd.line);
      for (RootBracket br : isolate_roots(rc, Rat(static_cast<long>(sd.lo)),
                                          Rat(static_cast<long>(sd.hi)))) {
        if (br.exact) {
          if (sd.include_lo && br.lo == static_cast<long>(sd.hi)) continue;
          if (!sd.include_lo && br.lo == static_cast<long>(sd.lo)) continue;
        }
        settle_on_grid(rc, br);

        Candidate cand;
        cand.mark = Mark{sd.line, br};
        if (br.exact) {
          cand.odd = rc.poly().multiplicity(br.lo) % 2 == 1;
          Point p = cache_.point_on(sd.line, br.lo);
          cand.step_to = cell_of(cache_.grid(), p);
          bool owner_in_block = std::abs(cand.step_to.col - c) <= 1 &&
                                std::abs(cand.step_to.row - r) <= 1;
          cand.exits = cand.odd || !owner_in_block;
        } else {
          cand.odd = rc.poly().sign_at(br.lo) * rc.poly().sign_at(br.hi) < 0;
          std::int64_t along = static_cast<std::int64_t>(rat_floor(br.lo).get_si());
          if (sd.interior_owner) {
            // touch point sits inside the block; only a transversal crossing
            // leaves, into the exterior neighbor across the side
            cand.exits = cand.odd;
            cand.step_to = sd.line.axis == 1 ? Cell{along, sd.ext} : Cell{sd.ext, along};
          } else {
            // the side itself lies outside the block's point set
            cand.exits = true;
            cand.step_to = sd.line.axis == 1 ? Cell{along, sd.ext} : Cell{sd.ext, along};
          }
        }
        // skip non-exit touches: the curve stays inside the block there
        if (!cand.exits) continue;
        // the entry point is interior to the block, never on its perimeter;
        // still, guard against re-picking it when it sits on a shared line
        if (cand.mark.line == entry.line &&
            same_root(cache_.line(entry.line), cand.mark.br, entry.br))
          continue;
        out.push_back(std::move(cand));
      }
    }
    return out;
  }

  // Refine brackets until every direction cone (candidates, entry, initial
  // mark) is pairwise disjoint, making angular comparisons exact.
  void separate(std::vector<Candidate>& cands, Mark& entry) {
    auto cone_of_mark = [&](const Mark& m) { return cone_of(cache_, station_pos_, m); };
    for (int round = 0; round < 512; ++round) {
      for (auto& cand : cands) cand.cone = cone_of_mark(cand.mark);
      Cone entry_cone = cone_of_mark(entry);
      Cone init_cone = cone_of_mark(initial_);

      bool clash = false;
      auto refine_mark = [&](Mark& m) { refine_once(cache_.line(m.line), m.br); };

      for (std::size_t x = 0; x < cands.size() && !clash; ++x) {
        for (std::size_t y = x + 1; y < cands.size() && !clash; ++y)
          if (!cones_disjoint(cands[x].cone, cands[y].cone)) {
            refine_mark(cands[x].mark);
            refine_mark(cands[y].mark);
            clash = true;
          }
        if (clash) break;
        if (!cones_disjoint(cands[x].cone, entry_cone)) {
          refine_mark(cands[x].mark);
          refine_mark(entry);
          clash = true;
        } else if (!cones_disjoint(cands[x].cone, init_cone)) {
          refine_mark(cands[x].mark);
          refine_mark(initial_);
          clash = true;
        }
      }
      if (!clash && !cones_disjoint(entry_cone, init_cone)) {
        // legitimate only on the very first step, when they are one mark
        if (!(entry.line == initial_.line &&
              same_root(cache_.line(entry.line), entry.br, initial_.br))) {
          refine_mark(entry);
          refine_mark(initial_);
          clash = true;
        }
      }
      if (!clash) return;
    }
    throw std::logic_error("angular separation did not converge");
  }

  Point rep_dir(const Mark& m) { return cone_of(cache_, station_pos_, m).a; }

  // First candidate clockwise after the entry direction.
  const Candidate* pick_exit(const std::vector<Candidate>& cands, const Mark& entry) {
    Point from = rep_dir(entry);
    const Candidate* best = nullptr;
    for (const auto& cand : cands) {
      if (!best) {
        best = &cand;
        continue;
      }
      if (cw_strictly_between(from, cand.cone.a, best->cone.a)) best = &cand;
    }
    return best;
  }

  LineCache cache_;
  Point station_pos_;
  Mark initial_;
  long step_cap_ = 0;
};

}  // namespace brp_detail

/// Clockwise cell walk along the zone boundary, starting from the first
/// boundary cell. The undecided ring is the 9-cell closure of this walk.
inline std::vector<Cell> boundary_walk(const Network& net, std::size_t i, const Grid& grid,
                                       const Cell& first, const Rat& Delta_hi) {
  return brp_detail::Tracer(net, i, grid, Delta_hi).run(first);
}

/// Sorted undecided rows per column: the 9-cell closure of the walk.
inline std::map<std::int64_t, std::vector<std::int64_t>> classify_columns(
    const std::vector<Cell>& walk) {
  if (walk.empty()) throw std::invalid_argument("classify_columns needs a non-empty walk");
  std::set<Cell> ring;
  for (const Cell& c : walk)
    for (const Cell& n : nine_cell(c)) ring.insert(n);
  std::map<std::int64_t, std::vector<std::int64_t>> columns;
  for (const Cell& c : ring) columns[c.col].push_back(c.row);
  return columns;  // set iteration gives sorted rows per column
}

/// Approximate membership structure for one station's zone.
struct ZoneIndex {
  std::size_t station = 0;
  bool degenerate = false;
  Rat eps;
  std::optional<Grid> grid;                               // absent when degenerate
  std::optional<RadiusBounds> bounds;                     // refined; absent when degenerate
  std::map<std::int64_t, std::vector<std::int64_t>> columns;  // sorted undecided rows
  std::size_t maybe_count = 0;

  CellClass classify(const Cell& c) const {
    auto it = columns.find(c.col);
    if (it == columns.end()) return CellClass::minus;
    const auto& rows = it->second;
    auto pos = std::lower_bound(rows.begin(), rows.end(), c.row);
    if (pos != rows.end() && *pos == c.row) return CellClass::maybe;
    // inside iff undecided rows exist both below and above
    if (pos != rows.begin() && pos != rows.end()) return CellClass::plus;
    return CellClass::minus;
  }

  /// Point classification; total over the plane.
  CellClass classify_point(const Point& p) const {
    if (degenerate) return CellClass::minus;
    Rat dc = (p.x - grid->origin.x) / grid->spacing;
    Rat dr = (p.y - grid->origin.y) / grid->spacing;
    Int col = rat_floor(dc), row = rat_floor(dr);
    if (!col.fits_slong_p() || !row.fits_slong_p()) return CellClass::minus;
    return classify(Cell{static_cast<std::int64_t>(col.get_si()),
                         static_cast<std::int64_t>(row.get_si())});
  }
};

/// Builds the zone structure for station i. Degenerate zones (another station
/// at the same point) get a flagged, empty index.
inline ZoneIndex build_zone_index(const Network& net, std::size_t i, const Rat& eps,
                                  const Rat& ray_tol = rat(1, 1000)) {
  if (!(sgn(eps) > 0 && eps < 1)) throw std::invalid_argument("eps must be in (0,1)");
  if (!net.is_uniform()) throw std::invalid_argument("index requires uniform powers");
  if (net.beta() <= 1) throw std::domain_error("index requires beta > 1");
  if (net.is_trivial()) throw std::domain_error("trivial network has unbounded zones");

  ZoneIndex out;
  out.station = i;
  out.eps = eps;
  if (sgn(net.min_gap_sq(i)) == 0) {
    out.degenerate = true;
    return out;
  }

  // Ray-search refinement and the closed-form bounds are both sound, so the
  // grid is pitched on their intersection; whichever is tighter wins.
  RadiusBounds rb = refined_bounds(net, i, ray_tol);
  RadiusBounds eb = explicit_bounds(net, i);
  if (eb.delta_lo > rb.delta_lo) rb.delta_lo = eb.delta_lo;
  if (eb.Delta_hi < rb.Delta_hi) rb.Delta_hi = eb.Delta_hi;
  Rat phi = grid_spacing(rb, eps);
  Grid grid(net.station(i).pos, phi);
  Cell first = find_first_boundary_cell(net, i, grid, rb.Delta_hi);
  std::vector<Cell> walk = boundary_walk(net, i, grid, first, rb.Delta_hi);

  out.grid = grid;
  out.bounds = rb;
  out.columns = classify_columns(walk);
  for (const auto& [col, rows] : out.columns) out.maybe_count += rows.size();
  return out;
}

}  // namespace sinr

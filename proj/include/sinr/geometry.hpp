#pragma once

#include <stdexcept>

#include "sinr/rational.hpp"

namespace sinr {

struct Point {
  Rat x, y;

  bool operator==(const Point& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Point& o) const { return !(*this == o); }

  Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
  Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
  Point operator*(const Rat& s) const { return {x * s, y * s}; }
};

inline Rat dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline Rat cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }

/// Perpendicular of the same length, counter-clockwise quarter turn.
inline Point perp_ccw(const Point& v) { return {-v.y, v.x}; }

inline Rat distance_sq(const Point& p, const Point& q) {
  Rat dx = q.x - p.x;
  Rat dy = q.y - p.y;
  return dx * dx + dy * dy;
}

// --- exact angular order of direction vectors -------------------------------
//
// Directions are nonzero vectors compared by angle only. The clockwise walk
// in the zone indexer leans on these predicates instead of any floating
// angle computation.

/// Half-plane rank used to totalize angular comparison: 0 for angles in
/// [0, pi) starting at the positive x axis (counter-clockwise), 1 otherwise.
inline int angle_half(const Point& d) {
  if (sgn(d.y) > 0) return 0;
  if (sgn(d.y) < 0) return 1;
  return sgn(d.x) > 0 ? 0 : 1;
}

/// True if directions a and b point the same way (angle equality).
inline bool same_direction(const Point& a, const Point& b) {
  return sgn(cross(a, b)) == 0 && sgn(dot(a, b)) > 0;
}

/// Strict counter-clockwise angular order starting at the positive x axis.
inline bool angle_less_ccw(const Point& a, const Point& b) {
  int ha = angle_half(a), hb = angle_half(b);
  if (ha != hb) return ha < hb;
  return sgn(cross(a, b)) > 0;
}

/// True if direction `d` lies strictly inside the clockwise arc that starts
/// at `from` and ends at `to` (arc endpoints excluded). `from` and `to` may
/// denote a full turn when equal; then every other direction qualifies.
inline bool cw_strictly_between(const Point& from, const Point& d, const Point& to) {
  if (same_direction(from, d) || same_direction(to, d)) return false;
  if (same_direction(from, to)) return true;
  // Clockwise arc from->to equals counter-clockwise arc to->from.
  // d inside ccw arc (to, from): standard two-case test.
  Rat c_tf = cross(to, from);
  Rat c_td = cross(to, d);
  Rat c_df = cross(d, from);
  if (sgn(c_tf) > 0) return sgn(c_td) > 0 && sgn(c_df) > 0;
  return sgn(c_td) > 0 || sgn(c_df) > 0;
}

}  // namespace sinr

#pragma once

// Segment test: how many distinct zone-boundary points lie on a segment.
// For uniform networks with beta >= 1 the zone is convex, so the answer is
// 0, 1 or 2; anything larger signals a broken precondition.

#include <stdexcept>

#include "sinr/hearing.hpp"
#include "sinr/sturm.hpp"

namespace sinr {

struct Segment {
  Point a, b;
  bool include_a = true;
  bool include_b = true;
};

inline int segment_test(const Network& net, std::size_t i, const Segment& seg) {
  if (seg.a == seg.b) throw std::invalid_argument("segment test: degenerate segment");
  LineParam line{seg.a, seg.b - seg.a};
  UniPoly q = hear_poly_on_line(net, i, line);
  if (q.is_zero()) throw std::logic_error("segment test: identically zero restriction");
  int count = RootCounter(std::move(q)).count(Rat(0), Rat(1), seg.include_a, seg.include_b);
  if (count > 2)
    throw std::logic_error("segment test: more than two boundary points on a segment");
  return count;
}

enum class TangencyKind { crossing, tangency };

/// Distinguishes a transversal boundary crossing from a tangential touch when
/// the segment test reported exactly one point. Three extra segments close a
/// virtual rectangle on each side of the segment (height = side_scale times
/// the segment length); the boundary escapes through the closing path on both
/// sides iff it actually crosses.
inline TangencyKind resolve_tangency(const Network& net, std::size_t i, const Segment& seg,
                                     const Rat& side_scale = Rat(1)) {
  if (sgn(side_scale) <= 0) throw std::invalid_argument("resolve_tangency: side_scale must be > 0");
  if (segment_test(net, i, seg) != 1)
    throw std::invalid_argument("resolve_tangency: segment test must report exactly one point");

  auto side_hit = [&](const Point& w) {
    Point a2 = seg.a + w, b2 = seg.b + w;
    // The closing path excludes the original segment's endpoints so the
    // reported point itself cannot register as an escape.
    Segment rise{seg.a, a2, false, true};
    Segment far_side{a2, b2, true, true};
    Segment fall{b2, seg.b, true, false};
    return segment_test(net, i, rise) > 0 || segment_test(net, i, far_side) > 0 ||
           segment_test(net, i, fall) > 0;
  };

  Point w = perp_ccw(seg.b - seg.a) * side_scale;
  bool left = side_hit(w);
  bool right = side_hit({-w.x, -w.y});
  return (left && right) ? TangencyKind::crossing : TangencyKind::tangency;
}

}  // namespace sinr

#pragma once

// Inscribed/circumscribed radius bounds for reception zones of uniform
// networks with beta > 1. Square roots are handled as directed rational
// enclosures, always rounded in the direction that keeps the bound sound:
// inscribed bounds down, circumscribed bounds up.

#include <stdexcept>
#include <utility>
#include <vector>

#include "sinr/network.hpp"
#include "sinr/rational.hpp"

namespace sinr {

/// Thrown when a zone degenerates to the station point itself (another
/// station shares its location), so no radius bounds exist.
struct DegenerateZoneError : std::domain_error {
  using std::domain_error::domain_error;
};

struct RadiusBounds {
  enum class Source { explicit_formula, refined };

  Rat delta_lo;        // inscribed radius is at least this
  Rat Delta_hi;        // circumscribed radius is at most this
  RatInterval kappa;   // min distance to any other station
  Rat kappa_sq;        // the same distance squared, exact
  Source source = Source::explicit_formula;
};

namespace detail {

/// sqrt enclosure tightened until the lower end clears `floor_above`
/// (used where a denominator like sqrt(x) - 1 must stay positive).
inline RatInterval sqrt_above(const Rat& x, const Rat& floor_above, unsigned bits = 48) {
  RatInterval s = sqrt_enclosure(x, bits);
  while (s.lo <= floor_above) {
    if (s.is_point()) throw std::domain_error("sqrt enclosure pinned at an excluded value");
    bits += 16;
    if (bits > 4096) throw std::runtime_error("sqrt enclosure failed to separate");
    s = sqrt_enclosure(x, bits);
  }
  return s;
}

inline void require_uniform_beta(const Network& net) {
  if (!net.is_uniform()) throw std::invalid_argument("radius bounds need uniform powers");
  if (net.beta() <= 1) throw std::domain_error("fatness bounds undefined for beta <= 1");
}

}  // namespace detail

/// Upper enclosure of the fatness constant (sqrt(beta)+1)/(sqrt(beta)-1).
inline RatInterval fatness_bound(const Rat& beta, unsigned bits = 48) {
  if (beta <= 1) throw std::domain_error("fatness bound undefined for beta <= 1");
  RatInterval s = detail::sqrt_above(beta, Rat(1), bits);
  return {(s.lo + 1) / (s.hi - 1), (s.hi + 1) / (s.lo - 1)};
}

/// Closed-form bounds: with kappa the minimum distance to another station,
///   delta >= kappa / (sqrt(beta (n-1 + N kappa^2)) + 1)
///   Delta <= kappa / (sqrt(beta (1    + N kappa^2)) - 1).
inline RadiusBounds explicit_bounds(const Network& net, std::size_t i, unsigned bits = 48) {
  detail::require_uniform_beta(net);
  Rat g = net.min_gap_sq(i);
  if (sgn(g) == 0) throw DegenerateZoneError("zone degenerates to the station point");

  RatInterval kappa = sqrt_enclosure(g, bits);
  long n_minus_1 = static_cast<long>(net.size()) - 1;
  RatInterval s_in = sqrt_enclosure(net.beta() * (n_minus_1 + net.noise() * g), bits);
  RatInterval s_out = detail::sqrt_above(net.beta() * (1 + net.noise() * g), Rat(1), bits);

  RadiusBounds out;
  out.kappa = kappa;
  out.kappa_sq = g;
  out.delta_lo = kappa.lo / (s_in.hi + 1);
  out.Delta_hi = kappa.hi / (s_out.lo - 1);
  out.source = RadiusBounds::Source::explicit_formula;
  return out;
}

/// One-dimensional two-station extents for powers (1, psi) at distance 1:
///   xi_R = (sqrt(beta psi) - 1)/(beta psi - 1),
///   xi_L = -(sqrt(beta psi) + 1)/(beta psi - 1),
/// returned as directed enclosures. |xi_L|/xi_R <= (sqrt(beta)+1)/(sqrt(beta)-1),
/// with equality at psi = 1.
inline std::pair<RatInterval, RatInterval> two_station_extent(const Rat& psi, const Rat& beta,
                                                              unsigned bits = 48) {
  Rat bp = beta * psi;
  if (bp <= 1) throw std::domain_error("two_station_extent needs beta * psi > 1");
  RatInterval s = sqrt_enclosure(bp, bits);
  Rat den = bp - 1;
  RatInterval xi_r{(s.lo - 1) / den, (s.hi - 1) / den};
  RatInterval xi_l{-(s.hi + 1) / den, -(s.lo + 1) / den};
  return {xi_r, xi_l};
}

/// Boundary crossing along one ray from the station.
struct RayCrossing {
  RatInterval t;         // crossing parameter along dir
  RatInterval distance;  // crossing distance (t scaled by |dir|)
};

/// Bisection for the unique boundary crossing along a ray from station i.
/// Soundness rests only on exact membership tests; monotone membership along
/// rays guarantees the flip point is unique. The bracket tightens until
/// hi/lo <= 1 + rel_tol.
inline RayCrossing boundary_ray_search(const Network& net, std::size_t i, const Point& dir,
                                       const Rat& rel_tol) {
  detail::require_uniform_beta(net);
  if (net.is_trivial()) throw std::domain_error("trivial network has unbounded zones");
  if (dir == Point{Rat(0), Rat(0)}) throw std::invalid_argument("ray needs a nonzero direction");
  if (sgn(rel_tol) <= 0) throw std::invalid_argument("rel_tol must be > 0");
  Rat g = net.min_gap_sq(i);
  if (sgn(g) == 0) throw DegenerateZoneError("zone degenerates to the station point");

  const Point& s = net.station(i).pos;
  auto received_at = [&](const Rat& t) { return is_received(net, i, s + dir * t); };

  // Power-of-two bracket around the flip; the double-guess only seeds the
  // scale, every step is an exact membership test.
  double guess = to_double(explicit_bounds(net, i).Delta_hi) /
                 std::sqrt(to_double(dot(dir, dir)));
  Rat hi(1);
  if (guess > 1) {
    while (to_double(hi) < guess) hi *= 2;
  } else {
    while (to_double(hi) > guess && hi > rat(1, 1L << 30)) hi /= 2;
  }
  while (received_at(hi)) hi *= 2;
  Rat lo = hi / 2;
  while (!received_at(lo)) lo /= 2;

  Rat one_plus = 1 + rel_tol;
  while (hi > lo * one_plus) {
    Rat mid = (lo + hi) / 2;
    if (received_at(mid))
      lo = mid;
    else
      hi = mid;
  }

  RayCrossing out;
  out.t = {lo, hi};
  RatInterval len = sqrt_enclosure(dot(dir, dir));
  out.distance = {lo * len.lo, hi * len.hi};
  return out;
}

/// Ray-search driven refinement: with r the north-ray crossing and F the
/// fatness constant, delta >= r/F and Delta <= r*F.
inline RadiusBounds refined_bounds(const Network& net, std::size_t i,
                                   const Rat& rel_tol = rat(1, 1000)) {
  RadiusBounds base = explicit_bounds(net, i);
  RayCrossing north = boundary_ray_search(net, i, Point{Rat(0), Rat(1)}, rel_tol);
  RatInterval f = fatness_bound(net.beta());

  RadiusBounds out;
  out.kappa = base.kappa;
  out.kappa_sq = base.kappa_sq;
  out.delta_lo = north.distance.lo / f.hi;
  out.Delta_hi = north.distance.hi * f.hi;
  out.source = RadiusBounds::Source::refined;
  return out;
}

/// Exactly-unit rational directions spread around the circle; the four
/// cardinal directions appear exactly when count is a multiple of 4.
inline std::vector<Point> unit_directions(unsigned count) {
  std::vector<Point> dirs;
  dirs.reserve(count);
  const double pi = 3.14159265358979323846;
  for (unsigned k = 0; k < count; ++k) {
    double half = pi * k / count;  // half of the target angle 2*pi*k/count
    double t = std::tan(half);
    if (!std::isfinite(t) || std::abs(t) > 1e8) {
      dirs.push_back({Rat(-1), Rat(0)});
      continue;
    }
    // Rational tan-half-angle gives an exact point on the unit circle.
    Rat tr(std::lround(t * 4096), 4096);
    tr.canonicalize();
    Rat p = tr.get_num(), q = tr.get_den();
    Rat den = q * q + p * p;
    dirs.push_back({(q * q - p * p) / den, 2 * p * q / den});
  }
  return dirs;
}

struct MeasuredRadii {
  RatInterval delta;  // least sampled crossing distance
  RatInterval Delta;  // greatest sampled crossing distance
};

/// Min/max boundary crossing distance over `angles` sampled rays: a sound
/// enclosure per sampled ray, hence a sampled estimate of the true radii.
inline MeasuredRadii measure_radii(const Network& net, std::size_t i, unsigned angles,
                                   const Rat& rel_tol) {
  if (angles == 0) throw std::invalid_argument("measure_radii needs at least one angle");
  MeasuredRadii out;
  bool first = true;
  for (const Point& dir : unit_directions(angles)) {
    RayCrossing rc = boundary_ray_search(net, i, dir, rel_tol);
    if (first) {
      out.delta = rc.distance;
      out.Delta = rc.distance;
      first = false;
      continue;
    }
    if (rc.distance.lo < out.delta.lo) out.delta.lo = rc.distance.lo;
    if (rc.distance.hi < out.delta.hi) out.delta.hi = rc.distance.hi;
    if (rc.distance.lo > out.Delta.lo) out.Delta.lo = rc.distance.lo;
    if (rc.distance.hi > out.Delta.hi) out.Delta.hi = rc.distance.hi;
  }
  return out;
}

}  // namespace sinr

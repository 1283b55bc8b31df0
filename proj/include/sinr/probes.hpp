#pragma once

// Randomized exact probes backing the property suites: convexity witnesses,
// star-shape monotonicity, monotone membership along rays. All verdicts come
// from exact rational evaluation; randomness only picks where to look.

#include <optional>
#include <random>

#include "sinr/bounds.hpp"
#include "sinr/network.hpp"

namespace sinr {

using Rng = std::mt19937_64;

/// Uniform rational point in the axis-aligned square of half-width r around
/// c, on a dyadic lattice (denominator 2^12).
inline Point sample_point_in_square(Rng& rng, const Point& c, const Rat& r) {
  constexpr long kGrain = 1L << 12;
  std::uniform_int_distribution<long> d(-kGrain, kGrain);
  return {c.x + r * rat(d(rng), kGrain), c.y + r * Rat(d(rng), kGrain)};
}

struct ConvexityWitness {
  Point p1, p2, q;  // endpoints received, q on the segment is not
};

/// Samples pairs of received points and checks 33 evenly spaced interior
/// points of the joining segment, all with exact membership tests. Returns
/// the first violation found, or nothing. For uniform networks with beta >= 1
/// this must come back empty; beta < 1 networks can produce a witness.
/// `region_radius` overrides the sampling radius (required when the explicit
/// bounds do not exist, i.e. beta <= 1).
inline std::optional<ConvexityWitness> convexity_probe(
    const Network& net, std::size_t i, unsigned trials, std::uint64_t seed,
    std::optional<Rat> region_radius = std::nullopt) {
  Rat radius = region_radius ? *region_radius : explicit_bounds(net, i).Delta_hi;
  const Point& s = net.station(i).pos;
  Rng rng(seed);

  auto draw_received = [&]() -> std::optional<Point> {
    for (int attempt = 0; attempt < 256; ++attempt) {
      Point p = sample_point_in_square(rng, s, radius);
      if (is_received(net, i, p)) return p;
    }
    return std::nullopt;
  };

  for (unsigned t = 0; t < trials; ++t) {
    auto p1 = draw_received();
    auto p2 = draw_received();
    if (!p1 || !p2 || *p1 == *p2) continue;
    for (int k = 1; k <= 33; ++k) {
      Rat lam(k, 34);
      Point q = *p1 + (*p2 - *p1) * lam;
      if (!is_received(net, i, q)) return ConvexityWitness{*p1, *p2, q};
    }
  }
  return std::nullopt;
}

/// Checks the given segment triple exactly (used to pin a frozen witness).
inline bool is_convexity_witness(const Network& net, std::size_t i, const ConvexityWitness& w) {
  if (!is_received(net, i, w.p1) || !is_received(net, i, w.p2)) return false;
  return !is_received(net, i, w.q);
}

/// SINR strictly increases toward the station along the segment from p,
/// provided sinr(p) >= 1. Checked at `samples` interior points plus p.
inline bool star_monotone_toward_station(const Network& net, std::size_t i, const Point& p,
                                         int samples = 33) {
  Rat at_p = sinr_at(net, i, p);
  if (at_p < 1) throw std::invalid_argument("star monotonicity needs sinr(p) >= 1");
  const Point& s = net.station(i).pos;
  Rat prev = at_p;
  // walk from p toward the station; SINR must strictly grow at every step
  for (int k = samples; k >= 1; --k) {
    Point q = s + (p - s) * rat(k, samples + 1);
    if (net.occupied(q)) return false;
    Rat v = sinr_at(net, i, q);
    if (!(v > prev)) return false;
    prev = v;
  }
  return true;
}

/// Membership along a ray is a prefix: once lost, never regained.
/// Evaluates `samples` points at equal parameter steps up to max_t.
inline bool received_prefix_along_ray(const Network& net, std::size_t i, const Point& dir,
                                      const Rat& max_t, int samples = 40) {
  const Point& s = net.station(i).pos;
  bool lost = false;
  for (int k = 1; k <= samples; ++k) {
    Point p = s + dir * (max_t * rat(k, samples));
    bool rec = !net.occupied(p) && is_received(net, i, p);
    if (lost && rec) return false;
    if (!rec) lost = true;
  }
  return true;
}

/// Every received point is strictly closer to its station than to any other
/// (containment in the open Voronoi cell).
inline bool strictly_nearest(const Network& net, std::size_t i, const Point& p) {
  Rat own = distance_sq(net.station(i).pos, p);
  for (std::size_t j = 0; j < net.size(); ++j) {
    if (j == i) continue;
    if (own >= distance_sq(net.station(j).pos, p)) return false;
  }
  return true;
}

}  // namespace sinr

#pragma once

// Restriction of a reception zone's characteristic polynomial to a line.
// The 2-variate polynomial itself is never expanded; only its restriction
// Q(t) to a parameterized line is assembled, as products of the per-station
// distance-squared quadratics in t.

#include <stdexcept>
#include <vector>

#include "sinr/network.hpp"
#include "sinr/unipoly.hpp"

namespace sinr {

/// L(t) = origin + t * dir, dir nonzero.
struct LineParam {
  Point origin;
  Point dir;

  Point at(const Rat& t) const { return origin + dir * t; }
};

/// Quadratic |L(t) - q|^2 in t.
inline UniPoly distance_sq_on_line(const LineParam& line, const Point& q) {
  Point rel = line.origin - q;
  return UniPoly({dot(rel, rel), Rat(2) * dot(rel, line.dir), dot(line.dir, line.dir)});
}

/// Q(t) with Q(t) <= 0 iff station i is heard at L(t), for L(t) off the
/// station set. Degree is 2n, dropping to 2n-2 when the noise is zero.
inline UniPoly hear_poly_on_line(const Network& net, std::size_t i, const LineParam& line) {
  if (line.dir == Point{Rat(0), Rat(0)}) throw std::invalid_argument("line needs a nonzero direction");
  const std::size_t n = net.size();

  std::vector<UniPoly> dsq;
  dsq.reserve(n);
  for (std::size_t k = 0; k < n; ++k) dsq.push_back(distance_sq_on_line(line, net.station(k).pos));

  // prefix[j] = D_0*...*D_{j-1}, suffix[j] = D_{j+1}*...*D_{n-1}
  std::vector<UniPoly> prefix(n + 1), suffix(n + 1);
  prefix[0] = UniPoly::constant(Rat(1));
  for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = prefix[k] * dsq[k];
  suffix[n] = UniPoly::constant(Rat(1));
  for (std::size_t k = n; k-- > 0;) suffix[k] = suffix[k + 1] * dsq[k];

  UniPoly rivals;  // sum over j != i of psi_j * prod_{k != j} D_k
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    rivals = rivals + (prefix[j] * suffix[j + 1]) * net.station(j).power;
  }
  UniPoly q = (rivals + prefix[n] * net.noise()) * net.beta() -
              (prefix[i] * suffix[i + 1]) * net.station(i).power;
  return q;
}

}  // namespace sinr

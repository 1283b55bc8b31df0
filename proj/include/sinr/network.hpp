#pragma once

// Wireless network model: stations, energy, interference, SINR and zone
// membership. Path loss is fixed at exponent 2, which keeps every quantity
// rational and every membership decision exact.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "sinr/geometry.hpp"
#include "sinr/rational.hpp"

namespace sinr {

struct Station {
  Point pos;
  Rat power{1};
};

class Network {
 public:
  Network(std::vector<Station> stations, Rat noise, Rat beta)
      : stations_(std::move(stations)), noise_(std::move(noise)), beta_(std::move(beta)) {
    if (stations_.size() < 2) throw std::invalid_argument("network needs at least 2 stations");
    if (sgn(noise_) < 0) throw std::invalid_argument("noise must be >= 0");
    // beta < 1 networks are legal inputs (they exhibit non-convex zones);
    // everything that needs beta >= 1 or > 1 checks at its own entry point.
    if (sgn(beta_) <= 0) throw std::invalid_argument("beta must be > 0");
    for (const auto& s : stations_)
      if (sgn(s.power) <= 0) throw std::invalid_argument("station power must be > 0");
  }

  std::size_t size() const { return stations_.size(); }
  const std::vector<Station>& stations() const { return stations_; }
  const Station& station(std::size_t i) const { return stations_.at(i); }
  const Rat& noise() const { return noise_; }
  const Rat& beta() const { return beta_; }
  static constexpr int pathloss() { return 2; }

  bool is_uniform() const {
    for (const auto& s : stations_)
      if (s.power != 1) return false;
    return true;
  }

  bool occupied(const Point& p) const {
    for (const auto& s : stations_)
      if (s.pos == p) return true;
    return false;
  }

  /// Minimum distance (squared) from station i to any other station.
  /// Zero means another station shares the location.
  Rat min_gap_sq(std::size_t i) const {
    Rat best(-1);
    for (std::size_t j = 0; j < stations_.size(); ++j) {
      if (j == i) continue;
      Rat d = distance_sq(stations_[i].pos, stations_[j].pos);
      if (sgn(best) < 0 || d < best) best = d;
    }
    return best;
  }

  /// Half-plane zones: exactly two stations, no noise, beta = 1.
  bool is_trivial() const {
    return stations_.size() == 2 && sgn(noise_) == 0 && beta_ == 1;
  }

 private:
  std::vector<Station> stations_;
  Rat noise_;
  Rat beta_;
};

inline Rat energy(const Network& net, std::size_t i, const Point& p) {
  Rat d2 = distance_sq(net.station(i).pos, p);
  if (sgn(d2) == 0) throw std::domain_error("energy undefined at station");
  return net.station(i).power / d2;
}

inline Rat interference(const Network& net, std::size_t i, const Point& p) {
  if (net.occupied(p)) throw std::domain_error("interference undefined at a station location");
  Rat sum(0);
  for (std::size_t j = 0; j < net.size(); ++j)
    if (j != i) sum += energy(net, j, p);
  return sum;
}

inline Rat sinr_at(const Network& net, std::size_t i, const Point& p) {
  if (net.occupied(p)) throw std::domain_error("sinr undefined at a station location");
  return energy(net, i, p) / (interference(net, i, p) + net.noise());
}

/// Zone membership, total over the plane: the station hears itself, other
/// station locations hear nothing, elsewhere the threshold test decides.
inline bool is_received(const Network& net, std::size_t i, const Point& p) {
  if (p == net.station(i).pos) return true;
  if (net.occupied(p)) return false;
  return sinr_at(net, i, p) >= net.beta();
}

// Float mirrors, for rendering pre-filters only. Never used in a decision
// that a test asserts on.
inline double energy_at_f(const Network& net, std::size_t i, double px, double py) {
  double dx = to_double(net.station(i).pos.x) - px;
  double dy = to_double(net.station(i).pos.y) - py;
  double d2 = dx * dx + dy * dy;
  return to_double(net.station(i).power) / d2;
}

inline double sinr_at_f(const Network& net, std::size_t i, double px, double py) {
  double total = to_double(net.noise());
  for (std::size_t j = 0; j < net.size(); ++j)
    if (j != i) total += energy_at_f(net, j, px, py);
  return energy_at_f(net, i, px, py) / total;
}

/// Exact orthogonal 2x2 matrix with rational entries: rational rotations
/// (any rational cos/sin pair), axis swaps, reflections.
struct Orthogonal {
  Rat m00{1}, m01{0};
  Rat m10{0}, m11{1};

  static Orthogonal rotation(Rat c, Rat s) { return {c, -s, s, c}; }
  static Orthogonal reflect_x() { return {Rat(-1), Rat(0), Rat(0), Rat(1)}; }
  static Orthogonal reflect_y() { return {Rat(1), Rat(0), Rat(0), Rat(-1)}; }
  static Orthogonal swap_axes() { return {Rat(0), Rat(1), Rat(1), Rat(0)}; }

  void validate() const {
    bool ok = m00 * m00 + m10 * m10 == 1 && m01 * m01 + m11 * m11 == 1 &&
              sgn(m00 * m01 + m10 * m11) == 0;
    if (!ok) throw std::invalid_argument("transform matrix must be orthogonal");
  }
  Point apply(const Point& p) const {
    return {m00 * p.x + m01 * p.y, m10 * p.x + m11 * p.y};
  }
};

/// Similarity transform of the whole network: orthogonal map, scale by
/// sigma > 0, translate. Noise rescales by 1/sigma^2 so SINR is preserved.
inline Network transform(const Network& net, const Orthogonal& rot, const Point& translation,
                         const Rat& sigma) {
  if (sgn(sigma) <= 0) throw std::invalid_argument("scale must be > 0");
  rot.validate();
  std::vector<Station> mapped;
  mapped.reserve(net.size());
  for (const auto& st : net.stations())
    mapped.push_back({rot.apply(st.pos) * sigma + translation, st.power});
  return Network(std::move(mapped), net.noise() / (sigma * sigma), net.beta());
}

/// The same point map used by transform(), for checking invariance.
inline Point transform_point(const Orthogonal& rot, const Point& translation, const Rat& sigma,
                             const Point& p) {
  return rot.apply(p) * sigma + translation;
}

}  // namespace sinr

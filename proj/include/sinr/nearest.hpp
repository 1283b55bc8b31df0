#pragma once

// Nearest-station lookup with exact rational comparisons. A kd-tree gives
// the expected-logarithmic queries the dispatcher needs; ties go to the
// lowest station index. Defining SINR_BRUTE_NEAREST swaps in a linear scan
// behind the same interface (useful for debugging small nets).

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "sinr/geometry.hpp"
#include "sinr/network.hpp"

namespace sinr {

inline std::size_t brute_nearest(const std::vector<Point>& sites, const Point& p) {
  std::size_t best = 0;
  Rat best_d2 = distance_sq(sites[0], p);
  for (std::size_t i = 1; i < sites.size(); ++i) {
    Rat d2 = distance_sq(sites[i], p);
    if (d2 < best_d2) {
      best = i;
      best_d2 = d2;
    }
  }
  return best;
}

class NearestIndex {
 public:
  explicit NearestIndex(std::vector<Point> sites) : sites_(std::move(sites)) {
    if (sites_.empty()) throw std::invalid_argument("nearest index needs at least one site");
#ifndef SINR_BRUTE_NEAREST
    std::vector<std::size_t> ids(sites_.size());
    std::iota(ids.begin(), ids.end(), 0);
    nodes_.reserve(sites_.size());
    root_ = build(ids.begin(), ids.end(), 0);
#endif
  }

  explicit NearestIndex(const Network& net) : NearestIndex(positions(net)) {}

  std::size_t nearest(const Point& p) const {
#ifdef SINR_BRUTE_NEAREST
    return brute_nearest(sites_, p);
#else
    std::size_t best_id = nodes_[root_].site;
    Rat best_d2 = distance_sq(sites_[best_id], p);
    search(root_, p, best_id, best_d2);
    return best_id;
#endif
  }

  const std::vector<Point>& sites() const { return sites_; }

 private:
  static std::vector<Point> positions(const Network& net) {
    std::vector<Point> out;
    out.reserve(net.size());
    for (const auto& st : net.stations()) out.push_back(st.pos);
    return out;
  }

  struct Node {
    std::size_t site;
    int axis;
    int left = -1, right = -1;
  };

  using Iter = std::vector<std::size_t>::iterator;

  const Rat& coord(std::size_t id, int axis) const {
    return axis == 0 ? sites_[id].x : sites_[id].y;
  }

  int build(Iter first, Iter last, int depth) {
    if (first == last) return -1;
    int axis = depth % 2;
    Iter mid = first + (last - first) / 2;
    std::nth_element(first, mid, last, [&](std::size_t a, std::size_t b) {
      const Rat& ca = coord(a, axis);
      const Rat& cb = coord(b, axis);
      if (ca != cb) return ca < cb;
      return a < b;
    });
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back({*mid, axis});
    int l = build(first, mid, depth + 1);
    int r = build(mid + 1, last, depth + 1);
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
  }

  // Candidate ordering: smaller distance wins, equal distance goes to the
  // lower station index. Subtrees are pruned only when strictly farther.
  void consider(std::size_t id, const Point& p, std::size_t& best_id, Rat& best_d2) const {
    Rat d2 = distance_sq(sites_[id], p);
    if (d2 < best_d2 || (d2 == best_d2 && id < best_id)) {
      best_id = id;
      best_d2 = d2;
    }
  }

  void search(int node, const Point& p, std::size_t& best_id, Rat& best_d2) const {
    if (node < 0) return;
    const Node& n = nodes_[node];
    consider(n.site, p, best_id, best_d2);
    const Rat& pc = n.axis == 0 ? p.x : p.y;
    const Rat& sc = coord(n.site, n.axis);
    int near = pc < sc ? n.left : n.right;
    int far = pc < sc ? n.right : n.left;
    search(near, p, best_id, best_d2);
    Rat gap = pc - sc;
    if (gap * gap <= best_d2) search(far, p, best_id, best_d2);
  }

  std::vector<Point> sites_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

inline NearestIndex build_nearest_index(const Network& net) { return NearestIndex(net); }

inline std::size_t nearest_station(const NearestIndex& idx, const Point& p) {
  return idx.nearest(p);
}

}  // namespace sinr

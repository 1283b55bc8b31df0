#pragma once

// Whole-diagram point location: a nearest-station dispatcher over one zone
// structure per station. A received point is always strictly closest to its
// own station, so only the nearest station's zone needs consulting.

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "sinr/nearest.hpp"
#include "sinr/zone_index.hpp"

namespace sinr {

struct QueryAnswer {
  enum class Kind { in, maybe, out };
  Kind kind = Kind::out;
  std::size_t station = 0;  // meaningful for in/maybe

  bool operator==(const QueryAnswer& o) const {
    if (kind != o.kind) return false;
    return kind == Kind::out || station == o.station;
  }
};

class DiagramIndex {
 public:
  DiagramIndex(Network net, Rat eps, std::vector<ZoneIndex> zones)
      : net_(std::move(net)), eps_(std::move(eps)), zones_(std::move(zones)), nearest_(net_) {
    if (zones_.size() != net_.size())
      throw std::invalid_argument("diagram index needs one zone per station");
  }

  const Network& network() const { return net_; }
  const Rat& eps() const { return eps_; }
  const std::vector<ZoneIndex>& zones() const { return zones_; }
  const NearestIndex& nearest() const { return nearest_; }

  QueryAnswer query(const Point& p) const {
    std::size_t i = nearest_.nearest(p);
    if (p == net_.station(i).pos) return {QueryAnswer::Kind::in, i};
    switch (zones_[i].classify_point(p)) {
      case CellClass::plus:
        return {QueryAnswer::Kind::in, i};
      case CellClass::maybe:
        return {QueryAnswer::Kind::maybe, i};
      case CellClass::minus:
        break;
    }
    return {QueryAnswer::Kind::out, 0};
  }

 private:
  Network net_;
  Rat eps_;
  std::vector<ZoneIndex> zones_;
  NearestIndex nearest_;
};

inline unsigned worker_count() {
  if (const char* env = std::getenv("SINR_WORKERS")) {
    long v = std::atol(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// Builds every station's zone structure (independent units of work, run on
/// a small worker pool) and wires up the dispatcher.
inline DiagramIndex build_diagram_index(const Network& net, const Rat& eps,
                                        const Rat& ray_tol = rat(1, 1000)) {
  std::vector<ZoneIndex> zones(net.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;

  auto work = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= net.size() || failed.load()) return;
      try {
        zones[i] = build_zone_index(net, i, eps, ray_tol);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(net.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return DiagramIndex(net, eps, std::move(zones));
}

}  // namespace sinr

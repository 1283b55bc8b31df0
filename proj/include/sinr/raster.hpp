#pragma once

// Pixel-labelled view of the SINR diagram plus a grid-count area estimator.
// Rendering uses a float fast path; any pixel whose float SINR lands within
// a small relative margin of the threshold is re-decided exactly, so labels
// never contradict exact membership.

#include <array>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <thread>
#include <utility>
#include <vector>

#include "sinr/bounds.hpp"
#include "sinr/network.hpp"

namespace sinr {

struct BBox {
  Rat x0, y0, x1, y1;

  void validate() const {
    if (!(x0 < x1) || !(y0 < y1)) throw std::invalid_argument("empty bounding box");
  }
};

struct RasterLabel {
  static constexpr std::int32_t kNone = -1;

  int width = 0, height = 0;
  BBox bbox;
  std::vector<std::int32_t> labels;  // row-major, row 0 at the top

  std::int32_t at(int px, int py) const { return labels[static_cast<std::size_t>(py) * width + px]; }
};

namespace detail {
constexpr double kRelMargin = 1e-6;
}

/// Labels each pixel center with the station heard there (the strongest one
/// when beta < 1 lets zones overlap), or kNone. Near-threshold pixels fall
/// back to exact arithmetic.
inline RasterLabel rasterize(const Network& net, const BBox& bbox, int width, int height) {
  bbox.validate();
  if (width < 1 || height < 1) throw std::invalid_argument("raster needs positive dimensions");

  RasterLabel out;
  out.width = width;
  out.height = height;
  out.bbox = bbox;
  out.labels.assign(static_cast<std::size_t>(width) * height, RasterLabel::kNone);

  const double beta_f = to_double(net.beta());
  Rat dx = (bbox.x1 - bbox.x0) / width;
  Rat dy = (bbox.y1 - bbox.y0) / height;

  // rows are independent units of work; output is deterministic regardless
  // of how they are scheduled
  auto fill_row = [&](int py) {
    Rat cy = bbox.y1 - dy * (2 * py + 1) / 2;
    double cy_f = to_double(cy);
    for (int px = 0; px < width; ++px) {
      Rat cx = bbox.x0 + dx * (2 * px + 1) / 2;
      double cx_f = to_double(cx);

      // float pass: strongest station and its margin from the threshold
      int best = -1;
      double best_sinr = 0;
      for (std::size_t i = 0; i < net.size(); ++i) {
        double s = sinr_at_f(net, i, cx_f, cy_f);
        if (s > best_sinr) {
          best_sinr = s;
          best = static_cast<int>(i);
        }
      }
      std::int32_t label = RasterLabel::kNone;
      if (best >= 0) {
        double rel = best_sinr / beta_f - 1.0;
        if (rel > detail::kRelMargin) {
          label = best;
        } else if (rel >= -detail::kRelMargin) {
          label = is_received(net, static_cast<std::size_t>(best), {cx, cy}) ? best
                                                                             : RasterLabel::kNone;
        }
      }
      out.labels[static_cast<std::size_t>(py) * width + px] = label;
    }
  };

  unsigned workers = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("SINR_WORKERS")) {
    long v = std::atol(env);
    if (v >= 1) workers = static_cast<unsigned>(v);
  }
  workers = std::min<unsigned>(workers ? workers : 1, static_cast<unsigned>(height));
  if (workers <= 1) {
    for (int py = 0; py < height; ++py) fill_row(py);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int py = next.fetch_add(1); py < height; py = next.fetch_add(1)) fill_row(py);
      });
    for (auto& t : pool) t.join();
  }
  return out;
}

/// Grid-count estimate of the zone area with a sound absolute error bound:
/// count cells whose center is received inside the circumscribed-radius box;
/// cells met by the boundary are charged to the error term.
inline std::pair<Rat, Rat> area_estimate(const Network& net, std::size_t i, long resolution) {
  if (resolution < 1) throw std::invalid_argument("area_estimate needs resolution >= 1");
  RadiusBounds eb = explicit_bounds(net, i);  // throws for beta<=1 / degenerate
  const Rat& R = eb.Delta_hi;
  Rat side = R * 7 / (10 * resolution);  // diameter side*sqrt(2) <= R/resolution
  const Point& s = net.station(i).pos;
  const double beta_f = to_double(net.beta());

  long cells_across = static_cast<long>(rat_ceil(2 * R / side).get_si()) + 1;
  long count = 0;
  for (long gy = 0; gy < cells_across; ++gy) {
    Rat cy = s.y - R + side * (2 * gy + 1) / 2;
    double cy_f = to_double(cy);
    for (long gx = 0; gx < cells_across; ++gx) {
      Rat cx = s.x - R + side * (2 * gx + 1) / 2;
      double s_f = sinr_at_f(net, i, to_double(cx), cy_f);
      double rel = s_f / beta_f - 1.0;
      bool in;
      if (rel > detail::kRelMargin)
        in = true;
      else if (rel < -detail::kRelMargin)
        in = false;
      else
        in = is_received(net, i, {cx, cy});
      if (in) ++count;
    }
  }

  Rat value = side * side * count;
  // boundary cells <= 8*Delta/side + 4 (two crossings per grid line, the
  // zone fits in a 2*Delta box)
  Rat err = (R * 8 / side + 4) * side * side;
  return {value, err};
}

// --- PPM output --------------------------------------------------------------

inline std::array<unsigned char, 3> station_color(std::int32_t label) {
  static constexpr std::array<std::array<unsigned char, 3>, 12> palette = {{
      {66, 133, 244},
      {219, 68, 55},
      {244, 180, 0},
      {15, 157, 88},
      {171, 71, 188},
      {0, 172, 193},
      {255, 112, 67},
      {158, 157, 36},
      {92, 107, 192},
      {240, 98, 146},
      {0, 121, 107},
      {93, 64, 55},
  }};
  if (label < 0) return {255, 255, 255};
  return palette[static_cast<std::size_t>(label) % palette.size()];
}

inline void write_ppm(const RasterLabel& raster, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write image file: " + path);
  out << "P6\n" << raster.width << " " << raster.height << "\n255\n";
  for (std::int32_t label : raster.labels) {
    auto rgb = station_color(label);
    out.write(reinterpret_cast<const char*>(rgb.data()), 3);
  }
  if (!out) throw std::runtime_error("short write on image file: " + path);
}

}  // namespace sinr

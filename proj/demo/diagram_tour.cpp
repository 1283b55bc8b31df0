// Walkthrough of the library surface: build a small network, look at one
// station's zone, index the diagram, and answer a few queries.

#include <cstdio>

#include "sinr/diagram.hpp"
#include "sinr/raster.hpp"

using namespace sinr;

int main() {
  Network net({{{rat(0), rat(0)}, rat(1)},
               {{rat(4), rat(0)}, rat(1)},
               {{rat(2), rat(3)}, rat(1)}},
              rat(1, 10), rat(4));

  std::printf("three stations, beta = %s, noise = %s\n",
              rational_to_string(net.beta()).c_str(),
              rational_to_string(net.noise()).c_str());

  Point p{rat(1, 2), rat(1, 4)};
  std::printf("SINR of station 0 at (1/2, 1/4) = %s (~%.4f)\n",
              rational_to_string(sinr_at(net, 0, p)).c_str(), to_double(sinr_at(net, 0, p)));

  RadiusBounds eb = explicit_bounds(net, 0);
  std::printf("zone 0 radii: inscribed >= %.4f, circumscribed <= %.4f\n",
              to_double(eb.delta_lo), to_double(eb.Delta_hi));

  DiagramIndex idx = build_diagram_index(net, rat(1, 4));
  std::size_t cells = 0;
  for (const auto& z : idx.zones()) cells += z.maybe_count;
  std::printf("index built at eps = 1/4: %zu undecided cells across %zu zones\n", cells,
              idx.zones().size());

  for (const Point& q : {Point{rat(0), rat(1, 4)}, Point{rat(2), rat(1)}, Point{rat(9), rat(9)}}) {
    QueryAnswer a = idx.query(q);
    const char* what = a.kind == QueryAnswer::Kind::in
                           ? "inside zone"
                           : a.kind == QueryAnswer::Kind::maybe ? "undecided ring of zone" : "out";
    std::printf("query (%s, %s): %s", rational_to_string(q.x).c_str(),
                rational_to_string(q.y).c_str(), what);
    if (a.kind != QueryAnswer::Kind::out) std::printf(" %zu", a.station);
    std::printf("\n");
  }

  write_ppm(rasterize(net, {rat(-2), rat(-2), rat(6), rat(5)}, 420, 360), "tour.ppm");
  std::printf("wrote tour.ppm\n");
  return 0;
}

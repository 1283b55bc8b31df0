#include <catch2/catch_amalgamated.hpp>
#include <random>
#include <set>

#include "sinr/grid.hpp"
#include "sinr/nearest.hpp"
#include "sinr/probes.hpp"

using namespace sinr;

TEST_CASE("cell_of tie-breaks") {
  Grid g({rat(0), rat(0)}, rat(1));
  CHECK(cell_of(g, {rat(0), rat(0)}) == Cell{0, 0});        // SW corner owned
  CHECK(cell_of(g, {rat(0), rat(1)}) == Cell{0, 1});        // NW corner excluded
  CHECK(cell_of(g, {rat(1), rat(1, 2)}) == Cell{1, 0});     // east edge excluded
  CHECK(cell_of(g, {rat(1, 2), rat(0)}) == Cell{0, 0});     // south edge owned
  CHECK(cell_of(g, {rat(1), rat(0)}) == Cell{1, 0});        // SE corner goes east
  CHECK(cell_of(g, {rat(-1, 2), rat(-1, 2)}) == Cell{-1, -1});
}

TEST_CASE("cell_of with offset origin and fractional spacing") {
  Grid g({rat(1, 3), rat(-2, 7)}, rat(1, 10));
  CHECK(cell_of(g, g.origin) == Cell{0, 0});
  CHECK(cell_of(g, g.vertex(5, -3)) == Cell{5, -3});
  // partition: each sampled point lands in exactly one cell, and membership
  // matches the half-open box arithmetic
  Rng rng(100);
  std::uniform_int_distribution<long> c(-2000, 2000);
  for (int it = 0; it < 10000; ++it) {
    Point p{rat(c(rng), 70), rat(c(rng), 70)};
    Cell cc = cell_of(g, p);
    Point sw = g.cell_corner(cc);
    CHECK(sw.x <= p.x);
    CHECK(p.x < sw.x + g.spacing);
    CHECK(sw.y <= p.y);
    CHECK(p.y < sw.y + g.spacing);
  }
}

TEST_CASE("nine_cell") {
  auto block = nine_cell({0, 0});
  std::set<Cell> cells(block.begin(), block.end());
  CHECK(cells.size() == 9);
  for (std::int64_t dc = -1; dc <= 1; ++dc)
    for (std::int64_t dr = -1; dr <= 1; ++dr) CHECK(cells.count({dc, dr}) == 1);

  auto far = nine_cell({5, -3});
  std::set<Cell> fcells(far.begin(), far.end());
  for (const Cell& c : cells) CHECK(fcells.count({c.col + 5, c.row - 3}) == 1);
}

TEST_CASE("nine_cell boundary edges") {
  Grid g({rat(0), rat(0)}, rat(1));
  auto edges = nine_cell_boundary_edges(g, {0, 0});
  REQUIRE(edges.size() == 12);
  Rat total(0);
  for (const auto& e : edges) {
    Rat len2 = distance_sq(e.a, e.b);
    CHECK(len2 == 1);  // spacing-long
    total += 1;
  }
  CHECK(total == 12);
  // all corners lie on the boundary square [-1,2]^2
  for (const auto& e : edges) {
    for (const Point& p : {e.a, e.b}) {
      bool on_x = (p.x == -1 || p.x == 2);
      bool on_y = (p.y == -1 || p.y == 2);
      CHECK((on_x || on_y));
      CHECK(p.x >= -1);
      CHECK(p.x <= 2);
      CHECK(p.y >= -1);
      CHECK(p.y <= 2);
    }
  }
  // north-middle edge leads to (0, 2)
  bool found = false;
  for (const auto& e : edges)
    if (e.a == Point{rat(0), rat(2)} && e.b == Point{rat(1), rat(2)}) {
      CHECK(e.exterior == Cell{0, 2});
      found = true;
    }
  CHECK(found);
  // half-open: each perimeter corner appears exactly once as an edge start
  std::set<std::pair<std::string, std::string>> starts;
  for (const auto& e : edges)
    starts.insert({rational_to_string(e.a.x), rational_to_string(e.a.y)});
  CHECK(starts.size() == 12);
}

TEST_CASE("nearest index basics") {
  NearestIndex one(std::vector<Point>{{rat(2), rat(3)}});
  CHECK(one.nearest({rat(100), rat(-40)}) == 0);

  NearestIndex two(std::vector<Point>{{rat(0), rat(0)}, {rat(1), rat(0)}});
  CHECK(two.nearest({rat(2, 5), rat(0)}) == 0);
  CHECK(two.nearest({rat(3, 5), rat(0)}) == 1);
  CHECK(two.nearest({rat(1, 2), rat(7)}) == 0);  // tie -> lowest index
}

TEST_CASE("nearest agrees with exhaustive scan") {
  Rng rng(555);
  std::uniform_int_distribution<long> c(-1000, 1000);
  for (std::size_t n : {2ul, 7ul, 40ul, 200ul}) {
    std::vector<Point> sites;
    while (sites.size() < n) sites.push_back({rat(c(rng), 16), rat(c(rng), 16)});
    NearestIndex idx(sites);
    for (int it = 0; it < 2500; ++it) {
      Point p{rat(c(rng), 16), rat(c(rng), 16)};
      std::size_t got = idx.nearest(p);
      std::size_t want = brute_nearest(sites, p);
      // identical distance allowed only when the tie-break agrees
      CHECK(distance_sq(sites[got], p) == distance_sq(sites[want], p));
      CHECK(got == want);
    }
  }
}

TEST_CASE("nearest with duplicated sites keeps lowest index") {
  std::vector<Point> sites{{rat(5), rat(5)}, {rat(0), rat(0)}, {rat(5), rat(5)}};
  NearestIndex idx(sites);
  CHECK(idx.nearest({rat(5), rat(5)}) == 0);
  CHECK(idx.nearest({rat(6), rat(5)}) == 0);
}

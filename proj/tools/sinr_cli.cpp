// Command-line front end: network generation, diagram rendering, zone radius
// reports, index build/query, and verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
// 3 I/O error.

#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sinr/diagram.hpp"
#include "sinr/index_io.hpp"
#include "sinr/network_io.hpp"
#include "sinr/probes.hpp"
#include "sinr/raster.hpp"

using namespace sinr;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rat arg_rational(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string("bad ") + what + ": '" + text + "'");
  }
}

BBox parse_bbox(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 4) throw UsageError("bbox must be x0,y0,x1,y1");
  BBox b{arg_rational(parts[0], "bbox"), arg_rational(parts[1], "bbox"),
         arg_rational(parts[2], "bbox"), arg_rational(parts[3], "bbox")};
  try {
    b.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return b;
}

std::pair<int, int> parse_resolution(const std::string& text) {
  auto x = text.find('x');
  if (x == std::string::npos) x = text.find('X');
  if (x == std::string::npos) throw UsageError("resolution must be WxH");
  int w = 0, h = 0;
  try {
    w = std::stoi(text.substr(0, x));
    h = std::stoi(text.substr(x + 1));
  } catch (...) {
    throw UsageError("resolution must be WxH");
  }
  if (w < 1 || h < 1) throw UsageError("resolution must be positive");
  return {w, h};
}

Point parse_point(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("point must be x,y");
  return {arg_rational(text.substr(0, comma), "point"),
          arg_rational(text.substr(comma + 1), "point")};
}

std::string approx(const Rat& q) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", to_double(q));
  return buf;
}

std::string show(const Rat& q) { return rational_to_string(q) + " (~" + approx(q) + ")"; }

std::string show(const RatInterval& iv) {
  if (iv.is_point()) return rational_to_string(iv.lo) + " (exact)";
  return "[" + rational_to_string(iv.lo) + ", " + rational_to_string(iv.hi) + "] (~" +
         approx(iv.mid()) + ")";
}

// ---------------------------------------------------------------------------

int cmd_gen(unsigned n, std::uint64_t seed, const std::string& spread_s,
            const std::string& beta_s, const std::string& noise_s, const std::string& out) {
  if (n < 2) throw UsageError("a network needs at least 2 stations");
  Rat spread = arg_rational(spread_s, "spread");
  if (sgn(spread) <= 0) throw UsageError("spread must be positive");
  Rat beta = arg_rational(beta_s, "beta");
  Rat noise = arg_rational(noise_s, "noise");

  std::mt19937_64 rng(seed);
  long grain = 16;
  long hi = static_cast<long>(to_double(spread * grain));
  if (hi < 1) hi = 1;
  std::uniform_int_distribution<long> coord(0, hi);
  std::vector<Station> stations;
  while (stations.size() < n) {
    Point p{rat(coord(rng), grain), Rat(coord(rng), grain)};
    p.x.canonicalize();
    p.y.canonicalize();
    bool clash = false;
    for (const auto& s : stations) clash |= (s.pos == p);
    if (!clash) stations.push_back({p, Rat(1)});
  }
  save_network(Network(std::move(stations), noise, beta), out);
  return 0;
}

int cmd_render(const std::string& net_path, const std::string& bbox_s, const std::string& res_s,
               const std::string& out) {
  Network net = load_network(net_path);
  BBox bbox = parse_bbox(bbox_s);
  auto [w, h] = parse_resolution(res_s);
  write_ppm(rasterize(net, bbox, w, h), out);
  return 0;
}

int cmd_bounds(const std::string& net_path, std::size_t station, unsigned angles,
               const std::string& rel_tol_s) {
  Network net = load_network(net_path);
  if (station >= net.size()) throw UsageError("station index out of range");
  std::printf("station %zu\n", station);
  try {
    RadiusBounds eb = explicit_bounds(net, station);
    std::printf("kappa = %s\n", show(eb.kappa).c_str());
    std::printf("explicit delta_lo = %s\n", show(eb.delta_lo).c_str());
    std::printf("explicit Delta = %s\n", show(eb.Delta_hi).c_str());
    RadiusBounds rb = refined_bounds(net, station);
    std::printf("refined delta_lo = %s\n", show(rb.delta_lo).c_str());
    std::printf("refined Delta = %s\n", show(rb.Delta_hi).c_str());
    RatInterval f = fatness_bound(net.beta());
    std::printf("fatness bound F = %s\n", show(f).c_str());
    if (angles > 0) {
      Rat tol = arg_rational(rel_tol_s, "rel-tol");
      MeasuredRadii mr = measure_radii(net, station, angles, tol);
      std::printf("measured delta = %s\n", show(mr.delta).c_str());
      std::printf("measured Delta = %s\n", show(mr.Delta).c_str());
    }
  } catch (const DegenerateZoneError&) {
    std::printf("degenerate zone (another station shares this location)\n");
  }
  return 0;
}

int cmd_build(const std::string& net_path, const std::string& eps_s, const std::string& out) {
  Rat eps = arg_rational(eps_s, "eps");
  if (!(sgn(eps) > 0 && eps < 1)) throw UsageError("eps must be in (0,1)");
  Network net = load_network(net_path);
  save_index(build_diagram_index(net, eps), out);
  return 0;
}

int cmd_query(const std::string& index_path, const std::string& point_s) {
  DiagramIndex idx = load_index(index_path);
  Point p = parse_point(point_s);
  QueryAnswer a = idx.query(p);
  switch (a.kind) {
    case QueryAnswer::Kind::in:
      std::printf("IN %zu\n", a.station);
      break;
    case QueryAnswer::Kind::maybe:
      std::printf("MAYBE %zu\n", a.station);
      break;
    case QueryAnswer::Kind::out:
      std::printf("OUT\n");
      break;
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct VerifyReport {
  int failures = 0;

  void line(bool ok, const std::string& text) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAIL", text.c_str());
    if (!ok) ++failures;
  }
};

Rat default_probe_radius(const Network& net) {
  Rat lo_x = net.station(0).pos.x, hi_x = lo_x, lo_y = net.station(0).pos.y, hi_y = lo_y;
  for (const auto& s : net.stations()) {
    lo_x = std::min(lo_x, s.pos.x);
    hi_x = std::max(hi_x, s.pos.x);
    lo_y = std::min(lo_y, s.pos.y);
    hi_y = std::max(hi_y, s.pos.y);
  }
  return (hi_x - lo_x) + (hi_y - lo_y) + 2;
}

int cmd_verify(const std::string& net_path, unsigned trials, std::uint64_t seed,
               unsigned angles, bool expect_nonconvex, const std::string& index_path) {
  Network net = load_network(net_path);
  VerifyReport rep;
  std::mt19937_64 rng(seed);

  // convexity probes
  {
    bool witness_found = false;
    std::string where;
    for (std::size_t i = 0; i < net.size(); ++i) {
      std::optional<Rat> region;
      if (net.beta() <= 1) region = default_probe_radius(net);
      if (sgn(net.min_gap_sq(i)) == 0) continue;  // point zone, nothing to probe
      auto w = convexity_probe(net, i, trials, seed + i, region);
      if (w) {
        witness_found = true;
        where = "station " + std::to_string(i);
        break;
      }
    }
    if (expect_nonconvex)
      rep.line(witness_found, witness_found ? "non-convexity witness found at " + where
                                            : "expected a non-convexity witness, none found");
    else
      rep.line(!witness_found, witness_found ? "convexity violated at " + where
                                             : "convexity: no violation in " +
                                                   std::to_string(trials) + " trials/station");
  }

  // star-shape monotonicity toward each station (uniform powers only)
  if (net.is_uniform()) {
    unsigned checked = 0, bad = 0;
    Rat radius = default_probe_radius(net);
    for (std::size_t i = 0; i < net.size() && checked < trials; ++i) {
      for (unsigned t = 0; t < trials && checked < trials; ++t) {
        Point p = sample_point_in_square(rng, net.station(i).pos, radius);
        if (net.occupied(p)) continue;
        if (sinr_at(net, i, p) < 1) continue;
        ++checked;
        if (!star_monotone_toward_station(net, i, p)) ++bad;
      }
    }
    rep.line(bad == 0, "star-shape monotonicity: " + std::to_string(bad) + " violations in " +
                           std::to_string(checked) + " segments");
  }

  // fatness and explicit-bounds sandwich (needs beta > 1, uniform)
  if (net.is_uniform() && net.beta() > 1 && !net.is_trivial()) {
    bool fat_ok = true, sandwich_ok = true;
    RatInterval f = fatness_bound(net.beta());
    Rat slack = f.hi + rat(1, 1000000);
    // enclosure width must stay far below the slack: nets can sit exactly at
    // the equality case of the ratio bound
    Rat ray_tol = rat(1, 100000000);
    for (std::size_t i = 0; i < net.size(); ++i) {
      if (sgn(net.min_gap_sq(i)) == 0) continue;
      MeasuredRadii mr = measure_radii(net, i, angles, ray_tol);
      RadiusBounds eb = explicit_bounds(net, i);
      if (mr.Delta.hi > mr.delta.lo * slack) fat_ok = false;
      if (mr.delta.hi < eb.delta_lo || mr.Delta.lo > eb.Delta_hi) sandwich_ok = false;
    }
    rep.line(fat_ok, "fatness: measured Delta/delta within (sqrt(beta)+1)/(sqrt(beta)-1)");
    rep.line(sandwich_ok, "bounds sandwich: measured radii inside explicit bounds");
  }

  // index spot checks
  if (!index_path.empty()) {
    DiagramIndex idx = load_index(index_path);
    bool nets_match = network_to_json(idx.network()) == network_to_json(net);
    rep.line(nets_match, "index embeds the same network");
    bool plus_ok = true, minus_ok = true, size_ok = true;
    std::uniform_int_distribution<long> off(1, (1L << 20) - 1);
    for (const auto& z : idx.zones()) {
      if (z.degenerate) continue;
      const Grid& g = *z.grid;
      Rat pi_lo = rat(314159, 100000);
      Rat ring_area = g.spacing * g.spacing * static_cast<long>(z.maybe_count);
      if (ring_area > idx.eps() * pi_lo * z.bounds->delta_lo * z.bounds->delta_lo)
        size_ok = false;
      long stride = std::max<long>(1, static_cast<long>(z.columns.size()) / 2048);
      long k = 0;
      auto probe = [&](Cell c) {
        CellClass cls = z.classify(c);
        if (cls == CellClass::maybe) return;
        Point sw = g.cell_corner(c);
        Point p{sw.x + g.spacing * rat(off(rng), 1L << 20),
                sw.y + g.spacing * rat(off(rng), 1L << 20)};
        bool got = is_received(idx.network(), z.station, p);
        bool expect_in = cls == CellClass::plus;
        (expect_in ? plus_ok : minus_ok) &= (got == expect_in);
      };
      for (const auto& [col, rows] : z.columns) {
        if (k++ % stride != 0) continue;
        // ladders outward and inward from the undecided runs
        for (std::int64_t step : {1, 2, 4, 8, 16, 32}) {
          probe({col, rows.front() - step});
          probe({col, rows.back() + step});
        }
        for (std::size_t r = 0; r + 1 < rows.size(); ++r)
          if (rows[r] + 1 < rows[r + 1]) {
            probe({col, rows[r] + 1});
            probe({col, (rows[r] + rows[r + 1]) / 2});
            probe({col, rows[r + 1] - 1});
          }
      }
    }
    rep.line(plus_ok, "index: certified-inside cells hold exactly");
    rep.line(minus_ok, "index: certified-outside cells hold exactly");
    rep.line(size_ok, "index: undecided ring within the eps area budget");
    // informational: the ring usually holds few undecided rows per column
    std::size_t worst = 0, over = 0, total_cols = 0;
    for (const auto& z : idx.zones())
      for (const auto& [col, rows] : z.columns) {
        ++total_cols;
        worst = std::max(worst, rows.size());
        if (rows.size() > 6) ++over;
      }
    std::printf("[info] undecided rows per column: worst %zu, over 6 in %zu of %zu columns\n",
                worst, over, total_cols);
  }

  return rep.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SINR reception zones: exact diagrams, radius bounds, and "
               "approximate point location"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a seeded uniform network");
  unsigned gen_n = 4;
  std::uint64_t gen_seed = 1;
  std::string gen_spread = "8", gen_beta = "4", gen_noise = "0", gen_out = "net.json";
  gen->add_option("--n", gen_n, "number of stations (>= 2)");
  gen->add_option("--seed", gen_seed, "rng seed");
  gen->add_option("--spread", gen_spread, "coordinate range (rational)");
  gen->add_option("--beta", gen_beta, "reception threshold (rational)");
  gen->add_option("--noise", gen_noise, "background noise (rational)");
  gen->add_option("--out", gen_out, "output path")->required();

  // render
  auto* render = app.add_subcommand("render", "render the diagram to a PPM image");
  std::string r_net, r_bbox, r_res = "512x512", r_out = "diagram.ppm";
  render->add_option("--net", r_net, "network file")->required();
  render->add_option("--bbox", r_bbox, "view x0,y0,x1,y1")->required();
  render->add_option("--res", r_res, "resolution WxH");
  render->add_option("--out", r_out, "output path")->required();

  // bounds
  auto* bounds = app.add_subcommand("bounds", "report zone radius bounds");
  std::string b_net, b_tol = "1/1000000";
  std::size_t b_station = 0;
  unsigned b_angles = 0;
  bounds->add_option("--net", b_net, "network file")->required();
  bounds->add_option("--station", b_station, "station index");
  bounds->add_option("--angles", b_angles, "also measure radii over this many rays");
  bounds->add_option("--rel-tol", b_tol, "ray search tolerance (rational)");

  // build
  auto* build = app.add_subcommand("build", "build the point-location index");
  std::string u_net, u_eps = "1/10", u_out = "index.sinr";
  build->add_option("--net", u_net, "network file")->required();
  build->add_option("--eps", u_eps, "undecided-area fraction, in (0,1)");
  build->add_option("--out", u_out, "output path")->required();

  // query
  auto* query = app.add_subcommand("query", "answer one point-location query");
  std::string q_index, q_point;
  query->add_option("--index", q_index, "index file")->required();
  query->add_option("point", q_point, "query point x,y")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "run the property suites");
  std::string v_net, v_index;
  unsigned v_trials = 200, v_angles = 64;
  std::uint64_t v_seed = 1;
  bool v_nonconvex = false;
  verify->add_option("--net", v_net, "network file")->required();
  verify->add_option("--trials", v_trials, "probe count per station");
  verify->add_option("--seed", v_seed, "rng seed");
  verify->add_option("--angles", v_angles, "rays per station for radius checks");
  verify->add_option("--index", v_index, "also check this index file");
  verify->add_flag("--expect-nonconvex", v_nonconvex, "require a non-convexity witness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_n, gen_seed, gen_spread, gen_beta, gen_noise, gen_out);
    if (render->parsed()) return cmd_render(r_net, r_bbox, r_res, r_out);
    if (bounds->parsed()) return cmd_bounds(b_net, b_station, b_angles, b_tol);
    if (build->parsed()) return cmd_build(u_net, u_eps, u_out);
    if (query->parsed()) return cmd_query(q_index, q_point);
    if (verify->parsed())
      return cmd_verify(v_net, v_trials, v_seed, v_angles, v_nonconvex, v_index);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}

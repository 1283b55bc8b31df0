#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sinr/index_io.hpp"
#include "sinr/network_io.hpp"
#include "sinr/probes.hpp"
#include "sinr/raster.hpp"

using namespace sinr;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path tmp = fs::temp_directory_path() / ("sinr_cli_out_" + std::to_string(counter++));
  std::string cmd = std::string(SINR_CLI_PATH) + " " + args + " > " + tmp.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  std::ifstream in(tmp);
  std::ostringstream ss;
  ss << in.rdbuf();
  fs::remove(tmp);
  return {WEXITSTATUS(rc), ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path tmpdir() {
  fs::path d = fs::temp_directory_path() / "sinr_cli_tests";
  fs::create_directories(d);
  return d;
}

void write_canonical_pair(const fs::path& p) {
  Network net({{{rat(0), rat(0)}, rat(1)}, {{rat(1), rat(0)}, rat(1)}}, rat(0), rat(4));
  save_network(net, p.string());
}

void write_nonconvex_fixture(const fs::path& p) {
  Network net({{{rat(0), rat(0)}, rat(1)},
               {{rat(25, 8), rat(0)}, rat(1)},
               {{rat(-15, 8), rat(3)}, rat(1)}},
              rat(1, 20), rat(3, 10));
  save_network(net, p.string());
}

}  // namespace

TEST_CASE("gen is deterministic and round-trips") {
  auto d = tmpdir();
  auto a = d / "gen_a.json", b = d / "gen_b.json";
  CHECK(run_cli("gen --n 3 --seed 7 --out " + a.string()).code == 0);
  CHECK(run_cli("gen --n 3 --seed 7 --out " + b.string()).code == 0);
  CHECK(slurp(a) == slurp(b));
  Network net = load_network(a.string());
  CHECK(net.size() == 3);
  CHECK(net.is_uniform());

  CHECK(run_cli("gen --n 1 --out " + (d / "bad.json").string()).code == 2);
}

TEST_CASE("render: determinism and vertical mirror symmetry") {
  auto d = tmpdir();
  auto net_path = d / "pair.json";
  write_canonical_pair(net_path);
  auto img1 = d / "a.ppm", img2 = d / "b.ppm";
  std::string common = "render --net " + net_path.string() + " --bbox -3/2,-1,3/2,1 --res 96x64 ";
  CHECK(run_cli(common + "--out " + img1.string()).code == 0);
  CHECK(run_cli(common + "--out " + img2.string()).code == 0);
  std::string bytes = slurp(img1);
  CHECK(bytes == slurp(img2));
  CHECK(bytes.substr(0, 2) == "P6");

  // stations sit on the x axis and the bbox is y-symmetric: flipping the
  // image rows reproduces the image exactly
  std::istringstream hdr(bytes);
  std::string magic;
  int w, h, maxval;
  hdr >> magic >> w >> h >> maxval;
  REQUIRE(w == 96);
  REQUIRE(h == 64);
  std::size_t pixel_start = bytes.size() - static_cast<std::size_t>(w) * h * 3;
  std::string flipped = bytes.substr(0, pixel_start);
  for (int row = h - 1; row >= 0; --row)
    flipped += bytes.substr(pixel_start + static_cast<std::size_t>(row) * w * 3,
                            static_cast<std::size_t>(w) * 3);
  CHECK(flipped == bytes);

  CHECK(run_cli("render --net " + net_path.string() + " --bbox 1,1,0,0 --res 8x8 --out " +
                (d / "x.ppm").string())
            .code == 2);
  CHECK(run_cli("render --net " + (d / "missing.json").string() +
                " --bbox 0,0,1,1 --res 8x8 --out " + (d / "x.ppm").string())
            .code == 3);
}

TEST_CASE("render: the beta<1 fixture draws a non-convex zone") {
  auto d = tmpdir();
  auto net_path = d / "nc.json";
  write_nonconvex_fixture(net_path);
  auto img = d / "nc.ppm";
  CHECK(run_cli("render --net " + net_path.string() + " --bbox -6,-4,7,6 --res 120x96 --out " +
                img.string())
            .code == 0);
  // convexity checked by the exact probe, not by pixels
  Network net = load_network(net_path.string());
  ConvexityWitness w{{rat(-9, 2), rat(0)}, {rat(3, 2), rat(15, 4)}, {rat(-3, 2), rat(15, 8)}};
  CHECK(is_convexity_witness(net, 0, w));
}

TEST_CASE("bounds report") {
  auto d = tmpdir();
  auto net_path = d / "pair.json";
  write_canonical_pair(net_path);
  auto r = run_cli("bounds --net " + net_path.string() + " --station 0");
  CHECK(r.code == 0);
  CHECK(r.out.find("kappa = 1 (exact)") != std::string::npos);
  CHECK(r.out.find("explicit delta_lo = 1/3") != std::string::npos);
  CHECK(r.out.find("explicit Delta = 1 ") != std::string::npos);
  CHECK(r.out.find("fatness bound F = 3 (exact)") != std::string::npos);

  // degenerate station
  Network shared({{{rat(0), rat(0)}, rat(1)},
                  {{rat(0), rat(0)}, rat(1)},
                  {{rat(5), rat(0)}, rat(1)}},
                 rat(0), rat(4));
  auto shared_path = d / "shared.json";
  save_network(shared, shared_path.string());
  auto r2 = run_cli("bounds --net " + shared_path.string() + " --station 0");
  CHECK(r2.code == 0);
  CHECK(r2.out.find("degenerate zone") != std::string::npos);
}

TEST_CASE("build, query, verify round") {
  auto d = tmpdir();
  auto net_path = d / "pair.json";
  write_canonical_pair(net_path);
  auto idx1 = d / "pair_a.idx", idx2 = d / "pair_b.idx";
  std::string build_cmd = "build --net " + net_path.string() + " --eps 1/4 ";
  CHECK(run_cli(build_cmd + "--out " + idx1.string()).code == 0);
  CHECK(run_cli(build_cmd + "--out " + idx2.string()).code == 0);
  CHECK(slurp(idx1) == slurp(idx2));  // byte-identical builds

  auto query_at = [&](const std::string& pt) {
    return run_cli("query --index " + idx1.string() + " " + pt);
  };
  auto at_station = query_at("0,0");
  CHECK(at_station.code == 0);
  CHECK(at_station.out == "IN 0\n");
  auto far = query_at("100,100");
  CHECK(far.code == 0);
  CHECK(far.out == "OUT\n");
  CHECK(query_at("0,3/10").out == "IN 0\n");
  CHECK(query_at("banana").code == 2);

  auto v = run_cli("verify --net " + net_path.string() + " --trials 50 --angles 16 --index " +
                   idx1.string());
  CHECK(v.code == 0);
  CHECK(v.out.find("[ok]") != std::string::npos);
  CHECK(v.out.find("FAIL") == std::string::npos);
}

TEST_CASE("verify rejects a tampered index") {
  auto d = tmpdir();
  auto net_path = d / "pair2.json";
  write_canonical_pair(net_path);
  auto idx = d / "pair2.idx";
  REQUIRE(run_cli("build --net " + net_path.string() + " --eps 1/4 --out " + idx.string()).code ==
          0);

  // drop half of one column's undecided rows: boundary cells now read as
  // decided, which the exact spot checks must catch
  DiagramIndex loaded = load_index(idx.string());
  std::vector<ZoneIndex> zones = loaded.zones();
  bool cut = false;
  for (auto& z : zones) {
    if (z.degenerate || z.columns.empty()) continue;
    auto mid = z.columns.begin();
    std::advance(mid, z.columns.size() / 2);
    auto& rows = mid->second;
    if (rows.size() >= 2) {
      rows.resize(rows.size() / 2);
      cut = true;
      break;
    }
  }
  REQUIRE(cut);
  DiagramIndex tampered(loaded.network(), loaded.eps(), std::move(zones));
  save_index(tampered, idx.string());

  auto v = run_cli("verify --net " + net_path.string() + " --trials 10 --angles 8 --index " +
                   idx.string());
  CHECK(v.code == 1);
  CHECK(v.out.find("FAIL") != std::string::npos);
}

TEST_CASE("verify: non-convex fixture with --expect-nonconvex") {
  auto d = tmpdir();
  auto net_path = d / "nc.json";
  write_nonconvex_fixture(net_path);
  auto r = run_cli("verify --net " + net_path.string() + " --trials 2000 --seed 7 --expect-nonconvex");
  CHECK(r.code == 0);
  CHECK(r.out.find("witness found") != std::string::npos);
  // without the flag the same search is a failure
  auto r2 = run_cli("verify --net " + net_path.string() + " --trials 2000 --seed 7");
  CHECK(r2.code == 1);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("build --net nowhere.json --eps 2 --out x").code == 2);
  CHECK(run_cli("query --index nowhere.idx 0,0").code == 3);
}

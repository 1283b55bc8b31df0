#pragma once

// Diagram index file: a JSON envelope followed by one trailing CRC-32 line.
// Rationals travel as "p/q" strings, so round-trips are bit-exact.

#include <fstream>
#include <sstream>

#include <json.hpp>
#include <zlib.h>

#include "sinr/diagram.hpp"
#include "sinr/network_io.hpp"

namespace sinr {

namespace detail_io {

inline std::uint32_t crc_of(const std::string& text) {
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(text.data()), static_cast<uInt>(text.size())));
}

inline std::string crc_line(std::uint32_t crc) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08x", crc);
  return std::string("crc32 ") + buf;
}

}  // namespace detail_io

inline nlohmann::json zone_to_json(const ZoneIndex& z, const Network& net) {
  nlohmann::json j;
  j["station"] = z.station;
  j["degenerate"] = z.degenerate;
  const Point& origin = z.grid ? z.grid->origin : net.station(z.station).pos;
  j["origin"] = {rational_to_string(origin.x), rational_to_string(origin.y)};
  j["phi"] = rational_to_string(z.grid ? z.grid->spacing : Rat(0));
  j["delta_lo"] = rational_to_string(z.bounds ? z.bounds->delta_lo : Rat(0));
  j["Delta"] = rational_to_string(z.bounds ? z.bounds->Delta_hi : Rat(0));
  nlohmann::json cols = nlohmann::json::array();
  for (const auto& [col, rows] : z.columns) {
    nlohmann::json cj;
    cj["col"] = col;
    cj["maybe_rows"] = rows;
    cols.push_back(std::move(cj));
  }
  j["columns"] = std::move(cols);
  return j;
}

inline std::string serialize_index(const DiagramIndex& idx) {
  nlohmann::json j;
  j["version"] = 1;
  j["eps"] = rational_to_string(idx.eps());
  j["network"] = network_to_json(idx.network());
  nlohmann::json zones = nlohmann::json::array();
  for (const auto& z : idx.zones()) zones.push_back(zone_to_json(z, idx.network()));
  j["zones"] = std::move(zones);

  std::string body = j.dump();
  return body + "\n" + detail_io::crc_line(detail_io::crc_of(body)) + "\n";
}

inline DiagramIndex deserialize_index(const std::string& bytes) {
  auto cut = bytes.rfind("\ncrc32 ");
  if (cut == std::string::npos) throw std::invalid_argument("index file: missing checksum line");
  std::string body = bytes.substr(0, cut);
  std::string tail = bytes.substr(cut + 1);
  while (!tail.empty() && (tail.back() == '\n' || tail.back() == '\r')) tail.pop_back();
  if (tail != detail_io::crc_line(detail_io::crc_of(body)))
    throw std::invalid_argument("index file: checksum mismatch");

  nlohmann::json j = nlohmann::json::parse(body);
  if (!j.contains("version") || !j["version"].is_number_integer() || j["version"].get<int>() != 1)
    throw std::invalid_argument("index file: unsupported version");
  Network net = network_from_json(j.at("network"));
  Rat eps = parse_rational(j.at("eps").get<std::string>());

  std::vector<ZoneIndex> zones(net.size());
  for (const auto& zj : j.at("zones")) {
    std::size_t station = zj.at("station").get<std::size_t>();
    if (station >= net.size()) throw std::invalid_argument("index file: station out of range");
    ZoneIndex z;
    z.station = station;
    z.eps = eps;
    z.degenerate = zj.at("degenerate").get<bool>();
    if (!z.degenerate) {
      Point origin{parse_rational(zj.at("origin")[0].get<std::string>()),
                   parse_rational(zj.at("origin")[1].get<std::string>())};
      Rat phi = parse_rational(zj.at("phi").get<std::string>());
      z.grid = Grid(origin, phi);
      RadiusBounds rb;
      rb.delta_lo = parse_rational(zj.at("delta_lo").get<std::string>());
      rb.Delta_hi = parse_rational(zj.at("Delta").get<std::string>());
      rb.kappa_sq = net.min_gap_sq(station);
      rb.kappa = sqrt_enclosure(rb.kappa_sq);
      rb.source = RadiusBounds::Source::refined;
      z.bounds = rb;
      for (const auto& cj : zj.at("columns")) {
        auto rows = cj.at("maybe_rows").get<std::vector<std::int64_t>>();
        z.maybe_count += rows.size();
        z.columns[cj.at("col").get<std::int64_t>()] = std::move(rows);
      }
    }
    zones[station] = std::move(z);
  }
  return DiagramIndex(std::move(net), std::move(eps), std::move(zones));
}

inline void save_index(const DiagramIndex& idx, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write index file: " + path);
  out << serialize_index(idx);
  if (!out) throw std::runtime_error("short write on index file: " + path);
}

inline DiagramIndex load_index(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open index file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_index(ss.str());
}

}  // namespace sinr

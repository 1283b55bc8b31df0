#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "sinr/network.hpp"

namespace sinr {

// Network file format (version 1):
// { "version": 1, "beta": "<rational>", "noise": "<rational>",
//   "stations": [ { "x": "...", "y": "...", "power": "..." }, ... ] }
// Rationals are "p/q" or finite decimal strings. Unknown fields are rejected.

inline Rat rational_from_json(const nlohmann::json& v, const char* what) {
  if (!v.is_string())
    throw std::invalid_argument(std::string("network json: ") + what + " must be a rational string");
  return parse_rational(v.get<std::string>());
}

inline Network network_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("network json: root must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k != "version" && k != "beta" && k != "noise" && k != "stations")
      throw std::invalid_argument("network json: unknown field '" + k + "'");
  }
  if (!j.contains("version") || !j["version"].is_number_integer() || j["version"].get<int>() != 1)
    throw std::invalid_argument("network json: unsupported version");
  if (!j.contains("beta") || !j.contains("noise") || !j.contains("stations"))
    throw std::invalid_argument("network json: missing field");
  if (!j["stations"].is_array())
    throw std::invalid_argument("network json: stations must be an array");

  std::vector<Station> stations;
  for (const auto& sj : j["stations"]) {
    if (!sj.is_object()) throw std::invalid_argument("network json: station must be an object");
    for (auto it = sj.begin(); it != sj.end(); ++it) {
      const std::string& k = it.key();
      if (k != "x" && k != "y" && k != "power")
        throw std::invalid_argument("network json: unknown station field '" + k + "'");
    }
    if (!sj.contains("x") || !sj.contains("y"))
      throw std::invalid_argument("network json: station missing coordinate");
    Station st;
    st.pos.x = rational_from_json(sj["x"], "x");
    st.pos.y = rational_from_json(sj["y"], "y");
    st.power = sj.contains("power") ? rational_from_json(sj["power"], "power") : Rat(1);
    stations.push_back(std::move(st));
  }
  return Network(std::move(stations),
                 rational_from_json(j["noise"], "noise"),
                 rational_from_json(j["beta"], "beta"));
}

inline nlohmann::json network_to_json(const Network& net) {
  nlohmann::json j;
  j["version"] = 1;
  j["beta"] = rational_to_string(net.beta());
  j["noise"] = rational_to_string(net.noise());
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& st : net.stations()) {
    nlohmann::json sj;
    sj["x"] = rational_to_string(st.pos.x);
    sj["y"] = rational_to_string(st.pos.y);
    sj["power"] = rational_to_string(st.power);
    arr.push_back(std::move(sj));
  }
  j["stations"] = std::move(arr);
  return j;
}

inline Network load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open network file: " + path);
  nlohmann::json j;
  in >> j;
  return network_from_json(j);
}

inline void save_network(const Network& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write network file: " + path);
  out << network_to_json(net).dump(2) << "\n";
}

}  // namespace sinr

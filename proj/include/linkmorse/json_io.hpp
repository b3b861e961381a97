#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "linkmorse/catalog.hpp"
#include "linkmorse/config.hpp"

namespace linkmorse {

// Writers emit reals with 17 significant digits (lossless for IEEE doubles)
// and a fixed field order, so output bytes are deterministic. Parsing goes
// through nlohmann::json.

inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace detail {

inline std::string reals_json(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_real(values[i]);
  }
  return out + "]";
}

inline std::string vec3_json(const Vec3& v) {
  return "[" + format_real(v.x()) + ", " + format_real(v.y()) + ", " + format_real(v.z()) + "]";
}

inline std::string vec3s_json(const std::vector<Vec3>& vs) {
  std::string out = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i > 0) out += ", ";
    out += vec3_json(vs[i]);
  }
  return out + "]";
}

inline Vec3 vec3_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) throw DimensionMismatch("json: expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace detail

/// Canonical configuration object:
/// {"n": int, "lengths": [real], "edges": [[x,y,z]], "xi": [x,y,z]}.
inline std::string config_to_json(const DecoratedConfiguration& config) {
  std::string out = "{";
  out += "\"n\": " + std::to_string(config.n());
  out += ", \"lengths\": " + detail::reals_json(config.lengths().values());
  out += ", \"edges\": " + detail::vec3s_json(config.edges());
  out += ", \"xi\": " + detail::vec3_json(config.xi());
  return out + "}";
}

inline DecoratedConfiguration config_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  LengthVector lengths(j.at("lengths").get<std::vector<double>>());
  if (lengths.n() != n) throw DimensionMismatch("config json: n does not match lengths");
  std::vector<Vec3> edges;
  for (const auto& e : j.at("edges")) edges.push_back(detail::vec3_from_json(e));
  return make_decorated(std::move(edges), detail::vec3_from_json(j.at("xi")), lengths);
}

inline std::string entry_to_json(const CatalogEntry& entry) {
  std::string out = "{";
  out += "\"signs\": [";
  for (int i = 0; i < entry.ctype.n(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(entry.ctype.signs[static_cast<std::size_t>(i)]);
  }
  out += "]";
  out += ", \"omega\": " + std::to_string(entry.ctype.omega);
  out += ", \"theta\": " + format_real(entry.theta);
  out += ", \"radius\": " + format_real(entry.radius);
  out += ", \"S_value\": " + format_real(entry.s_value);
  out += ", \"index_combinatorial\": " + std::to_string(entry.index_combinatorial);
  out += ", \"index_numeric\": ";
  out += entry.index_numeric ? std::to_string(*entry.index_numeric) : std::string("null");
  out += ", \"vertices\": " + detail::vec3s_json(vertices(entry.config));
  out += ", \"xi\": " + detail::vec3_json(entry.config.xi());
  return out + "}";
}

inline std::string catalog_to_json(const Catalog& catalog) {
  std::string out = "{";
  out += "\"n\": " + std::to_string(catalog.n);
  out += ", \"lengths\": " + detail::reals_json(catalog.lengths.values());
  out += ", \"entries\": [";
  for (std::size_t i = 0; i < catalog.entries.size(); ++i) {
    if (i > 0) out += ",";
    out += "\n  " + entry_to_json(catalog.entries[i]);
  }
  out += "\n]}";
  return out + "\n";
}

inline Catalog catalog_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  LengthVector lengths(j.at("lengths").get<std::vector<double>>());
  Catalog catalog{n, lengths, {}};
  for (const auto& je : j.at("entries")) {
    CyclicType ctype;
    ctype.signs = je.at("signs").get<std::vector<int>>();
    ctype.omega = je.at("omega").get<int>();

    std::vector<Vec3> pts;
    for (const auto& p : je.at("vertices")) pts.push_back(detail::vec3_from_json(p));
    if (static_cast<int>(pts.size()) != n) throw DimensionMismatch("catalog json: bad vertex count");
    std::vector<Vec3> edges(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) edges[i] = pts[(i + 1) % pts.size()] - pts[i];

    CatalogEntry entry{ctype,
                       je.at("theta").get<double>(),
                       je.at("radius").get<double>(),
                       make_decorated(std::move(edges), detail::vec3_from_json(je.at("xi")), lengths),
                       je.at("S_value").get<double>(),
                       je.at("index_combinatorial").get<int>(),
                       std::nullopt};
    if (!je.at("index_numeric").is_null()) entry.index_numeric = je.at("index_numeric").get<int>();
    catalog.entries.push_back(std::move(entry));
  }
  return catalog;
}

inline Catalog catalog_from_json_text(const std::string& text) {
  return catalog_from_json(nlohmann::json::parse(text));
}

}  // namespace linkmorse

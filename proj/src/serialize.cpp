#include "lieth/serialize.hpp"

#include <fstream>

#include "lieth/errors.hpp"

namespace lieth {

Json root_system_json(const RootSystem& rs) {
  Json j;
  j["series"] = std::string(1, series_to_char(rs.series()));
  j["rank"] = rs.rank();
  Json cartan = Json::array();
  for (int i = 0; i < rs.rank(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < rs.rank(); ++k) row.push_back(rs.cartan(i, k));
    cartan.push_back(row);
  }
  j["cartan"] = cartan;
  Json pos = Json::array();
  for (int t = 0; t < rs.num_positive(); ++t) pos.push_back(rs.root(t));
  j["positive"] = pos;
  return j;
}

Json weyl_basis_json(const WeylBasis& wb) {
  const RootSystem& rs = wb.roots();
  Json j = root_system_json(rs);
  Json coroots = Json::array();
  for (int t = 0; t < rs.num_roots(); ++t) coroots.push_back(wb.coroot(t));
  j["coroots"] = coroots;
  Json constants = Json::array();
  for (int a = 0; a < rs.num_roots(); ++a)
    for (int b = 0; b < rs.num_roots(); ++b) {
      if (rs.negative_of(a) == b) continue;
      RootCoords sum = rs.root(a);
      for (int i = 0; i < rs.rank(); ++i) sum[i] += rs.root(b)[i];
      if (!rs.is_root(sum)) continue;
      constants.push_back(Json::array({a, b, wb.m(a, b)}));
    }
  j["constants"] = constants;
  return j;
}

Json satake_json(const SatakeDiagram& sd) {
  sd.validate();
  Json j;
  j["series"] = std::string(1, series_to_char(sd.series));
  j["rank"] = sd.rank;
  Json black = Json::array();
  for (int b : sd.black) black.push_back(b + 1);
  j["black"] = black;
  Json arrows = Json::array();
  for (auto [a, b] : sd.arrows) arrows.push_back(Json::array({a + 1, b + 1}));
  j["arrows"] = arrows;
  return j;
}

SatakeDiagram satake_from_json(const nlohmann::json& j) {
  SatakeDiagram sd;
  try {
    std::string series = j.at("series").get<std::string>();
    if (series.size() != 1) throw ConfigError("series must be a single letter");
    sd.series = series_from_char(series[0]);
    sd.rank = j.at("rank").get<int>();
    if (j.contains("black"))
      for (const auto& b : j.at("black")) sd.black.push_back(b.get<int>() - 1);
    if (j.contains("arrows"))
      for (const auto& a : j.at("arrows")) {
        if (!a.is_array() || a.size() != 2) throw ConfigError("arrow entries must be pairs");
        sd.arrows.push_back({a[0].get<int>() - 1, a[1].get<int>() - 1});
      }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed painted diagram: ") + e.what());
  }
  try {
    sd.validate();
  } catch (const UsageError& e) {
    throw ConfigError(std::string("invalid painted diagram: ") + e.what());
  }
  return sd;
}

SatakeDiagram load_satake_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse '" + path + "': " + e.what());
  }
  return satake_from_json(j);
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string data_path(const std::string& rel) {
  return std::string(LIETH_DATA_DIR) + "/" + rel;
}

}  // namespace lieth

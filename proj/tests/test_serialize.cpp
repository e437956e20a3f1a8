#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "lieth/serialize.hpp"

using namespace lieth;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("painted diagram files round trip") {
  for (const std::string& id : satake_catalog_ids()) {
    CAPTURE(id);
    SatakeDiagram sd = satake_catalog(id);
    CHECK(satake_from_json(satake_json(sd)) == sd);
    CHECK(load_satake_file(data_path("satake/" + id + ".json")) == sd);
  }
}

TEST_CASE("catalog golden files are bit-exact") {
  for (const std::string& id : satake_catalog_ids()) {
    CAPTURE(id);
    std::string want = dump_json(satake_json(satake_catalog(id)));
    CHECK(slurp(data_path("satake/" + id + ".json")) == want);
  }
}

TEST_CASE("root data golden files are bit-exact") {
  struct Entry { Series s; int r; const char* name; };
  for (auto [s, r, name] : {Entry{Series::A, 2, "a2"}, Entry{Series::B, 3, "b3"},
                            Entry{Series::C, 3, "c3"}, Entry{Series::D, 4, "d4"}}) {
    CAPTURE(name);
    WeylBasis wb = WeylBasis::build(RootSystem::build(s, r));
    std::string want = dump_json(weyl_basis_json(wb));
    CHECK(slurp(data_path(std::string("roots/") + name + ".json")) == want);
  }
}

TEST_CASE("root document layout") {
  WeylBasis wb = WeylBasis::build(RootSystem::build(Series::B, 2));
  Json j = weyl_basis_json(wb);
  CHECK(j["series"] == "B");
  CHECK(j["rank"] == 2);
  CHECK(j["positive"].size() == 4);
  CHECK(j["cartan"][0][1] == -2);
  CHECK(j["cartan"][1][0] == -1);
  CHECK(j["coroots"].size() == 8);
  for (const auto& triple : j["constants"]) {
    REQUIRE(triple.size() == 3);
    long long m = triple[2].get<long long>();
    CHECK(m != 0);
    CHECK(std::abs(m) <= 2);
  }
}

TEST_CASE("malformed diagram files") {
  CHECK_THROWS_AS(load_satake_file(data_path("satake/nope.json")), ConfigError);
  CHECK_THROWS_AS(satake_from_json(nlohmann::json::parse(R"({"rank": 2})")), ConfigError);
  CHECK_THROWS_AS(satake_from_json(nlohmann::json::parse(R"({"series": "E", "rank": 6})")),
                  ConfigError);
  CHECK_THROWS_AS(satake_from_json(nlohmann::json::parse(
                      R"({"series": "A", "rank": 2, "black": ["x"]})")),
                  ConfigError);
  CHECK_THROWS_AS(satake_from_json(nlohmann::json::parse(
                      R"({"series": "A", "rank": 3, "black": [2], "arrows": [[1, 2]]})")),
                  ConfigError);
  CHECK_THROWS_AS(satake_from_json(nlohmann::json::parse(
                      R"({"series": "A", "rank": 3, "arrows": [[1, 2, 3]]})")),
                  ConfigError);
}

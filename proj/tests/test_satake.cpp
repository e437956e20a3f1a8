#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "lieth/satake.hpp"

using namespace lieth;

namespace {

WeylBasis basis_for(const SatakeDiagram& sd) {
  return WeylBasis::build(RootSystem::build(sd.series, sd.rank));
}

}  // namespace

TEST_CASE("diagram validation") {
  SatakeDiagram sd;
  sd.series = Series::A;
  sd.rank = 3;
  CHECK_NOTHROW(sd.validate());

  sd.black = {1, 1};
  CHECK_THROWS_AS(sd.validate(), UsageError);
  sd.black = {3};
  CHECK_THROWS_AS(sd.validate(), UsageError);
  sd.black = {1};
  sd.arrows = {{1, 2}};
  CHECK_THROWS_AS(sd.validate(), UsageError);
  sd.arrows = {{0, 0}};
  CHECK_THROWS_AS(sd.validate(), UsageError);
  sd.arrows = {{0, 2}, {2, 0}};
  CHECK_THROWS_AS(sd.validate(), UsageError);
  sd.arrows = {{0, 2}};
  CHECK_NOTHROW(sd.validate());

  CHECK(satake_catalog("su22") == satake_catalog("su22"));
  CHECK_FALSE(satake_catalog("su22") == satake_catalog("sl4r"));
  CHECK_THROWS_AS(satake_catalog("so51"), ConfigError);
}

TEST_CASE("inner classes of the catalog") {
  for (const std::string& id : satake_catalog_ids()) {
    CAPTURE(id);
    SatakeDiagram sd = satake_catalog(id);
    RootSystem rs = RootSystem::build(sd.series, sd.rank);
    DiagramAutomorphism d = satake_inner_class(rs, sd);
    bool split_like = id.size() > 2 && id.substr(0, 2) == "sl";
    if (split_like) {
      CHECK(d == minus_w0_automorphism(rs));
    } else {
      CHECK(d == DiagramAutomorphism::identity(rs.rank()));
    }
  }
}

TEST_CASE("split conjugation is aligned") {
  for (int rank = 1; rank <= 3; ++rank) {
    WeylBasis wb = WeylBasis::build(RootSystem::build(Series::A, rank));
    LinearEndo theta = compact_form_theta(wb);
    IwasawaReport rep = check_iwasawa_form(wb, split_form_eta0(wb), theta);
    CHECK(rep.all());
    CHECK(rep.dim_a_fixed == rank);
    CHECK(rep.sigma0.empty());

    SatakeDiagram sd = extract_satake(wb, split_form_eta0(wb));
    CHECK(sd.black.empty());
    CHECK(sd.arrows.empty());
  }
}

TEST_CASE("compact conjugation extracts to the all-black diagram") {
  WeylBasis wb = WeylBasis::build(RootSystem::build(Series::A, 2));
  LinearEndo theta = compact_form_theta(wb);
  IwasawaReport rep = check_iwasawa_form(wb, theta, theta);
  CHECK(rep.all());
  CHECK(rep.dim_a_fixed == 0);
  CHECK(rep.sigma0 == std::vector<int>{0, 1});

  SatakeDiagram sd = extract_satake(wb, theta);
  CHECK(sd.black == std::vector<int>{0, 1});
  CHECK(sd.arrows.empty());

  SatakeRealization real = tau_from_satake(wb, sd);
  CHECK(real.round_trip == sd);
  CHECK(real.report.dim_a_fixed == 0);
}

TEST_CASE("catalog round trip") {
  for (const std::string& id : satake_catalog_ids()) {
    CAPTURE(id);
    SatakeDiagram sd = satake_catalog(id);
    WeylBasis wb = basis_for(sd);
    SatakeRealization real = tau_from_satake(wb, sd);

    CHECK(real.report.all());
    CHECK(real.round_trip == sd);
    CHECK(real.tau.conjugate_linear);
    CHECK(real.tau.involutive());
    CHECK(real.tau.is_automorphism());
    CHECK(inner_class(wb, real.tau, compact_form_theta(wb)) == real.d);
    CHECK(extract_satake(wb, real.tau) == sd);

    int expected_dim = sd.rank - static_cast<int>(sd.black.size());
    expected_dim -= static_cast<int>(sd.arrows.size());
    CHECK(real.report.dim_a_fixed == expected_dim);
  }
}

TEST_CASE("black root spaces behave compactly") {
  SatakeDiagram sd = satake_catalog("su31");
  WeylBasis wb = basis_for(sd);
  const RootSystem& rs = wb.roots();
  SatakeRealization real = tau_from_satake(wb, sd);
  LinearEndo theta = compact_form_theta(wb);

  for (int t : rs.span_closure(sd.black)) {
    AlgebraElement et = wb.e(t);
    CHECK(real.tau.apply(et) == theta.apply(et));
  }
}

TEST_CASE("quasi-split conjugations already align") {
  for (const std::string& id : {"sl4r", "su22", "su32"}) {
    CAPTURE(id);
    SatakeDiagram sd = satake_catalog(id);
    WeylBasis wb = basis_for(sd);
    const RootSystem& rs = wb.roots();
    SatakeRealization real = tau_from_satake(wb, sd);
    CHECK(real.w0_word.empty());
    LinearEndo td = tau_d(wb, satake_inner_class(rs, sd));
    IwasawaReport rep = check_iwasawa_form(wb, td, compact_form_theta(wb));
    CHECK(rep.all());
    CHECK(extract_satake(wb, td) == sd);
  }
}

TEST_CASE("fixed torus dimensions") {
  std::map<std::string, int> expected = {
      {"sl2r", 1}, {"sl3r", 2}, {"sl4r", 3}, {"sl5r", 4}, {"su11", 1},
      {"su21", 1}, {"su31", 1}, {"su22", 2}, {"su41", 1}, {"su32", 2},
  };
  for (const auto& [id, dim] : expected) {
    CAPTURE(id);
    SatakeDiagram sd = satake_catalog(id);
    WeylBasis wb = basis_for(sd);
    CHECK(tau_from_satake(wb, sd).report.dim_a_fixed == dim);
  }
}

TEST_CASE("mismatched diagram rejected") {
  RootSystem b3 = RootSystem::build(Series::B, 3);
  CHECK_THROWS_AS(satake_inner_class(b3, satake_catalog("sl4r")), UsageError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "lieth/thompson.hpp"

using namespace lieth;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

/// sl2r legs from the single positive value: (t, -t).
OrbitLabel sl2r_label(std::initializer_list<double> ts) {
  OrbitLabel label;
  for (double t : ts) label.legs.push_back(vec({t, -t}));
  return label;
}

OrbitLabel rank1_label(const GroupCatalog& gc, std::initializer_list<double> ts) {
  if (gc.split()) return sl2r_label(ts);
  OrbitLabel label;
  for (double t : ts) label.legs.push_back(vec({t}));
  return label;
}

bool same_trace(const RestartTrace& a, const RestartTrace& b) {
  return a.index == b.index && a.seed == b.seed && a.iters == b.iters &&
         a.residual == b.residual && a.grad_norm == b.grad_norm &&
         a.converged == b.converged && a.diverged == b.diverged;
}

bool same_report(const FeasibilityReport& a, const FeasibilityReport& b) {
  if (a.decision != b.decision || a.best_residual != b.best_residual ||
      a.best_restart != b.best_restart || a.seed != b.seed ||
      a.divergence != b.divergence || a.trace.size() != b.trace.size() ||
      a.witness.size() != b.witness.size())
    return false;
  for (size_t i = 0; i < a.trace.size(); ++i)
    if (!same_trace(a.trace[i], b.trace[i])) return false;
  for (size_t i = 0; i < a.witness.size(); ++i)
    if (a.witness[i] != b.witness[i]) return false;
  return true;
}

}  // namespace

TEST_CASE("leg coordinates are validated") {
  const GroupCatalog& split = group_catalog("sl3r");
  CHECK_THROWS_AS(leg_matrix(split, vec({1.0, -1.0})), UsageError);
  CHECK_THROWS_AS(leg_matrix(split, vec({1.0, 0.5, -1.0})), UsageError);
  CHECK_THROWS_AS(leg_matrix(split, vec({1.0, -1.0, 0.0})), UsageError);
  CHECK_NOTHROW(leg_matrix(split, vec({1.0, 0.0, -1.0})));

  const GroupCatalog& su = group_catalog("su32");
  CHECK_THROWS_AS(leg_matrix(su, vec({1.0})), UsageError);
  CHECK_THROWS_AS(leg_matrix(su, vec({1.0, -0.5})), UsageError);
  CHECK_THROWS_AS(leg_matrix(su, vec({0.5, 1.0})), UsageError);
  CMat lam = leg_matrix(su, vec({1.0, 0.25}));
  CHECK(lam(0, 0) == Cplx(1.0, 0));
  CHECK(lam(1, 1) == Cplx(0.25, 0));
  CHECK(lam(3, 3) == Cplx(-0.25, 0));
  CHECK(lam(4, 4) == Cplx(-1.0, 0));
  CHECK(lam(2, 2) == Cplx(0, 0));
  CHECK(std::abs(lam.trace()) == 0.0);

  OrbitLabel empty;
  CHECK_THROWS_AS(validate_label(su, empty), UsageError);
}

TEST_CASE("invariants recover the leg from any orbit point") {
  Rng rng(11);
  for (const std::string& id : {"sl3r", "su21", "su22", "su32"}) {
    CAPTURE(id);
    const GroupCatalog& gc = group_catalog(id);
    Eigen::VectorXd coords =
        gc.split() ? vec({0.9, 0.1, -1.0}) : vec({1.3, 0.4}).head(gc.q).eval();
    Eigen::VectorXd inv = invariants_of(gc, leg_matrix(gc, coords));
    CHECK((inv - coords).lpNorm<Eigen::Infinity>() < 1e-12);

    for (int trial = 0; trial < 5; ++trial) {
      CMat k = random_k0(gc, rng);
      CMat xi = orbit_point(gc, coords, k);
      auto [ok, dev] = orbit_membership(gc, xi, coords);
      CHECK(ok);
      CHECK(dev < 1e-10);

      CMat b = dressing_orbit_point(gc, coords, k);
      auto [okb, devb] = dressing_membership(gc, b, coords);
      CHECK(okb);
      CHECK(devb < 1e-9);
    }

    Eigen::VectorXd other = coords * 0.5;
    CMat xi = orbit_point(gc, coords, random_k0(gc, rng));
    auto [ok, dev] = orbit_membership(gc, xi, other);
    CHECK_FALSE(ok);
    CHECK(dev > 1e-3);
  }
}

TEST_CASE("membership guards reject points off the real slice") {
  const GroupCatalog& split = group_catalog("sl2r");
  CMat upper = CMat::Zero(2, 2);
  upper(0, 1) = 1.0;
  CHECK_THROWS_AS(orbit_membership(split, upper, vec({1.0, -1.0})), UsageError);
  CMat herm = CMat::Zero(2, 2);
  herm(0, 1) = Cplx(0, 1);
  herm(1, 0) = Cplx(0, -1);
  CHECK_THROWS_AS(orbit_membership(split, herm, vec({1.0, -1.0})), UsageError);

  const GroupCatalog& su = group_catalog("su21");
  Rng rng(3);
  CMat b = random_an(rng, 3);
  CHECK_THROWS_AS(dressing_membership(su, b, vec({1.0})), UsageError);
}

TEST_CASE("zero residual configurations") {
  Rng rng(17);

  SUBCASE("single zero leg sums to zero") {
    const GroupCatalog& gc = group_catalog("su21");
    OrbitLabel label = rank1_label(gc, {0.0});
    std::vector<CMat> ks = {random_k0(gc, rng)};
    CHECK(additive_residual(gc, label, ks) == 0.0);
    CHECK(multiplicative_residual(gc, label, ks) < 1e-12);
  }

  SUBCASE("a quarter turn cancels two equal legs") {
    // Ad of a rotation by theta acts on the orbit plane by 2 theta, so a
    // quarter turn sends diag(t, -t) to its negative.
    const GroupCatalog& gc = group_catalog("sl2r");
    OrbitLabel label = sl2r_label({0.8, 0.8});
    CMat rot = CMat::Zero(2, 2);
    rot(0, 1) = 1.0;
    rot(1, 0) = -1.0;
    std::vector<CMat> ks = {CMat::Identity(2, 2), rot};
    CHECK(additive_residual(gc, label, ks) < 1e-14);
  }

  SUBCASE("a dressing point and its inverse multiply to the identity") {
    const GroupCatalog& gc = group_catalog("sl2r");
    Eigen::VectorXd coords = vec({0.6, -0.6});
    CMat b1 = dressing_orbit_point(gc, coords, random_k0(gc, rng));
    CMat b2 = b1.inverse();
    auto [ok, dev] = dressing_membership(gc, b2, coords);
    CHECK(ok);
    CHECK(multiplicative_residual_bs(gc, {b1, b2}) < 1e-12);
  }
}

TEST_CASE("residual symmetries") {
  Rng rng(23);
  const GroupCatalog& gc = group_catalog("su21");
  OrbitLabel label = rank1_label(gc, {1.0, 0.7, 0.5});
  std::vector<CMat> ks;
  for (int j = 0; j < 3; ++j) ks.push_back(random_k0(gc, rng));

  SUBCASE("additive residual is invariant under the diagonal action") {
    CMat u = random_k0(gc, rng);
    std::vector<CMat> moved;
    for (const CMat& k : ks) moved.push_back(u * k);
    CHECK(additive_residual(gc, label, moved) ==
          doctest::Approx(additive_residual(gc, label, ks)).epsilon(1e-12));
  }

  SUBCASE("both residuals are invariant under leg stabilizers") {
    double add = additive_residual(gc, label, ks);
    double mul = multiplicative_residual(gc, label, ks);
    std::vector<CMat> moved;
    for (int j = 0; j < 3; ++j) {
      std::vector<CMat> stab = stabilizer_basis(gc, leg_matrix(gc, label.legs[j]));
      REQUIRE(!stab.empty());
      CMat m = unitary_exp(rng.uniform(-0.8, 0.8) * stab[0]);
      moved.push_back(ks[j] * m);
    }
    CHECK(additive_residual(gc, label, moved) == doctest::Approx(add).epsilon(1e-10));
    CHECK(multiplicative_residual(gc, label, moved) == doctest::Approx(mul).epsilon(1e-9));
  }
}

TEST_CASE("twisted action preserves dressing orbits and the solution set") {
  Rng rng(31);
  const GroupCatalog& gc = group_catalog("sl2r");
  Eigen::VectorXd coords = vec({0.6, -0.6});
  CMat b1 = dressing_orbit_point(gc, coords, random_k0(gc, rng));
  std::vector<CMat> bs = {b1, b1.inverse()};
  REQUIRE(multiplicative_residual_bs(gc, bs) < 1e-12);

  CMat k = random_k0(gc, rng);
  std::vector<CMat> twisted = twisted_action(k, bs);
  CHECK(multiplicative_residual_bs(gc, twisted) < 1e-10);
  for (const CMat& b : twisted) {
    auto [ok, dev] = dressing_membership(gc, b, coords);
    CHECK(ok);
    CHECK(dev < 1e-9);
  }
}

TEST_CASE("stabilizer basis matches the centralizer dimension") {
  const GroupCatalog& gc = group_catalog("su21");
  CMat generic = leg_matrix(gc, vec({1.0}));
  std::vector<CMat> stab = stabilizer_basis(gc, generic);
  // dim k0 minus the restricted root multiplicities 2 + 1
  CHECK(stab.size() == 1);
  for (const CMat& x : stab)
    CHECK((x * generic - generic * x).norm() < 1e-12);

  CMat zero = CMat::Zero(3, 3);
  CHECK(stabilizer_basis(gc, zero).size() == gc.k0_basis.size());
}

TEST_CASE("rank one closed form rule") {
  const GroupCatalog& sl2 = group_catalog("sl2r");
  CHECK(rank1_oracle(sl2, sl2r_label({1.0, 1.0, 1.0})) == Decision::feasible);
  CHECK(rank1_oracle(sl2, sl2r_label({3.0, 1.0, 1.0})) == Decision::infeasible);
  CHECK(rank1_oracle(sl2, sl2r_label({2.0, 1.0, 1.0})) == Decision::feasible);
  CHECK(rank1_oracle(sl2, sl2r_label({2.0, 0.5, 0.5, 1.0})) == Decision::feasible);
  CHECK(rank1_margin(sl2, sl2r_label({2.0, 1.0, 1.0})) == doctest::Approx(0.0));

  const GroupCatalog& su = group_catalog("su21");
  CHECK(rank1_oracle(su, rank1_label(su, {0.5, 0.5, 0.5})) == Decision::feasible);
  CHECK(rank1_oracle(su, rank1_label(su, {2.0, 0.3, 0.3})) == Decision::infeasible);

  const GroupCatalog& higher = group_catalog("sl3r");
  OrbitLabel label;
  label.legs = {vec({1.0, 0.0, -1.0})};
  CHECK_THROWS_AS(rank1_margin(higher, label), UsageError);
}

TEST_CASE("feasibility search decides clear cases") {
  const GroupCatalog& gc = group_catalog("sl2r");
  FeasibilityConfig cfg;
  cfg.seed = 5;

  SUBCASE("feasible triangle") {
    OrbitLabel label = sl2r_label({0.5, 0.5, 0.5});
    for (Picture pic : {Picture::additive, Picture::multiplicative}) {
      CAPTURE(to_string(pic));
      FeasibilityReport rep = feasibility_search(gc, label, pic, cfg);
      CHECK(rep.decision == Decision::feasible);
      CHECK(rep.best_residual <= cfg.eps_feas);
      REQUIRE(rep.witness.size() == 3);
      double recheck = pic == Picture::additive
                           ? additive_residual(gc, label, rep.witness)
                           : multiplicative_residual(gc, label, rep.witness);
      CHECK(recheck == rep.best_residual);
      // the report stops at the first success, so the winner is last
      CHECK(rep.trace.back().index == rep.best_restart);
      for (size_t i = 0; i < rep.trace.size(); ++i)
        CHECK(rep.trace[i].index == static_cast<int>(i));
    }
  }

  SUBCASE("violated polygon inequality") {
    OrbitLabel label = sl2r_label({1.0, 0.2, 0.2});
    for (Picture pic : {Picture::additive, Picture::multiplicative}) {
      CAPTURE(to_string(pic));
      FeasibilityReport rep = feasibility_search(gc, label, pic, cfg);
      CHECK(rep.decision == Decision::infeasible);
      CHECK(rep.best_residual >= cfg.eps_infeas);
      CHECK(rep.trace.size() == static_cast<size_t>(cfg.restarts));
      CHECK(rep.witness.empty());
    }
    // the additive floor is the deficit of the polygon inequality
    FeasibilityReport rep = feasibility_search(gc, label, Picture::additive, cfg);
    CHECK(rep.best_residual ==
          doctest::Approx(std::sqrt(2.0) * (2.0 * 1.0 - 1.4)).epsilon(1e-4));
  }

  SUBCASE("near-degenerate gap stays undecided") {
    OrbitLabel label = sl2r_label({1.0, 0.5, 0.4995});
    FeasibilityReport rep = feasibility_search(gc, label, Picture::additive, cfg);
    CHECK(rep.decision == Decision::undecided);
    CHECK(rep.best_residual > cfg.eps_feas);
    CHECK(rep.best_residual < cfg.eps_infeas);
  }

  SUBCASE("comparison verdicts") {
    CompareReport agree = thompson_compare(gc, sl2r_label({0.5, 0.5, 0.5}), cfg);
    CHECK(agree.verdict == CompareVerdict::agree_feasible);
    CompareReport tight = thompson_compare(gc, sl2r_label({1.0, 0.2, 0.2}), cfg);
    CHECK(tight.verdict == CompareVerdict::agree_infeasible);
  }

  SUBCASE("config validation") {
    FeasibilityConfig bad = cfg;
    bad.eps_infeas = bad.eps_feas;
    CHECK_THROWS_AS(feasibility_search(gc, sl2r_label({0.5}), Picture::additive, bad),
                    UsageError);
    bad = cfg;
    bad.restarts = 0;
    CHECK_THROWS_AS(feasibility_search(gc, sl2r_label({0.5}), Picture::additive, bad),
                    UsageError);
  }
}

TEST_CASE("search agrees with the rank one rule away from the boundary") {
  const GroupCatalog& gc = group_catalog("su11");
  FeasibilityConfig cfg;
  cfg.seed = 9;
  Rng rng(41);
  int checked = 0;
  while (checked < 8) {
    OrbitLabel label;
    for (int j = 0; j < 3; ++j)
      label.legs.push_back(vec({0.2 + 1.3 * rng.uniform()}));
    double margin = rank1_margin(gc, label);
    if (std::abs(margin) < 0.05) continue;
    ++checked;
    CAPTURE(margin);
    FeasibilityReport rep = feasibility_search(gc, label, Picture::additive, cfg);
    CHECK(rep.decision == rank1_oracle(gc, label));
  }
}

TEST_CASE("reports are deterministic and thread count does not matter") {
  const GroupCatalog& gc = group_catalog("sl2r");
  FeasibilityConfig cfg;
  cfg.seed = 77;
  OrbitLabel feas = sl2r_label({0.5, 0.5, 0.5});
  OrbitLabel infeas = sl2r_label({1.0, 0.2, 0.2});

  for (const OrbitLabel& label : {feas, infeas}) {
    for (Picture pic : {Picture::additive, Picture::multiplicative}) {
      FeasibilityReport first = feasibility_search(gc, label, pic, cfg);
      FeasibilityReport second = feasibility_search(gc, label, pic, cfg);
      CHECK(same_report(first, second));

      setenv("THOMPSON_LIE_THREADS", "4", 1);
      FeasibilityReport parallel = feasibility_search(gc, label, pic, cfg);
      unsetenv("THOMPSON_LIE_THREADS");
      CHECK(same_report(first, parallel));
    }
  }
}

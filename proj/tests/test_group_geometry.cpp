#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lieth/group_maps.hpp"

using namespace lieth;

namespace {

double dist(const CMat& a, const CMat& b) { return (a - b).norm(); }

CMat ident(int n) { return CMat::Identity(n, n); }

/// Rank of the real-linear map b -> directional derivatives of f along the
/// an-frame at the identity, minus the identity map.
int rank_of_dsigma_minus_id(const GroupCatalog& gc, double step = 1e-5) {
  int m = static_cast<int>(gc.an_frame.size());
  int n = gc.n;
  Eigen::MatrixXd jac(2 * n * n, m);
  for (int c = 0; c < m; ++c) {
    CMat plus = sigma_an(gc, an_project(ident(n) + step * gc.an_frame[c]));
    CMat minus = sigma_an(gc, an_project(ident(n) - step * gc.an_frame[c]));
    CMat deriv = (plus - minus) / (2 * step) - gc.an_frame[c];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        jac(2 * (i * n + j), c) = deriv(i, j).real();
        jac(2 * (i * n + j) + 1, c) = deriv(i, j).imag();
      }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
  lu.setThreshold(1e-6);
  return static_cast<int>(lu.rank());
}

}  // namespace

TEST_CASE("catalog construction invariants") {
  for (const std::string& id : group_catalog_ids()) {
    CAPTURE(id);
    const GroupCatalog& gc = group_catalog(id);
    int n = gc.n;
    Rng rng(11);
    CMat g = random_sl(rng, n);

    CHECK(dist(gc.tau(gc.tau(g)), g) < 1e-12);
    CHECK(dist(gc.tau_d(gc.tau_d(g)), g) < 1e-12);

    CMat h = random_sl(rng, n);
    CHECK(dist(gc.tau(g * h), gc.tau(g) * gc.tau(h)) < 1e-10);

    // commutes with the compact conjugation g -> (g†)^{-1}
    CMat lhs = gc.tau(g.adjoint().inverse());
    CHECK(dist(lhs, gc.tau(g).adjoint().inverse()) < 1e-10);

    if (!gc.split()) {
      CHECK(dist(gc.S * gc.S, ident(n)) < 1e-14);
      CHECK(dist(gc.S, gc.S.adjoint()) < 1e-14);
      Eigen::SelfAdjointEigenSolver<CMat> es(gc.S);
      int pos = 0;
      for (int i = 0; i < n; ++i)
        if (es.eigenvalues()[i] > 0) ++pos;
      CHECK(pos == gc.p);

      CHECK(dist(gc.w0 * gc.w0.adjoint(), ident(n)) < 1e-13);
      CHECK(dist(gc.w0 * gc.tau_d(gc.w0), ident(n)) < 1e-12);
      CHECK(dist(gc.tau(g), gc.w0 * gc.tau_d(g) * gc.w0.inverse()) < 1e-11);
    }

    CHECK(static_cast<int>(gc.an_frame.size()) == gc.dim_an);
    CHECK(static_cast<int>(gc.a0_basis.size()) == gc.restricted_rank);
    CHECK(static_cast<int>(gc.a0_basis.size() + gc.n0_basis.size()) == gc.dim_a0n0);
    for (const CMat& x : gc.k0_basis) CHECK(dist(gc.tau_lie(x), x) < 1e-12);
    for (const CMat& x : gc.p0_basis) {
      CHECK(dist(gc.tau_lie(x), x) < 1e-12);
      CHECK(dist(x, x.adjoint()) < 1e-12);
    }
  }
}

TEST_CASE("iwasawa projection") {
  Rng rng(5);
  for (int n : {2, 3, 4}) {
    CAPTURE(n);
    CMat k = random_unitary(rng, n);
    CHECK(dist(an_project(k), ident(n)) < 1e-12);
    CHECK(dist(k_project(k), k) < 1e-12);

    CMat b = random_an(rng, n);
    CHECK(dist(an_project(b), b) < 1e-12);
    CHECK(dist(an_project(b * k), b) < 1e-11);
    CHECK(dist(k_project(b * k), k) < 1e-11);

    for (int trial = 0; trial < 50; ++trial) {
      CMat g = random_sl(rng, n);
      CMat u = an_project(g);
      CMat kk = k_project(g);
      CHECK(dist(u * kk, g) < 1e-11);
      CHECK(dist(kk.adjoint() * kk, ident(n)) < 1e-11);
      for (int i = 0; i < n; ++i) {
        CHECK(u(i, i).real() > 0);
        CHECK(std::abs(u(i, i).imag()) < 1e-13);
        for (int j = 0; j < i; ++j) CHECK(std::abs(u(i, j)) < 1e-13);
      }
    }
  }
}

TEST_CASE("dressing is a left action") {
  Rng rng(7);
  int n = 3;
  for (int trial = 0; trial < 25; ++trial) {
    CMat k1 = random_unitary(rng, n);
    CMat k2 = random_unitary(rng, n);
    CMat b = random_an(rng, n);
    CHECK(dist(dressing(ident(n), b), b) < 1e-13);
    CHECK(dist(dressing(k1, ident(n)), ident(n)) < 1e-13);
    CHECK(dist(dressing(k1 * k2, b), dressing(k1, dressing(k2, b))) < 1e-9);
  }
}

TEST_CASE("E map") {
  Rng rng(13);
  int n = 3;
  CHECK(dist(E_map(CMat::Zero(n, n)), ident(n)) < 1e-14);

  CMat xi = CMat::Zero(2, 2);
  xi(0, 0) = 0.7;
  xi(1, 1) = -0.7;
  CMat b = E_map(xi);
  CHECK(std::abs(b(0, 0).real() - std::exp(0.7)) < 1e-12);
  CHECK(std::abs(b(1, 1).real() - std::exp(-0.7)) < 1e-12);
  CHECK(std::abs(b(0, 1)) < 1e-12);

  for (int trial = 0; trial < 50; ++trial) {
    CMat x = random_p_herm(rng, n);
    CHECK(dist(E_inverse(E_map(x)), x) < 1e-9);
    CMat k = random_unitary(rng, n);
    CHECK(dist(E_map(k * x * k.adjoint()), dressing(k, E_map(x))) < 1e-9);
  }
  CHECK_THROWS_AS(herm_log(-ident(2)), UsageError);
  CHECK_THROWS_AS(E_map(CMat::Random(3, 3)), UsageError);
}

TEST_CASE("sigma involution and fixed set") {
  Rng rng(17);
  for (const std::string& id : {"sl3r", "su21", "su31", "su22"}) {
    CAPTURE(id);
    const GroupCatalog& gc = group_catalog(id);
    for (int trial = 0; trial < 30; ++trial) {
      CMat b = random_an(rng, gc.n);
      CMat sb = sigma_an(gc, b);
      CHECK(dist(sb, sigma_an_dressing(gc, b)) < 1e-10);
      CHECK(dist(sigma_an(gc, sb), b) < 1e-9);

      CMat b0 = random_a0n0(gc, rng);
      CHECK(dist(sigma_an(gc, b0), b0) < 1e-10);

      CMat x0 = random_p0(gc, rng);
      CHECK(dist(sigma_an(gc, E_map(x0)), E_map(x0)) < 1e-9);

      CMat x = random_p_herm(rng, gc.n);
      CHECK(dist(E_map(gc.tau_lie(x)), sigma_an(gc, E_map(x))) < 1e-9);
    }
    CHECK(rank_of_dsigma_minus_id(gc) == gc.dim_an - gc.dim_a0n0);
  }
}

TEST_CASE("split sigma is entrywise conjugation") {
  Rng rng(19);
  const GroupCatalog& gc = group_catalog("sl3r");
  for (int trial = 0; trial < 10; ++trial) {
    CMat b = random_an(rng, 3);
    CHECK(dist(sigma_an(gc, b), b.conjugate()) < 1e-12);
  }
}

TEST_CASE("partial products invert") {
  Rng rng(23);
  int n = 3;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<CMat> bs{random_an(rng, n), random_an(rng, n), random_an(rng, n)};
    std::vector<CMat> cs = nu(bs);
    CHECK(dist(cs[1], bs[0] * bs[1]) < 1e-12);
    std::vector<CMat> back = nu_inverse(cs);
    for (int j = 0; j < 3; ++j) CHECK(dist(back[j], bs[j]) < 1e-12);
  }
  std::vector<CMat> one{random_an(rng, n)};
  CHECK(dist(nu(one)[0], one[0]) < 1e-14);
}

TEST_CASE("twisted action") {
  Rng rng(29);
  int n = 3;
  for (int trial = 0; trial < 20; ++trial) {
    CMat k = random_unitary(rng, n);
    std::vector<CMat> bs{random_an(rng, n), random_an(rng, n), random_an(rng, n)};

    std::vector<CMat> a = twisted_action(k, bs);
    std::vector<CMat> b = twisted_action_steps(k, bs);
    for (int j = 0; j < 3; ++j) CHECK(dist(a[j], b[j]) < 1e-9);

    std::vector<CMat> e = twisted_action(ident(n), bs);
    for (int j = 0; j < 3; ++j) CHECK(dist(e[j], bs[j]) < 1e-12);

    CMat k2 = random_unitary(rng, n);
    std::vector<CMat> lhs = twisted_action(k * k2, bs);
    std::vector<CMat> rhs = twisted_action(k, twisted_action(k2, bs));
    for (int j = 0; j < 3; ++j) CHECK(dist(lhs[j], rhs[j]) < 1e-8);

    std::vector<CMat> single{bs[0]};
    CHECK(dist(twisted_action(k, single)[0], dressing(k, bs[0])) < 1e-12);
  }
}

TEST_CASE("componentwise sigma conjugated by partial products") {
  Rng rng(31);
  for (const std::string& id : {"sl3r", "su21", "su31"}) {
    CAPTURE(id);
    const GroupCatalog& gc = group_catalog(id);
    for (int trial = 0; trial < 15; ++trial) {
      std::vector<CMat> bs{random_an(rng, gc.n), random_an(rng, gc.n), random_an(rng, gc.n)};
      std::vector<CMat> s1 = sigma_l(gc, bs);
      std::vector<CMat> s2 = sigma_l_twisted(gc, bs);
      for (int j = 0; j < 3; ++j) CHECK(dist(s1[j], s2[j]) < 1e-9);

      std::vector<CMat> twice = sigma_l(gc, s1);
      for (int j = 0; j < 3; ++j) CHECK(dist(twice[j], bs[j]) < 1e-8);

      std::vector<CMat> fixed{random_a0n0(gc, rng), random_a0n0(gc, rng),
                              random_a0n0(gc, rng)};
      std::vector<CMat> sf = sigma_l(gc, fixed);
      for (int j = 0; j < 3; ++j) CHECK(dist(sf[j], fixed[j]) < 1e-9);

      std::vector<CMat> one{bs[0]};
      CHECK(dist(sigma_l(gc, one)[0], sigma_an(gc, bs[0])) < 1e-12);
    }
  }
}

TEST_CASE("cartan decomposition") {
  Rng rng(37);
  for (const std::string& id : {"sl3r", "su21", "su31"}) {
    CAPTURE(id);
    const GroupCatalog& gc = group_catalog(id);
    int n = gc.n;

    CMat k0 = random_k0(gc, rng);
    auto [xi_k, kk] = cartan_decompose(gc, k0);
    CHECK(xi_k.norm() < 1e-10);
    CHECK(dist(kk, k0) < 1e-10);

    CMat x0 = random_p0(gc, rng);
    auto [xi_p, kp] = cartan_decompose(gc, herm_exp(x0));
    CHECK(dist(xi_p, x0) < 1e-9);
    CHECK(dist(kp, ident(n)) < 1e-9);

    for (int trial = 0; trial < 20; ++trial) {
      CMat g = herm_exp(random_p0(gc, rng)) * random_k0(gc, rng);
      auto [xi, k] = cartan_decompose(gc, g);
      CHECK(dist(herm_exp(xi) * k, g) < 1e-9);
      CHECK(dist(gc.tau_lie(xi), xi) < 1e-9);
      CHECK(dist(k.adjoint() * k, ident(n)) < 1e-9);
      CHECK(dist(gc.tau(k), k) < 1e-9);
    }

    CHECK_THROWS_AS(cartan_decompose(gc, Cplx(0, 1) * random_p_herm(rng, n) + ident(n)),
                    UsageError);
  }
}

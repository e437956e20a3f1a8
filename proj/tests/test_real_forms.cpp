#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "lieth/real_forms.hpp"
#include "lieth/root_system.hpp"
#include "lieth/weyl_basis.hpp"

using namespace lieth;

namespace {

Rat rat_det(RatMat m) {
  if (m.rows() != m.cols()) throw UsageError("det of non-square");
  int n = m.rows();
  Rat det(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (m.at(r, col) != Rat(0)) { piv = r; break; }
    if (piv < 0) return Rat(0);
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
      det = -det;
    }
    det *= m.at(col, col);
    Rat inv = Rat(1) / m.at(col, col);
    for (int r = col + 1; r < n; ++r) {
      Rat f = m.at(r, col) * inv;
      if (f == Rat(0)) continue;
      for (int j = col; j < n; ++j) m.at(r, j) -= f * m.at(col, j);
    }
  }
  return det;
}

}  // namespace

TEST_CASE("compact conjugation fixes the expected real span") {
  for (auto [s, rank] : std::vector<std::pair<Series, int>>{{Series::A, 2}, {Series::B, 2}}) {
    RootSystem rs = RootSystem::build(s, rank);
    WeylBasis wb = WeylBasis::build(rs);
    LinearEndo th = compact_form_theta(wb);
    CHECK(th.conjugate_linear);
    CHECK(th.involutive());
    CHECK(th.is_automorphism());

    std::vector<AlgebraElement> fixed;
    for (int i = 0; i < rs.rank(); ++i) fixed.push_back(wb.h(i).scaled(QC(Rat(0), Rat(1))));
    for (int t = 0; t < rs.num_positive(); ++t) {
      fixed.push_back(wb.e(t) - wb.e(rs.negative_of(t)));
      fixed.push_back((wb.e(t) + wb.e(rs.negative_of(t))).scaled(QC(Rat(0), Rat(1))));
    }
    for (const auto& x : fixed) CHECK(th.apply(x) == x);

    // Killing form is negative definite there: the basis is orthogonal with
    // strictly negative squares.
    for (size_t a = 0; a < fixed.size(); ++a) {
      for (size_t b = 0; b < fixed.size(); ++b) {
        QC k = wb.killing(fixed[a], fixed[b]);
        CHECK(k.im == Rat(0));
        if (a != b && (a >= static_cast<size_t>(rs.rank()) || b >= static_cast<size_t>(rs.rank())))
          CHECK(k.re == Rat(0));
        if (a == b) CHECK(k.re < Rat(0));
      }
    }
    // The Cartan block of the Killing form is positive definite on the
    // rational span, so all leading minors are positive.
    RatMat hg(rs.rank(), rs.rank());
    for (int i = 0; i < rs.rank(); ++i)
      for (int j = 0; j < rs.rank(); ++j) hg.at(i, j) = wb.killing_gram().at(i, j);
    for (int k = 1; k <= rs.rank(); ++k) {
      RatMat minor(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) minor.at(i, j) = hg.at(i, j);
      CHECK(rat_det(minor) > Rat(0));
    }
  }
}

TEST_CASE("split conjugation is the identity on the rational span") {
  RootSystem rs = RootSystem::build(Series::A, 3);
  WeylBasis wb = WeylBasis::build(rs);
  LinearEndo eta = split_form_eta0(wb);
  CHECK(eta.conjugate_linear);
  CHECK(eta.involutive());
  CHECK(eta.is_automorphism());
  CHECK(eta.mat.is_identity());
  AlgebraElement x = wb.h(0).scaled(QC(Rat(0), Rat(1)));
  CHECK(eta.apply(x) == x.scaled(QC(Rat(-1))));
}

TEST_CASE("diagram automorphism lifts compose as a homomorphism") {
  RootSystem d4 = RootSystem::build(Series::D, 4);
  WeylBasis wb = WeylBasis::build(d4);
  std::vector<DiagramAutomorphism> autos = all_diagram_automorphisms(d4);
  CHECK(autos.size() == 6);  // S3 on the outer nodes of D4
  for (const auto& d1 : autos)
    for (const auto& d2 : autos) {
      LinearEndo lhs = compose(gamma_d(wb, d1), gamma_d(wb, d2));
      LinearEndo rhs = gamma_d(wb, d1.after(d2));
      CHECK(lhs.mat == rhs.mat);
      CHECK_FALSE(lhs.conjugate_linear);
    }
  for (const auto& d : autos) {
    LinearEndo g = gamma_d(wb, d);
    CHECK(g.is_automorphism());
    LinearEndo th = compact_form_theta(wb);
    LinearEndo eta = split_form_eta0(wb);
    CHECK(compose(g, th).mat == compose(th, g).mat);
    CHECK(compose(g, eta).mat == compose(eta, g).mat);
  }
}

TEST_CASE("quasi-split conjugations are involutive and positivity preserving") {
  for (int rank = 1; rank <= 4; ++rank) {
    RootSystem rs = RootSystem::build(Series::A, rank);
    WeylBasis wb = WeylBasis::build(rs);
    LinearEndo th = compact_form_theta(wb);
    for (const auto& d : all_diagram_automorphisms(rs)) {
      if (!d.involutive()) continue;
      LinearEndo td = tau_d(wb, d);
      CHECK(td.conjugate_linear);
      CHECK(td.involutive());
      CHECK(td.is_automorphism());
      // positive root vectors map into the positive block
      for (int t = 0; t < rs.num_positive(); ++t) {
        int col = wb.root_slot(t);
        for (int row = 0; row < wb.dim(); ++row) {
          if (td.mat.at(row, col) == Rat(0)) continue;
          CHECK(row >= rs.rank());
          CHECK(rs.is_positive(wb.root_of_slot(row)));
        }
      }
      CHECK(inner_class(wb, td, th) == d);
    }
  }
}

TEST_CASE("inner class of the basic conjugations") {
  for (auto [s, rank] : std::vector<std::pair<Series, int>>{
           {Series::A, 3}, {Series::B, 2}, {Series::D, 4}}) {
    RootSystem rs = RootSystem::build(s, rank);
    WeylBasis wb = WeylBasis::build(rs);
    LinearEndo th = compact_form_theta(wb);
    LinearEndo eta = split_form_eta0(wb);
    CHECK(inner_class(wb, th, th) == DiagramAutomorphism::identity(rs.rank()));
    CHECK(inner_class(wb, eta, th) == minus_w0_automorphism(rs));
  }
}

TEST_CASE("canonical reflection representatives act correctly") {
  for (auto [s, rank] : std::vector<std::pair<Series, int>>{{Series::A, 2}, {Series::B, 2}}) {
    RootSystem rs = RootSystem::build(s, rank);
    WeylBasis wb = WeylBasis::build(rs);
    for (int i = 0; i < rs.rank(); ++i) {
      RatMat w = simple_reflection_adjoint(wb, i);
      // h_j -> h_j - cartan(i, j) h_i
      for (int j = 0; j < rs.rank(); ++j) {
        RatVec col(wb.dim(), Rat(0));
        for (int row = 0; row < wb.dim(); ++row) col[row] = w.at(row, j);
        for (int row = rs.rank(); row < wb.dim(); ++row) CHECK(col[row] == Rat(0));
        RatVec expect(rs.rank(), Rat(0));
        expect[j] += Rat(1);
        expect[i] -= Rat(rs.cartan(i, j));
        for (int row = 0; row < rs.rank(); ++row) CHECK(col[row] == expect[row]);
      }
      // e_i -> -f_i and root spaces permute by the reflection
      int ei = wb.root_slot(rs.simple_root(i));
      int fi = wb.root_slot(rs.negative_of(rs.simple_root(i)));
      CHECK(w.at(fi, ei) == Rat(-1));
      for (int t = 0; t < rs.num_roots(); ++t) {
        int col = wb.root_slot(t);
        int target = wb.root_slot(rs.reflect(i, t));
        for (int row = 0; row < wb.dim(); ++row) {
          if (w.at(row, col) == Rat(0)) continue;
          CHECK(row == target);
          CHECK((w.at(row, col) == Rat(1) || w.at(row, col) == Rat(-1)));
        }
      }
    }
    // The longest word lifts to a monomial matrix squaring to a sign torus.
    RatMat w0 = weyl_adjoint(wb, rs.longest_word());
    RatMat sq = w0 * w0;
    for (int i = 0; i < wb.dim(); ++i)
      for (int j = 0; j < wb.dim(); ++j) {
        if (i == j)
          CHECK((sq.at(i, j) == Rat(1) || sq.at(i, j) == Rat(-1)));
        else
          CHECK(sq.at(i, j) == Rat(0));
      }
  }
}

TEST_CASE("inner class rejects maps that do not permute root spaces") {
  RootSystem rs = RootSystem::build(Series::A, 2);
  WeylBasis wb = WeylBasis::build(rs);
  LinearEndo th = compact_form_theta(wb);
  LinearEndo broken = th;
  broken.conjugate_linear = true;
  broken.mat.at(wb.root_slot(0), 0) = Rat(1);  // smear a Cartan direction into a root space
  CHECK_THROWS_AS(inner_class(wb, broken, th), UsageError);
}

#include "lieth/satake.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lieth {

void SatakeDiagram::validate() const {
  if (rank < 1 || rank > 6) throw UsageError("satake diagram rank out of range");
  std::set<int> painted;
  for (int b : black) {
    if (b < 0 || b >= rank) throw UsageError("black node out of range");
    if (!painted.insert(b).second) throw UsageError("repeated black node");
  }
  std::set<int> in_arrow;
  for (auto [i, j] : arrows) {
    if (i < 0 || i >= rank || j < 0 || j >= rank) throw UsageError("arrow endpoint out of range");
    if (i == j) throw UsageError("arrow must join two distinct nodes");
    if (painted.count(i) || painted.count(j)) throw UsageError("arrow touches a black node");
    if (!in_arrow.insert(i).second || !in_arrow.insert(j).second)
      throw UsageError("node lies on two arrows");
  }
}

bool SatakeDiagram::is_black(int i) const {
  return std::find(black.begin(), black.end(), i) != black.end();
}

bool SatakeDiagram::operator==(const SatakeDiagram& o) const {
  auto canon = [](const SatakeDiagram& s) {
    std::vector<int> b = s.black;
    std::sort(b.begin(), b.end());
    std::vector<std::pair<int, int>> a;
    for (auto [i, j] : s.arrows) a.push_back({std::min(i, j), std::max(i, j)});
    std::sort(a.begin(), a.end());
    return std::make_tuple(s.series, s.rank, b, a);
  };
  return canon(*this) == canon(o);
}

DiagramAutomorphism satake_inner_class(const RootSystem& rs, const SatakeDiagram& sd) {
  sd.validate();
  if (sd.series != rs.series() || sd.rank != rs.rank())
    throw UsageError("painted diagram does not match the root system");

  std::vector<int> c(rs.rank(), -1);
  // Black subsystem: -w0 of the parabolic acting on its simple roots.
  std::vector<int> delta0 = rs.span_closure(sd.black);
  WeylWord w0 = rs.subset_longest_element(delta0);
  for (int i : sd.black) {
    int img = rs.act(w0, rs.simple_root(i));
    int slot = rs.simple_slot(rs.negative_of(img));
    if (slot < 0) throw UsageError("black subsystem longest element is not diagram-shaped");
    c[i] = slot;
  }
  for (int i = 0; i < rs.rank(); ++i) {
    if (sd.is_black(i)) continue;
    c[i] = i;
  }
  for (auto [i, j] : sd.arrows) {
    c[i] = j;
    c[j] = i;
  }
  DiagramAutomorphism cmap = make_diagram_automorphism(rs, std::move(c));
  if (!cmap.involutive()) throw UsageError("painted diagram pairing is not involutive");
  DiagramAutomorphism d = minus_w0_automorphism(rs).after(cmap);
  if (!d.involutive()) throw UsageError("painted diagram has non-involutive inner class");
  return d;
}

namespace {

// Real coordinates (real block, imaginary block) of exact complex vectors.
RatVec to_real(const QCVec& c) {
  RatVec v(2 * c.size());
  for (size_t i = 0; i < c.size(); ++i) {
    v[i] = c[i].re;
    v[c.size() + i] = c[i].im;
  }
  return v;
}

QCVec to_complex(const RatVec& v) {
  size_t d = v.size() / 2;
  QCVec c(d);
  for (size_t i = 0; i < d; ++i) c[i] = QC(v[i], v[d + i]);
  return c;
}

RatMat real_matrix(const LinearEndo& f) {
  int d = f.mat.rows();
  RatMat m(2 * d, 2 * d);
  Rat s = f.conjugate_linear ? Rat(-1) : Rat(1);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      m.at(i, j) = f.mat.at(i, j);
      m.at(d + i, d + j) = s * f.mat.at(i, j);
    }
  return m;
}

// Basis of the -1 eigenspace of the compact conjugation, as exact elements:
// the h_j, then e_t + e_{-t} and i(e_t - e_{-t}) per positive root.
std::vector<AlgebraElement> p_basis(const WeylBasis& wb) {
  const RootSystem& rs = wb.roots();
  std::vector<AlgebraElement> out;
  for (int i = 0; i < rs.rank(); ++i) out.push_back(wb.h(i));
  for (int t = 0; t < rs.num_positive(); ++t) {
    out.push_back(wb.e(t) + wb.e(rs.negative_of(t)));
    out.push_back((wb.e(t) - wb.e(rs.negative_of(t))).scaled(QC(Rat(0), Rat(1))));
  }
  return out;
}

// tau as a functional action on the dual of a: row vector F -> F . A,
// where A is the Cartan block and F the coroot evaluation vector.
RatVec dual_action(const RootSystem& rs, const RatMat& a_block, int root_idx) {
  RatVec w(rs.rank(), Rat(0));
  for (int j = 0; j < rs.rank(); ++j)
    for (int k = 0; k < rs.rank(); ++k)
      w[j] += a_block.at(k, j) * Rat(rs.pair_coroot(root_idx, k));
  return w;
}

int functional_to_root(const RootSystem& rs, const RatVec& w) {
  for (int t = 0; t < rs.num_roots(); ++t) {
    bool match = true;
    for (int j = 0; j < rs.rank() && match; ++j)
      if (Rat(rs.pair_coroot(t, j)) != w[j]) match = false;
    if (match) return t;
  }
  return -1;
}

}  // namespace

IwasawaReport check_iwasawa_form(const WeylBasis& wb, const LinearEndo& tau,
                                 const LinearEndo& theta) {
  if (tau.algebra != &wb || theta.algebra != &wb)
    throw UsageError("maps do not belong to the given algebra");
  const RootSystem& rs = wb.roots();
  int r = rs.rank();
  IwasawaReport rep;

  rep.involution_ok = tau.conjugate_linear && tau.involutive() && tau.is_automorphism();
  rep.commutes_with_theta = compose(tau, theta).mat == compose(theta, tau).mat;

  rep.preserves_a = true;
  for (int j = 0; j < r; ++j)
    for (int row = r; row < wb.dim(); ++row)
      if (tau.mat.at(row, j) != Rat(0)) rep.preserves_a = false;
  if (!rep.preserves_a) return rep;

  RatMat a_block(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) a_block.at(i, j) = tau.mat.at(i, j);

  // Fixed part of a.
  RatMat am = a_block - RatMat::identity(r);
  std::vector<RatVec> a_fixed = am.kernel();
  rep.dim_a_fixed = static_cast<int>(a_fixed.size());

  // Fixed part of p: solve (T - 1) B c = 0 over the p basis.
  std::vector<AlgebraElement> pb = p_basis(wb);
  RatMat T = real_matrix(tau);
  int n2 = T.rows();
  RatMat TB(n2, static_cast<int>(pb.size()));
  for (size_t c = 0; c < pb.size(); ++c) {
    RatVec col = to_real(pb[c].coords);
    RatVec img = T.apply(col);
    for (int i = 0; i < n2; ++i) TB.at(i, static_cast<int>(c)) = img[i] - col[i];
  }
  std::vector<RatVec> p_fixed_coeffs = TB.kernel();

  std::vector<AlgebraElement> a_fixed_elems;
  for (const auto& v : a_fixed) {
    QCVec c(wb.dim());
    for (int i = 0; i < r; ++i) c[i] = QC(v[i]);
    a_fixed_elems.push_back(wb.from_coords(std::move(c)));
  }

  // Centralizer of the fixed part of a inside the fixed part of p.
  int m = static_cast<int>(p_fixed_coeffs.size());
  if (m == 0) {
    rep.a_fixed_maximal = a_fixed.empty();
  } else {
    std::vector<AlgebraElement> w_elems;
    for (const auto& coeffs : p_fixed_coeffs) {
      AlgebraElement w = wb.zero();
      for (size_t j = 0; j < pb.size(); ++j)
        if (coeffs[j] != Rat(0)) w = w + pb[j].scaled(QC(coeffs[j]));
      w_elems.push_back(w);
    }
    RatMat constraints(n2 * std::max<int>(1, rep.dim_a_fixed), m);
    for (int k = 0; k < rep.dim_a_fixed; ++k)
      for (int j = 0; j < m; ++j) {
        RatVec br = to_real(wb.bracket(w_elems[j], a_fixed_elems[k]).coords);
        for (int i = 0; i < n2; ++i) constraints.at(k * n2 + i, j) = br[i];
      }
    int centralizer_dim =
        rep.dim_a_fixed == 0 ? m : static_cast<int>(constraints.kernel().size());
    rep.a_fixed_maximal = centralizer_dim == rep.dim_a_fixed;
  }

  // Positivity of roots not vanishing on the fixed part of a, and the set
  // of simple roots that restrict to zero.
  rep.positivity = true;
  std::vector<RatVec> a_fixed_h = a_fixed;  // h coordinates
  auto restricted_zero = [&](int t) {
    for (const auto& v : a_fixed_h) {
      Rat val(0);
      for (int j = 0; j < r; ++j) val += Rat(rs.pair_coroot(t, j)) * v[j];
      if (val != Rat(0)) return false;
    }
    return true;
  };
  for (int t = 0; t < rs.num_positive(); ++t) {
    RatVec w = dual_action(rs, a_block, t);
    int img = functional_to_root(rs, w);
    if (restricted_zero(t)) continue;
    if (img < 0 || !rs.is_positive(img)) rep.positivity = false;
  }
  for (int i = 0; i < r; ++i) {
    RatVec w = dual_action(rs, a_block, rs.simple_root(i));
    int img = functional_to_root(rs, w);
    if (img >= 0 && img == rs.negative_of(rs.simple_root(i))) rep.sigma0.push_back(i);
  }
  return rep;
}

SatakeDiagram extract_satake(const WeylBasis& wb, const LinearEndo& tau) {
  const RootSystem& rs = wb.roots();
  LinearEndo theta = compact_form_theta(wb);
  IwasawaReport rep = check_iwasawa_form(wb, tau, theta);
  if (!rep.all()) throw UsageError("conjugation is not aligned; cannot extract a painted diagram");

  SatakeDiagram sd;
  sd.series = rs.series();
  sd.rank = rs.rank();
  sd.black = rep.sigma0;
  std::sort(sd.black.begin(), sd.black.end());

  int r = rs.rank();
  RatMat a_block(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) a_block.at(i, j) = tau.mat.at(i, j);
  // Express the dual image of each white simple root over the simple
  // functionals and read off its white component.
  RatMat S(r, r);
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < r; ++k) S.at(k, j) = Rat(rs.cartan(j, k));  // column j: functional of alpha_j
  std::set<int> black(sd.black.begin(), sd.black.end());
  std::set<std::pair<int, int>> arrows;
  for (int i = 0; i < r; ++i) {
    if (black.count(i)) continue;
    RatVec w = dual_action(rs, a_block, rs.simple_root(i));
    RatVec coeff = solve_linear(S, w);
    int partner = -1;
    for (int j = 0; j < r; ++j) {
      if (black.count(j)) continue;
      if (coeff[j] == Rat(0)) continue;
      if (coeff[j] != Rat(1) || partner >= 0)
        throw NumericalError("dual action does not define an arrow pairing");
      partner = j;
    }
    if (partner < 0) throw NumericalError("white simple root has no white image");
    if (partner != i) arrows.insert({std::min(i, partner), std::max(i, partner)});
  }
  sd.arrows.assign(arrows.begin(), arrows.end());
  sd.validate();
  return sd;
}

SatakeRealization tau_from_satake(const WeylBasis& wb, const SatakeDiagram& sd) {
  const RootSystem& rs = wb.roots();
  DiagramAutomorphism d = satake_inner_class(rs, sd);
  LinearEndo theta = compact_form_theta(wb);
  LinearEndo td = tau_d(wb, d);
  WeylWord w0 = rs.subset_longest_element(rs.span_closure(sd.black));
  RatMat W = weyl_adjoint(wb, w0);
  RatMat base = W * td.mat;

  int r = rs.rank();
  for (uint32_t mask = 0; mask < (1u << r); ++mask) {
    RatMat M = base;
    if (mask) {
      for (int t = 0; t < rs.num_roots(); ++t) {
        int parity = 0;
        for (int i = 0; i < r; ++i)
          if (mask & (1u << i)) parity += rs.root(t)[i];
        if (parity % 2 != 0) {
          int row = wb.root_slot(t);
          for (int col = 0; col < wb.dim(); ++col) M.at(row, col) = -M.at(row, col);
        }
      }
    }
    LinearEndo cand;
    cand.algebra = &wb;
    cand.conjugate_linear = true;
    cand.mat = M;
    cand.label = "tau";
    if (!cand.involutive()) continue;
    IwasawaReport rep = check_iwasawa_form(wb, cand, theta);
    if (!rep.all()) continue;
    SatakeDiagram back = extract_satake(wb, cand);
    if (!(back == sd)) continue;
    if (!cand.is_automorphism())
      throw NumericalError("candidate conjugation is not an automorphism");
    SatakeRealization out;
    out.tau = cand;
    out.d = d;
    out.w0_word = w0;
    out.sign_mask = mask;
    out.round_trip = back;
    out.report = rep;
    return out;
  }
  throw NumericalError("no sign character realizes the painted diagram");
}

std::vector<std::string> satake_catalog_ids() {
  return {"sl2r", "sl3r", "sl4r", "sl5r", "su11", "su21", "su31", "su22", "su41", "su32"};
}

SatakeDiagram satake_catalog(const std::string& id) {
  SatakeDiagram sd;
  sd.series = Series::A;
  if (id == "sl2r") sd.rank = 1;
  else if (id == "sl3r") sd.rank = 2;
  else if (id == "sl4r") sd.rank = 3;
  else if (id == "sl5r") sd.rank = 4;
  else if (id == "su11") sd.rank = 1;
  else if (id == "su21") { sd.rank = 2; sd.arrows = {{0, 1}}; }
  else if (id == "su31") { sd.rank = 3; sd.black = {1}; sd.arrows = {{0, 2}}; }
  else if (id == "su22") { sd.rank = 3; sd.arrows = {{0, 2}}; }
  else if (id == "su41") { sd.rank = 4; sd.black = {1, 2}; sd.arrows = {{0, 3}}; }
  else if (id == "su32") { sd.rank = 4; sd.arrows = {{0, 3}, {1, 2}}; }
  else throw ConfigError("unknown catalog id '" + id + "'");
  sd.validate();
  return sd;
}

}  // namespace lieth

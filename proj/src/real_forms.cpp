#include "lieth/real_forms.hpp"

#include <algorithm>
#include <numeric>

namespace lieth {

AlgebraElement LinearEndo::apply(const AlgebraElement& x) const {
  if (x.algebra != algebra) throw UsageError("element does not belong to the map's algebra");
  QCVec out = conjugate_linear ? mat.apply_conj(x.coords) : mat.apply(x.coords);
  return AlgebraElement{algebra, std::move(out)};
}

bool LinearEndo::involutive() const {
  // The matrix is real, so both the linear and the conjugate-linear case
  // reduce to mat * mat == id.
  return (mat * mat).is_identity();
}

bool LinearEndo::is_automorphism() const {
  const WeylBasis& wb = *algebra;
  int d = wb.dim();
  for (int k1 = 0; k1 < d; ++k1)
    for (int k2 = k1 + 1; k2 < d; ++k2) {
      RatVec lhs(d, Rat(0));
      for (const auto& [slot, c] : wb.bracket_slots(k1, k2))
        for (int i = 0; i < d; ++i) lhs[i] += mat.at(i, slot) * c;
      RatVec rhs(d, Rat(0));
      for (int s1 = 0; s1 < d; ++s1) {
        if (mat.at(s1, k1) == Rat(0)) continue;
        for (int s2 = 0; s2 < d; ++s2) {
          if (mat.at(s2, k2) == Rat(0)) continue;
          Rat f = mat.at(s1, k1) * mat.at(s2, k2);
          for (const auto& [slot, c] : wb.bracket_slots(s1, s2)) rhs[slot] += f * c;
        }
      }
      if (lhs != rhs) return false;
    }
  return true;
}

bool LinearEndo::is_monomial() const {
  const WeylBasis& wb = *algebra;
  int r = wb.roots().rank();
  int d = wb.dim();
  for (int i = 0; i < r; ++i)
    for (int row = r; row < d; ++row)
      if (mat.at(row, i) != Rat(0)) return false;
  for (int t = 0; t < wb.roots().num_roots(); ++t) {
    int col = wb.root_slot(t);
    int hits = 0;
    for (int row = 0; row < d; ++row) {
      if (mat.at(row, col) == Rat(0)) continue;
      if (row < r) return false;
      ++hits;
    }
    if (hits != 1) return false;
  }
  return true;
}

LinearEndo compose(const LinearEndo& f, const LinearEndo& g) {
  if (f.algebra != g.algebra) throw UsageError("composing maps over different algebras");
  LinearEndo r;
  r.algebra = f.algebra;
  r.conjugate_linear = f.conjugate_linear != g.conjugate_linear;
  r.mat = f.mat * g.mat;
  r.label = f.label + "*" + g.label;
  return r;
}

DiagramAutomorphism DiagramAutomorphism::identity(int rank) {
  DiagramAutomorphism d;
  d.perm.resize(rank);
  std::iota(d.perm.begin(), d.perm.end(), 0);
  return d;
}

bool DiagramAutomorphism::involutive() const {
  for (int i = 0; i < rank(); ++i)
    if (perm[perm[i]] != i) return false;
  return true;
}

DiagramAutomorphism DiagramAutomorphism::after(const DiagramAutomorphism& o) const {
  if (rank() != o.rank()) throw UsageError("diagram automorphism rank mismatch");
  DiagramAutomorphism d;
  d.perm.resize(rank());
  for (int i = 0; i < rank(); ++i) d.perm[i] = perm[o.perm[i]];
  return d;
}

DiagramAutomorphism make_diagram_automorphism(const RootSystem& rs, std::vector<int> perm) {
  if (static_cast<int>(perm.size()) != rs.rank())
    throw UsageError("diagram automorphism has wrong rank");
  std::vector<bool> hit(rs.rank(), false);
  for (int v : perm) {
    if (v < 0 || v >= rs.rank() || hit[v]) throw UsageError("not a permutation of the simple roots");
    hit[v] = true;
  }
  for (int i = 0; i < rs.rank(); ++i)
    for (int j = 0; j < rs.rank(); ++j)
      if (rs.cartan(perm[i], perm[j]) != rs.cartan(i, j))
        throw UsageError("permutation does not preserve the Cartan matrix");
  DiagramAutomorphism d;
  d.perm = std::move(perm);
  return d;
}

std::vector<DiagramAutomorphism> all_diagram_automorphisms(const RootSystem& rs) {
  std::vector<int> perm(rs.rank());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<DiagramAutomorphism> out;
  do {
    bool ok = true;
    for (int i = 0; i < rs.rank() && ok; ++i)
      for (int j = 0; j < rs.rank() && ok; ++j)
        if (rs.cartan(perm[i], perm[j]) != rs.cartan(i, j)) ok = false;
    if (ok) out.push_back(DiagramAutomorphism{perm});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

DiagramAutomorphism minus_w0_automorphism(const RootSystem& rs) {
  std::vector<int> perm(rs.rank());
  for (int i = 0; i < rs.rank(); ++i) perm[i] = rs.minus_w0(i);
  return make_diagram_automorphism(rs, std::move(perm));
}

LinearEndo compact_form_theta(const WeylBasis& wb) {
  int d = wb.dim();
  int r = wb.roots().rank();
  LinearEndo f;
  f.algebra = &wb;
  f.conjugate_linear = true;
  f.label = "theta";
  f.mat = RatMat(d, d);
  for (int i = 0; i < r; ++i) f.mat.at(i, i) = Rat(-1);
  for (int t = 0; t < wb.roots().num_roots(); ++t)
    f.mat.at(wb.root_slot(wb.roots().negative_of(t)), wb.root_slot(t)) = Rat(-1);
  return f;
}

LinearEndo split_form_eta0(const WeylBasis& wb) {
  LinearEndo f;
  f.algebra = &wb;
  f.conjugate_linear = true;
  f.label = "eta0";
  f.mat = RatMat::identity(wb.dim());
  return f;
}

namespace {

int map_root(const RootSystem& rs, const DiagramAutomorphism& d, int t) {
  RootCoords c(rs.rank(), 0);
  for (int i = 0; i < rs.rank(); ++i) c[d(i)] = rs.root(t)[i];
  int idx = rs.root_index(c);
  if (idx < 0) throw NumericalError("diagram automorphism image is not a root");
  return idx;
}

}  // namespace

LinearEndo gamma_d(const WeylBasis& wb, const DiagramAutomorphism& d) {
  const RootSystem& rs = wb.roots();
  if (d.rank() != rs.rank()) throw UsageError("diagram automorphism rank mismatch");
  int r = rs.rank();
  int dim = wb.dim();

  LinearEndo f;
  f.algebra = &wb;
  f.conjugate_linear = false;
  f.label = "gamma_d";
  f.mat = RatMat(dim, dim);

  // Cartan block: h_i -> h_{d(i)}.
  for (int i = 0; i < r; ++i) f.mat.at(d(i), i) = Rat(1);

  // Signs on the root vectors, propagated through the first decomposition of
  // each positive root.  sign[t] with image map_root(t).
  std::vector<Rat> sign(rs.num_roots(), Rat(0));
  for (int i = 0; i < r; ++i) {
    sign[rs.simple_root(i)] = Rat(1);
    sign[rs.negative_of(rs.simple_root(i))] = Rat(1);
  }
  for (int t = 0; t < rs.num_positive(); ++t) {
    if (rs.height(t) < 2) continue;
    int eps = -1, phi = -1;
    for (int a = 0; a < rs.num_positive(); ++a) {
      RootCoords rest = rs.root(t);
      for (int k = 0; k < r; ++k) rest[k] -= rs.root(a)[k];
      int b = rs.root_index(rest);
      if (b >= 0 && rs.is_positive(b)) {
        eps = a;
        phi = b;
        break;
      }
    }
    Rat ratio = Rat(wb.m(map_root(rs, d, eps), map_root(rs, d, phi))) / Rat(wb.m(eps, phi));
    sign[t] = sign[eps] * sign[phi] * ratio;
    int tn = rs.negative_of(t);
    int en = rs.negative_of(eps), pn = rs.negative_of(phi);
    Rat ration = Rat(wb.m(map_root(rs, d, en), map_root(rs, d, pn))) / Rat(wb.m(en, pn));
    sign[tn] = sign[en] * sign[pn] * ration;
  }
  for (int t = 0; t < rs.num_roots(); ++t) {
    if (sign[t] != Rat(1) && sign[t] != Rat(-1))
      throw NumericalError("sign propagation produced a non-unit scalar");
    f.mat.at(wb.root_slot(map_root(rs, d, t)), wb.root_slot(t)) = sign[t];
  }
  return f;
}

LinearEndo tau_d(const WeylBasis& wb, const DiagramAutomorphism& d) {
  if (!d.involutive()) throw UsageError("tau_d needs an involutive diagram automorphism");
  DiagramAutomorphism c = minus_w0_automorphism(wb.roots()).after(d);
  LinearEndo f = compose(split_form_eta0(wb), gamma_d(wb, c));
  f.label = "tau_d";
  return f;
}

namespace {

RatMat ad_matrix(const WeylBasis& wb, int slot, const Rat& scale) {
  int d = wb.dim();
  RatMat m(d, d);
  for (int k = 0; k < d; ++k)
    for (const auto& [row, c] : wb.bracket_slots(slot, k)) m.at(row, k) = scale * c;
  return m;
}

RatMat exp_nilpotent(const RatMat& a) {
  int d = a.rows();
  RatMat sum = RatMat::identity(d);
  RatMat term = RatMat::identity(d);
  for (int k = 1; k <= d + 1; ++k) {
    term = (term * a).scaled(Rat(1, k));
    if (term.is_zero()) break;
    sum = sum + term;
    if (k == d + 1) throw NumericalError("ad matrix is not nilpotent");
  }
  return sum;
}

}  // namespace

RatMat simple_reflection_adjoint(const WeylBasis& wb, int i) {
  const RootSystem& rs = wb.roots();
  int es = wb.root_slot(rs.simple_root(i));
  int fs = wb.root_slot(rs.negative_of(rs.simple_root(i)));
  RatMat eplus = exp_nilpotent(ad_matrix(wb, es, Rat(1)));
  RatMat fminus = exp_nilpotent(ad_matrix(wb, fs, Rat(-1)));
  return eplus * fminus * eplus;
}

RatMat weyl_adjoint(const WeylBasis& wb, const WeylWord& w) {
  RatMat m = RatMat::identity(wb.dim());
  for (int i : w) m = m * simple_reflection_adjoint(wb, i);
  return m;
}

DiagramAutomorphism inner_class(const WeylBasis& wb, const LinearEndo& tau,
                                const LinearEndo& theta) {
  if (tau.algebra != theta.algebra || tau.algebra != &wb)
    throw UsageError("inner_class: maps over different algebras");
  LinearEndo phi = compose(tau, theta);
  if (phi.conjugate_linear)
    throw UsageError("inner_class expects two conjugations");
  if (!phi.is_monomial())
    throw UsageError("inner_class: composition does not permute the root spaces");

  const RootSystem& rs = wb.roots();
  // Root permutation of tau theta.
  std::vector<int> pi(rs.num_roots(), -1);
  for (int t = 0; t < rs.num_roots(); ++t) {
    int col = wb.root_slot(t);
    for (int row = rs.rank(); row < wb.dim(); ++row)
      if (phi.mat.at(row, col) != Rat(0)) pi[t] = wb.root_of_slot(row);
  }

  // Walk the image positive system back to the standard one.
  std::vector<int> image(pi.begin(), pi.begin() + rs.num_positive());
  WeylWord word;
  for (int guard = 0; guard <= rs.num_positive(); ++guard) {
    int bad = -1;
    for (int i = 0; i < rs.rank() && bad < 0; ++i) {
      int target = rs.negative_of(rs.simple_root(i));
      for (int t : image)
        if (t == target) {
          bad = i;
          break;
        }
    }
    if (bad < 0) break;
    for (int& t : image) t = rs.reflect(bad, t);
    word.push_back(bad);
  }
  for (int t : image)
    if (!rs.is_positive(t)) throw NumericalError("inner_class walk did not terminate");

  std::vector<int> perm(rs.rank(), -1);
  for (int i = 0; i < rs.rank(); ++i) {
    // Apply the walk, earliest reflection first, to the permuted simple root.
    int t = pi[rs.simple_root(i)];
    for (auto it = word.begin(); it != word.end(); ++it) t = rs.reflect(*it, t);
    int slot = rs.simple_slot(t);
    if (slot < 0) throw NumericalError("inner_class image of a simple root is not simple");
    perm[i] = slot;
  }
  return make_diagram_automorphism(rs, std::move(perm));
}

}  // namespace lieth

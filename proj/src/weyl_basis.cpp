#include "lieth/weyl_basis.hpp"

#include <map>

namespace lieth {

bool AlgebraElement::is_zero() const {
  for (const auto& c : coords)
    if (!c.is_zero()) return false;
  return true;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  if (algebra != o.algebra) throw UsageError("elements from different algebras");
  AlgebraElement r{algebra, coords};
  for (size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
  return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  if (algebra != o.algebra) throw UsageError("elements from different algebras");
  AlgebraElement r{algebra, coords};
  for (size_t i = 0; i < coords.size(); ++i) r.coords[i] -= o.coords[i];
  return r;
}

AlgebraElement AlgebraElement::scaled(const QC& s) const {
  AlgebraElement r{algebra, coords};
  for (auto& c : r.coords) c = c * s;
  return r;
}

bool AlgebraElement::operator==(const AlgebraElement& o) const {
  return algebra == o.algebra && coords == o.coords;
}

namespace {

RootCoords coords_sum(const RootCoords& a, const RootCoords& b) {
  RootCoords c(a);
  for (size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

RootCoords coords_diff(const RootCoords& a, const RootCoords& b) {
  RootCoords c(a);
  for (size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
  return c;
}

bool coords_zero(const RootCoords& a) {
  for (int x : a)
    if (x != 0) return false;
  return true;
}

/// Computes all constants m(a, b) from the extraspecial-pair normalization:
/// positive roots are ordered by height then lexicographically, each
/// non-simple positive root gets m = +(p+1) on its first decomposition,
/// and every other constant follows from antisymmetry, the opposition rule
/// m(-a, -b) = -m(a, b), and Jacobi identities.
class ConstantBuilder {
 public:
  explicit ConstantBuilder(const RootSystem& rs) : rs_(rs) {
    esp_.assign(rs_.num_positive(), {-1, -1});
    for (int g = 0; g < rs_.num_positive(); ++g) {
      if (rs_.height(g) < 2) continue;
      for (int a = 0; a < rs_.num_positive(); ++a) {
        RootCoords rest = coords_diff(rs_.root(g), rs_.root(a));
        int b = rs_.root_index(rest);
        if (b >= 0 && rs_.is_positive(b)) {
          esp_[g] = {a, b};
          break;
        }
      }
    }
  }

  int string_down(int a, int b) const {
    int p = 0;
    RootCoords c = rs_.root(b);
    while (true) {
      c = coords_diff(c, rs_.root(a));
      if (coords_zero(c) || !rs_.is_root(c)) break;
      ++p;
    }
    return p;
  }

  Rat general(int x, int y) {
    bool px = rs_.is_positive(x), py = rs_.is_positive(y);
    if (px && py) return positive(x, y);
    if (!px && !py) return -positive(rs_.negative_of(x), rs_.negative_of(y));
    if (!px) return -general(y, x);
    // x positive, y negative; delta = x - (-y) is a root.
    int b = rs_.negative_of(y);
    RootCoords dc = coords_diff(rs_.root(x), rs_.root(b));
    int d = rs_.root_index(dc);
    if (d < 0) throw NumericalError("structure constant requested for a non-root sum");
    if (rs_.is_positive(d))
      return rs_.norm2(d) / rs_.norm2(x) * positive(d, b);
    int dn = rs_.negative_of(d);
    return rs_.norm2(dn) / rs_.norm2(b) * positive(dn, x);
  }

 private:
  Rat positive(int a, int b) {
    auto key = std::make_pair(a, b);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    int g = rs_.root_index(coords_sum(rs_.root(a), rs_.root(b)));
    if (g < 0 || !rs_.is_positive(g)) throw NumericalError("positive pair with non-positive sum");
    auto [eps, phi] = esp_[g];
    Rat value;
    if (a == eps && b == phi) {
      value = Rat(string_down(eps, phi) + 1);
    } else if (a == phi && b == eps) {
      value = -Rat(string_down(eps, phi) + 1);
    } else {
      // Jacobi identity against e_{-eps}.
      Rat t1(0), t3(0);
      RootCoords ae = coords_diff(rs_.root(a), rs_.root(eps));
      int ae_idx = rs_.root_index(ae);
      if (ae_idx >= 0) t1 = general(rs_.negative_of(eps), a) * general(ae_idx, b);
      RootCoords be = coords_diff(rs_.root(b), rs_.root(eps));
      int be_idx = rs_.root_index(be);
      if (be_idx >= 0) t3 = general(b, rs_.negative_of(eps)) * general(be_idx, a);
      Rat denom = general(g, rs_.negative_of(eps));
      if (denom == Rat(0)) throw NumericalError("degenerate Jacobi pivot");
      value = -(t1 + t3) / denom;
    }
    memo_[key] = value;
    return value;
  }

  const RootSystem& rs_;
  std::vector<std::pair<int, int>> esp_;
  std::map<std::pair<int, int>, Rat> memo_;
};

}  // namespace

WeylBasis WeylBasis::build(const RootSystem& rs) {
  WeylBasis wb(rs);
  const RootSystem& R = wb.rs_;
  int nr = R.num_roots();
  int r = R.rank();
  int dim = wb.dim();

  ConstantBuilder cb(R);
  wb.n_.assign(nr, std::vector<long long>(nr, 0));
  for (int a = 0; a < nr; ++a)
    for (int b = 0; b < nr; ++b) {
      if (b == R.negative_of(a)) continue;
      RootCoords sum = coords_sum(R.root(a), R.root(b));
      if (!R.is_root(sum)) continue;
      Rat v = cb.general(a, b);
      if (!is_integer(v)) throw NumericalError("non-integer structure constant");
      wb.n_[a][b] = rat_num(v);
    }

  wb.coroots_.assign(nr, {});
  for (int t = 0; t < nr; ++t) {
    std::vector<long long> k(r, 0);
    Rat nt = R.norm2(t);
    for (int i = 0; i < r; ++i) {
      Rat v = Rat(R.root(t)[i]) * R.norm2(R.simple_root(i)) / nt;
      if (!is_integer(v)) throw NumericalError("non-integer coroot coefficient");
      k[i] = rat_num(v);
    }
    wb.coroots_[t] = k;
  }

  wb.table_.assign(dim * dim, {});
  auto put = [&](int k1, int k2, int slot, Rat c) {
    if (c != Rat(0)) wb.table_[k1 * dim + k2].push_back({slot, c});
  };
  for (int i = 0; i < r; ++i)
    for (int t = 0; t < nr; ++t) {
      put(i, r + t, r + t, Rat(R.pair_coroot(t, i)));
      put(r + t, i, r + t, Rat(-R.pair_coroot(t, i)));
    }
  for (int a = 0; a < nr; ++a)
    for (int b = 0; b < nr; ++b) {
      if (b == R.negative_of(a)) {
        int pos = R.is_positive(a) ? a : b;
        Rat sign = R.is_positive(a) ? Rat(1) : Rat(-1);
        for (int i = 0; i < r; ++i) put(r + a, r + b, i, sign * Rat(wb.coroots_[pos][i]));
        continue;
      }
      RootCoords sum = coords_sum(R.root(a), R.root(b));
      int g = R.root_index(sum);
      if (g >= 0) put(r + a, r + b, r + g, Rat(wb.n_[a][b]));
    }

  // Killing form as the trace form of the adjoint action.
  wb.gram_ = RatMat(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      Rat tr(0);
      for (int l = 0; l < dim; ++l) {
        for (const auto& [mid, cm] : wb.table_[j * dim + l]) {
          for (const auto& [k2, c2] : wb.table_[i * dim + mid])
            if (k2 == l) tr += cm * c2;
        }
      }
      wb.gram_.at(i, j) = tr;
      wb.gram_.at(j, i) = tr;
    }

  return wb;
}

long long WeylBasis::m(int a, int b) const {
  if (b == rs_.negative_of(a)) throw UsageError("m(a, -a) is a coroot, not a constant");
  return n_[a][b];
}

int WeylBasis::string_down(int a, int b) const {
  int p = 0;
  RootCoords c = rs_.root(b);
  while (true) {
    c = coords_diff(c, rs_.root(a));
    if (coords_zero(c) || !rs_.is_root(c)) break;
    ++p;
  }
  return p;
}

void WeylBasis::check_same(const AlgebraElement& x) const {
  if (x.algebra != this) throw UsageError("element does not belong to this algebra");
}

AlgebraElement WeylBasis::bracket(const AlgebraElement& x, const AlgebraElement& y) const {
  check_same(x);
  check_same(y);
  AlgebraElement r = zero();
  int d = dim();
  for (int k1 = 0; k1 < d; ++k1) {
    if (x.coords[k1].is_zero()) continue;
    for (int k2 = 0; k2 < d; ++k2) {
      if (y.coords[k2].is_zero()) continue;
      QC f = x.coords[k1] * y.coords[k2];
      for (const auto& [slot, c] : table_[k1 * d + k2]) r.coords[slot] += c * f;
    }
  }
  return r;
}

QC WeylBasis::killing(const AlgebraElement& x, const AlgebraElement& y) const {
  check_same(x);
  check_same(y);
  QC s;
  int d = dim();
  for (int i = 0; i < d; ++i) {
    if (x.coords[i].is_zero()) continue;
    for (int j = 0; j < d; ++j) {
      const Rat& g = gram_.at(i, j);
      if (g != Rat(0) && !y.coords[j].is_zero()) s += x.coords[i] * (g * y.coords[j]);
    }
  }
  return s;
}

RatVec WeylBasis::killing_coroot(int idx) const {
  int r = rs_.rank();
  RatMat h_gram(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) h_gram.at(i, j) = gram_.at(i, j);
  RatVec rhs(r);
  for (int j = 0; j < r; ++j) rhs[j] = Rat(rs_.pair_coroot(idx, j));
  return solve_linear(h_gram, rhs);
}

Rat WeylBasis::killing_norm2(int idx) const {
  RatVec t = killing_coroot(idx);
  Rat s(0);
  for (int j = 0; j < rs_.rank(); ++j) s += t[j] * Rat(rs_.pair_coroot(idx, j));
  return s;
}

AlgebraElement WeylBasis::zero() const {
  return AlgebraElement{this, QCVec(dim())};
}

AlgebraElement WeylBasis::h(int i) const {
  AlgebraElement x = zero();
  x.coords[i] = QC(1);
  return x;
}

AlgebraElement WeylBasis::e(int idx) const {
  AlgebraElement x = zero();
  x.coords[root_slot(idx)] = QC(1);
  return x;
}

AlgebraElement WeylBasis::from_coords(QCVec c) const {
  if (static_cast<int>(c.size()) != dim()) throw UsageError("coordinate vector has wrong length");
  return AlgebraElement{this, std::move(c)};
}

}  // namespace lieth

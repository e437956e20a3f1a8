#include "lieth/group_catalog.hpp"

#include <functional>
#include <map>
#include <mutex>

namespace lieth {

CMat GroupCatalog::tau(const CMat& g) const {
  if (split()) return g.conjugate();
  return S * g.adjoint().inverse() * S;
}

CMat GroupCatalog::tau_lie(const CMat& x) const {
  if (split()) return x.conjugate();
  return -S * x.adjoint() * S;
}

CMat GroupCatalog::tau_d(const CMat& g) const {
  if (split()) return g.conjugate();
  return S_qs * g.adjoint().inverse() * S_qs.inverse();
}

CMat GroupCatalog::tau_d_lie(const CMat& x) const {
  if (split()) return x.conjugate();
  return -S_qs * x.adjoint() * S_qs.inverse();
}

namespace {

CMat unit(int n, int i, int j) {
  CMat m = CMat::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

std::vector<CMat> an_frame_of(int n) {
  std::vector<CMat> f;
  for (int i = 0; i + 1 < n; ++i) f.push_back(unit(n, i, i) - unit(n, i + 1, i + 1));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      f.push_back(unit(n, i, j));
      f.push_back(Cplx(0, 1) * unit(n, i, j));
    }
  return f;
}

std::vector<CMat> k_frame_of(int n) {
  std::vector<CMat> f;
  for (int i = 0; i + 1 < n; ++i)
    f.push_back(Cplx(0, 1) * (unit(n, i, i) - unit(n, i + 1, i + 1)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      f.push_back(unit(n, i, j) - unit(n, j, i));
      f.push_back(Cplx(0, 1) * (unit(n, i, j) + unit(n, j, i)));
    }
  return f;
}

std::vector<CMat> p_frame_of(int n) {
  std::vector<CMat> f;
  for (int i = 0; i + 1 < n; ++i) f.push_back(unit(n, i, i) - unit(n, i + 1, i + 1));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      f.push_back(unit(n, i, j) + unit(n, j, i));
      f.push_back(Cplx(0, 1) * (unit(n, i, j) - unit(n, j, i)));
    }
  return f;
}

/// Real-linear fixed points of an involution inside the span of a frame.
std::vector<CMat> fixed_subspace(const std::vector<CMat>& frame,
                                 const std::function<CMat(const CMat&)>& invol) {
  int n = frame.front().rows();
  int m = static_cast<int>(frame.size());
  Eigen::MatrixXd sys(2 * n * n, m);
  for (int c = 0; c < m; ++c) {
    CMat diff = invol(frame[c]) - frame[c];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        sys(2 * (i * n + j), c) = diff(i, j).real();
        sys(2 * (i * n + j) + 1, c) = diff(i, j).imag();
      }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
  lu.setThreshold(1e-9);
  Eigen::MatrixXd ker = lu.kernel();
  std::vector<CMat> out;
  if (lu.dimensionOfKernel() == 0) return out;
  for (int c = 0; c < ker.cols(); ++c) {
    CMat x = CMat::Zero(n, n);
    for (int r = 0; r < m; ++r) x += ker(r, c) * frame[r];
    double scale = x.norm();
    if (scale > 1e-12) x /= scale;
    out.push_back(x);
  }
  return out;
}

GroupCatalog make_entry(const std::string& id, int p, int q) {
  GroupCatalog gc;
  gc.id = id;
  gc.p = p;
  gc.q = q;
  gc.n = q == 0 ? p : p + q;
  int n = gc.n;
  gc.restricted_rank = q == 0 ? n - 1 : q;
  gc.dim_an = n * n - 1;
  gc.dim_a0n0 = q == 0 ? n * (n + 1) / 2 - 1 : 2 * p * q;

  if (q > 0) {
    gc.S = CMat::Zero(n, n);
    for (int i = 0; i < q; ++i) {
      gc.S(i, n - 1 - i) = 1.0;
      gc.S(n - 1 - i, i) = 1.0;
    }
    for (int i = q; i < n - q; ++i) gc.S(i, i) = 1.0;
    gc.S_qs = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i) gc.S_qs(i, n - 1 - i) = (i % 2 == 0) ? 1.0 : -1.0;
    Cplx c = (n % 2 == 0) ? Cplx(0, 1) : Cplx(1, 0);
    gc.w0 = c * gc.S * gc.S_qs.inverse();
    if ((gc.w0 * gc.tau_d(gc.w0) - CMat::Identity(n, n)).norm() > 1e-12)
      throw NumericalError("group Weyl representative fails w0 tau_d(w0) = 1");
  } else {
    gc.S = CMat::Identity(n, n);
    gc.S_qs = CMat::Identity(n, n);
    gc.w0 = CMat::Identity(n, n);
  }

  gc.an_frame = an_frame_of(n);
  gc.k_frame = k_frame_of(n);
  auto fix = [&gc](const CMat& x) { return gc.tau_lie(x); };

  std::vector<CMat> a_frame(gc.an_frame.begin(), gc.an_frame.begin() + (n - 1));
  std::vector<CMat> n_frame(gc.an_frame.begin() + (n - 1), gc.an_frame.end());
  gc.a0_basis = fixed_subspace(a_frame, fix);
  gc.n0_basis = fixed_subspace(n_frame, fix);
  gc.k0_basis = fixed_subspace(gc.k_frame, fix);
  gc.p0_basis = fixed_subspace(p_frame_of(n), fix);

  int k0_dim = q == 0 ? n * (n - 1) / 2 : p * p + q * q - 1;
  if (static_cast<int>(gc.a0_basis.size()) != gc.restricted_rank ||
      static_cast<int>(gc.k0_basis.size()) != k0_dim ||
      static_cast<int>(gc.p0_basis.size()) != gc.dim_a0n0 ||
      static_cast<int>(gc.a0_basis.size() + gc.n0_basis.size()) != gc.dim_a0n0)
    throw NumericalError("catalog subspace dimensions are inconsistent");
  return gc;
}

}  // namespace

const GroupCatalog& group_catalog(const std::string& id) {
  static std::map<std::string, GroupCatalog> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(id);
  if (it != cache.end()) return it->second;

  GroupCatalog gc;
  if (id == "sl2r") gc = make_entry(id, 2, 0);
  else if (id == "sl3r") gc = make_entry(id, 3, 0);
  else if (id == "sl4r") gc = make_entry(id, 4, 0);
  else if (id == "sl5r") gc = make_entry(id, 5, 0);
  else if (id == "su11") gc = make_entry(id, 1, 1);
  else if (id == "su21") gc = make_entry(id, 2, 1);
  else if (id == "su31") gc = make_entry(id, 3, 1);
  else if (id == "su22") gc = make_entry(id, 2, 2);
  else if (id == "su41") gc = make_entry(id, 4, 1);
  else if (id == "su32") gc = make_entry(id, 3, 2);
  else throw ConfigError("unknown group id '" + id + "'");
  return cache.emplace(id, std::move(gc)).first->second;
}

std::vector<std::string> group_catalog_ids() {
  return {"sl2r", "sl3r", "sl4r", "sl5r", "su11", "su21", "su31", "su22", "su41", "su32"};
}

}  // namespace lieth

#include "lieth/poisson.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace lieth {

namespace {

constexpr double kFdStep = 1e-5;       // first-order map derivatives
constexpr double kOuterFdStep = 1e-4;  // derivatives of already-FD fields

CMat unit(int n, int i, int j, Cplx v) {
  CMat m = CMat::Zero(n, n);
  m(i, j) = v;
  return m;
}

PoissonAmbient make_ambient(const std::string& id, int n) {
  PoissonAmbient amb;
  amb.id = id;
  amb.n = n;
  for (int k = 0; k + 1 < n; ++k) {
    CMat h = CMat::Zero(n, n);
    h(k, k) = 1.0;
    h(k + 1, k + 1) = -1.0;
    amb.an_basis.push_back(h);
    amb.k_basis.push_back(Cplx(0, 1) * h);
    amb.p_basis.push_back(h);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      amb.an_basis.push_back(unit(n, i, j, 1.0));
      amb.an_basis.push_back(unit(n, i, j, Cplx(0, 1)));
      amb.k_basis.push_back(unit(n, i, j, 1.0) - unit(n, j, i, 1.0));
      amb.k_basis.push_back(Cplx(0, 1) * (unit(n, i, j, 1.0) + unit(n, j, i, 1.0)));
      amb.p_basis.push_back(unit(n, i, j, 1.0) + unit(n, j, i, 1.0));
      amb.p_basis.push_back(Cplx(0, 1) * (unit(n, i, j, 1.0) - unit(n, j, i, 1.0)));
    }
  int m = amb.dim();
  amb.k_an_pairing.resize(m, m);
  amb.k_p_pairing.resize(m, m);
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < m; ++v) {
      amb.k_an_pairing(u, v) = im_killing(amb.k_basis[u], amb.an_basis[v]);
      amb.k_p_pairing(u, v) = im_killing(amb.k_basis[u], amb.p_basis[v]);
    }
  return amb;
}

const std::map<std::string, int>& ambient_sizes() {
  static const std::map<std::string, int> sizes = {{"sl2c", 2}, {"sl3c", 3}};
  return sizes;
}

Eigen::VectorXd k_coords(const PoissonAmbient& amb, const CMat& z) {
  int n = amb.n;
  double scale = 1.0 + z.norm();
  if ((z + z.adjoint()).norm() > 1e-8 * scale ||
      std::abs(z.trace()) > 1e-8 * scale)
    throw NumericalError("element is not in su(n): skew-Hermitian defect " +
                         std::to_string((z + z.adjoint()).norm()));
  Eigen::VectorXd c(amb.dim());
  double partial = 0;
  for (int k = 0; k + 1 < n; ++k) {
    partial += z(k, k).imag();
    c[k] = partial;
  }
  int idx = n - 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      c[idx++] = z(i, j).real();
      c[idx++] = z(i, j).imag();
    }
  return c;
}

/// Structure constants of a+n in the an_basis frame.
const std::vector<Eigen::MatrixXd>& an_structure(const PoissonAmbient& amb) {
  static std::map<std::string, std::vector<Eigen::MatrixXd>> cache;
  static std::mutex guard;
  std::lock_guard<std::mutex> lock(guard);
  auto it = cache.find(amb.id);
  if (it != cache.end()) return it->second;
  int m = amb.dim();
  std::vector<Eigen::MatrixXd> c(m, Eigen::MatrixXd::Zero(m, m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      CMat br = amb.an_basis[i] * amb.an_basis[j] - amb.an_basis[j] * amb.an_basis[i];
      Eigen::VectorXd w = an_coords(amb, br);
      for (int k = 0; k < m; ++k) c[k](i, j) = w[k];
    }
  return cache.emplace(amb.id, std::move(c)).first->second;
}

/// exp(h * an_basis[i]) exactly: the basis is diagonal or single-entry
/// nilpotent.
CMat frame_exp(const PoissonAmbient& amb, int i, double h) {
  const CMat& e = amb.an_basis[i];
  if (i < amb.n - 1) {
    CMat d = CMat::Identity(amb.n, amb.n);
    for (int k = 0; k < amb.n; ++k) d(k, k) = std::exp(h * e(k, k).real());
    return d;
  }
  return CMat::Identity(amb.n, amb.n) + h * e;
}

Eigen::MatrixXd antisymmetrize(const Eigen::MatrixXd& p, const char* what) {
  double defect = 0.5 * (p + p.transpose()).norm();
  if (defect > 1e-6 * (1.0 + p.norm())) {
    std::ostringstream msg;
    msg << what << ": antisymmetry defect " << defect;
    throw NumericalError(msg.str());
  }
  return 0.5 * (p - p.transpose());
}

}  // namespace

double im_killing(const CMat& x, const CMat& y) {
  return 2.0 * static_cast<double>(x.rows()) * (x * y).trace().imag();
}

const PoissonAmbient& poisson_ambient(const std::string& id) {
  static std::map<std::string, PoissonAmbient> cache;
  static std::mutex guard;
  std::lock_guard<std::mutex> lock(guard);
  auto it = cache.find(id);
  if (it != cache.end()) return it->second;
  auto size = ambient_sizes().find(id);
  if (size == ambient_sizes().end())
    throw ConfigError("unknown ambient group id: " + id);
  return cache.emplace(id, make_ambient(id, size->second)).first->second;
}

std::vector<std::string> poisson_ambient_ids() { return {"sl2c", "sl3c"}; }

Eigen::VectorXd an_coords(const PoissonAmbient& amb, const CMat& v) {
  int n = amb.n;
  double scale = 1.0 + v.norm();
  double defect = std::abs(v.trace());
  for (int i = 0; i < n; ++i) {
    defect += std::abs(v(i, i).imag());
    for (int j = 0; j < i; ++j) defect += std::abs(v(i, j));
  }
  if (defect > 1e-6 * scale)
    throw NumericalError("element is not in a+n: off-subspace defect " +
                         std::to_string(defect));
  Eigen::VectorXd c(amb.dim());
  double partial = 0;
  for (int k = 0; k + 1 < n; ++k) {
    partial += v(k, k).real();
    c[k] = partial;
  }
  int idx = n - 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      c[idx++] = v(i, j).real();
      c[idx++] = v(i, j).imag();
    }
  return c;
}

CMat an_span(const PoissonAmbient& amb, const Eigen::VectorXd& c) {
  if (c.size() != amb.dim()) throw UsageError("coordinate size mismatch");
  CMat v = CMat::Zero(amb.n, amb.n);
  for (int i = 0; i < amb.dim(); ++i) v += c[i] * amb.an_basis[i];
  return v;
}

Eigen::VectorXd dressing_vector(const PoissonAmbient& amb, const CMat& x,
                                const CMat& b) {
  // fourth-order stencil: the bivector solve gets conjugated by group
  // adjoints downstream, which amplifies any truncation noise quadratically
  const double h = kFdStep;
  auto at = [&](double t) { return an_project(unitary_exp(t * x) * b); };
  CMat deriv = (at(-2 * h) - 8.0 * at(-h) + 8.0 * at(h) - at(2 * h)) / (12 * h) *
               b.inverse();
  return an_coords(amb, deriv);
}

Eigen::MatrixXd pi_AN_at(const PoissonAmbient& amb, const CMat& b) {
  int m = amb.dim();
  Eigen::MatrixXd w(m, m);
  for (int u = 0; u < m; ++u) w.col(u) = dressing_vector(amb, amb.k_basis[u], b);
  // pi#(xbar_u) = w_u with (xbar_u)_i = <k_u, e_i>, i.e. pi A^T = W with
  // A = k_an_pairing; transpose to A pi^T = W^T.
  Eigen::MatrixXd p =
      amb.k_an_pairing.partialPivLu().solve(w.transpose()).transpose();
  return antisymmetrize(p, "pi_AN solve");
}

Eigen::MatrixXd lambda0_matrix(const PoissonAmbient& amb) {
  int m = amb.dim();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(m, m);
  for (int t = 0; t < m - (amb.n - 1); t += 2) {
    int ix = amb.n - 1 + t;
    l(ix, ix + 1) += 0.5;
    l(ix + 1, ix) -= 0.5;
  }
  return l;
}

Eigen::MatrixXd pi_K_at(const PoissonAmbient& amb, const CMat& k) {
  if ((k * k.adjoint() - CMat::Identity(amb.n, amb.n)).norm() > 1e-8)
    throw UsageError("base point is not unitary");
  int m = amb.dim();
  Eigen::MatrixXd ad(m, m);
  for (int u = 0; u < m; ++u)
    ad.col(u) = k_coords(amb, k * amb.k_basis[u] * k.adjoint());
  Eigen::MatrixXd l = lambda0_matrix(amb);
  return l - ad * l * ad.transpose();
}

Eigen::MatrixXd gauge_transform(const Eigen::MatrixXd& pi,
                                const Eigen::MatrixXd& gamma) {
  if (pi.rows() != pi.cols() || gamma.rows() != gamma.cols() ||
      pi.rows() != gamma.rows())
    throw UsageError("bivector and gauge form sizes differ");
  if (gamma.isZero(0.0)) return pi;
  int m = static_cast<int>(pi.rows());
  Eigen::MatrixXd mix = Eigen::MatrixXd::Identity(m, m) + gamma * pi;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(mix);
  lu.setThreshold(1e-10);
  if (!lu.isInvertible())
    throw GaugeError("1 + gamma pi is singular at this point");
  Eigen::MatrixXd out = pi * lu.inverse();
  return 0.5 * (out - out.transpose());
}

TwoForm exterior_d(const PoissonAmbient& amb, OneForm eps) {
  return [&amb, eps](const CMat& b) {
    int m = amb.dim();
    const auto& c = an_structure(amb);
    Eigen::VectorXd here = eps(b);
    Eigen::MatrixXd jac(m, m);  // jac(j, i) = D_i eps_j
    for (int i = 0; i < m; ++i) {
      Eigen::VectorXd plus = eps(frame_exp(amb, i, kOuterFdStep) * b);
      Eigen::VectorXd minus = eps(frame_exp(amb, i, -kOuterFdStep) * b);
      jac.col(i) = (plus - minus) / (2 * kOuterFdStep);
    }
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        double v = jac(j, i) - jac(i, j);
        for (int k = 0; k < m; ++k) v += c[k](i, j) * here[k];
        d(i, j) = v;
        d(j, i) = -v;
      }
    return d;
  };
}

double two_form_d_residual(const PoissonAmbient& amb, const TwoForm& gamma,
                           const CMat& b) {
  int m = amb.dim();
  const auto& c = an_structure(amb);
  Eigen::MatrixXd here = gamma(b);
  std::vector<Eigen::MatrixXd> deriv(m);  // deriv[i] = D_i gamma
  double h = 3e-4;
  for (int i = 0; i < m; ++i)
    deriv[i] =
        (gamma(frame_exp(amb, i, h) * b) - gamma(frame_exp(amb, i, -h) * b)) /
        (2 * h);
  double worst = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        double v = deriv[i](j, k) - deriv[j](i, k) + deriv[k](i, j);
        for (int t = 0; t < m; ++t)
          v += c[t](i, j) * here(t, k) - c[t](i, k) * here(t, j) +
               c[t](j, k) * here(t, i);
        worst = std::max(worst, std::abs(v));
      }
  return worst;
}

CMat I_s_map(const CMat& b, double s) {
  if (s == 0.0) throw UsageError("deformation map needs s != 0");
  return E_map(s * E_inverse(b));
}

CMat bullet_s(const CMat& b1, const CMat& b2, double s) {
  if (s == 0.0) return E_map(E_inverse(b1) + E_inverse(b2));
  return I_s_map(I_s_map(b1, s) * I_s_map(b2, s), 1.0 / s);
}

CMat bullet_s_inverse(const CMat& b, double s) {
  if (s == 0.0) return E_map(-E_inverse(b));
  return I_s_map(I_s_map(b, s).inverse(), 1.0 / s);
}

Eigen::MatrixXd pi_AN_s_at(const PoissonAmbient& amb, const CMat& b, double s) {
  int m = amb.dim();
  if (s == 0.0) {
    // Pushforward under E of the linear Poisson structure of su(n)* = p.
    CMat xi = E_inverse(b);
    CMat binv = b.inverse();
    Eigen::MatrixXd push(m, m);
    const double h = kFdStep;
    for (int r = 0; r < m; ++r) {
      auto at = [&](double t) { return E_map(xi + t * amb.p_basis[r]); };
      CMat deriv = (at(-2 * h) - 8.0 * at(-h) + 8.0 * at(h) - at(2 * h)) / (12 * h);
      push.col(r) = an_coords(amb, deriv * binv);
    }
    // dual basis of p inside su(n) under the pairing
    Eigen::MatrixXd dual =
        amb.k_p_pairing.transpose().partialPivLu().solve(Eigen::MatrixXd::Identity(m, m));
    std::vector<CMat> x(m, CMat::Zero(amb.n, amb.n));
    for (int r = 0; r < m; ++r)
      for (int u = 0; u < m; ++u) x[r] += dual(u, r) * amb.k_basis[u];
    Eigen::MatrixXd lie(m, m);
    for (int r = 0; r < m; ++r)
      for (int t = 0; t < m; ++t)
        lie(r, t) = im_killing(xi, x[r] * x[t] - x[t] * x[r]);
    return antisymmetrize(push * lie * push.transpose(), "linear limit");
  }
  CMat c = I_s_map(b, s);
  CMat cinv = c.inverse();
  Eigen::MatrixXd jac(m, m);
  const double h = kFdStep;
  for (int i = 0; i < m; ++i) {
    auto at = [&](double t) { return I_s_map(frame_exp(amb, i, t) * b, s); };
    CMat deriv = (at(-2 * h) - 8.0 * at(-h) + 8.0 * at(h) - at(2 * h)) / (12 * h);
    jac.col(i) = an_coords(amb, deriv * cinv);
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
  Eigen::MatrixXd half = lu.solve(pi_AN_at(amb, c));
  Eigen::MatrixXd out = s * lu.solve(half.transpose()).transpose();
  return antisymmetrize(out, "deformation pullback");
}

CMat m_s(const std::vector<CMat>& bs, double s) {
  if (bs.empty()) throw UsageError("product needs at least one factor");
  CMat out = bs[0];
  for (size_t j = 1; j < bs.size(); ++j) out = bullet_s(out, bs[j], s);
  return out;
}

std::vector<CMat> nu_s(const std::vector<CMat>& bs, double s) {
  std::vector<CMat> out;
  out.reserve(bs.size());
  CMat partial;
  for (size_t j = 0; j < bs.size(); ++j) {
    partial = j == 0 ? bs[0] : bullet_s(partial, bs[j], s);
    out.push_back(partial);
  }
  return out;
}

std::vector<CMat> nu_s_inverse(const std::vector<CMat>& cs, double s) {
  std::vector<CMat> out;
  out.reserve(cs.size());
  for (size_t j = 0; j < cs.size(); ++j)
    out.push_back(j == 0 ? cs[0]
                         : bullet_s(bullet_s_inverse(cs[j - 1], s), cs[j], s));
  return out;
}

std::vector<CMat> twisted_action_s(const CMat& k, const std::vector<CMat>& bs,
                                   double s) {
  std::vector<CMat> cs = nu_s(bs, s);
  for (CMat& c : cs) c = dressing(k, c);
  return nu_s_inverse(cs, s);
}

double an_coordinate(const PoissonAmbient& amb, int index, const CMat& b) {
  if (index < 0 || index >= amb.dim()) throw UsageError("coordinate index out of range");
  if (index < amb.n - 1) return b(index, index).real();
  int t = index - (amb.n - 1);
  for (int i = 0; i < amb.n; ++i)
    for (int j = i + 1; j < amb.n; ++j) {
      if (t == 0) return b(i, j).real();
      if (t == 1) return b(i, j).imag();
      t -= 2;
    }
  throw UsageError("coordinate index out of range");
}

namespace {

Eigen::VectorXd coordinate_gradient(const PoissonAmbient& amb, int f,
                                    const CMat& b, double h) {
  int m = amb.dim();
  Eigen::VectorXd g(m);
  for (int i = 0; i < m; ++i)
    g[i] = (an_coordinate(amb, f, frame_exp(amb, i, h) * b) -
            an_coordinate(amb, f, frame_exp(amb, i, -h) * b)) /
           (2 * h);
  return g;
}

double bracket_at(const PoissonAmbient& amb, int f, int g, const CMat& b,
                  double h) {
  Eigen::VectorXd df = coordinate_gradient(amb, f, b, h);
  Eigen::VectorXd dg = coordinate_gradient(amb, g, b, h);
  return df.dot(pi_AN_at(amb, b) * dg);
}

}  // namespace

double poisson_bracket(const PoissonAmbient& amb, int f, int g, const CMat& b) {
  return bracket_at(amb, f, g, b, kFdStep);
}

double jacobi_residual(const PoissonAmbient& amb, int f, int g, int h,
                       const CMat& b) {
  int m = amb.dim();
  auto outer = [&](int fn, int ga, int gb) {
    Eigen::VectorXd din(m);
    for (int i = 0; i < m; ++i) {
      din[i] =
          (bracket_at(amb, ga, gb, frame_exp(amb, i, kOuterFdStep) * b, kFdStep) -
           bracket_at(amb, ga, gb, frame_exp(amb, i, -kOuterFdStep) * b, kFdStep)) /
          (2 * kOuterFdStep);
    }
    Eigen::VectorXd df = coordinate_gradient(amb, fn, b, kFdStep);
    return df.dot(pi_AN_at(amb, b) * din);
  };
  return outer(f, g, h) + outer(g, h, f) + outer(h, f, g);
}

}  // namespace lieth

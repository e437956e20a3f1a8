#include "lieth/group_maps.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace lieth {

namespace {

void require_hermitian(const CMat& x, const char* what) {
  if ((x - x.adjoint()).norm() > 1e-9 * (1.0 + x.norm()))
    throw UsageError(std::string(what) + " is not Hermitian");
}

double condition_of(const CMat& g) {
  Eigen::JacobiSVD<CMat> svd(g);
  double smin = svd.singularValues().minCoeff();
  return smin <= 0 ? std::numeric_limits<double>::infinity()
                   : svd.singularValues().maxCoeff() / smin;
}

}  // namespace

CMat sl_normalize(const CMat& g) {
  Cplx det = g.determinant();
  if (std::abs(det) < 1e-300) throw UsageError("matrix is singular");
  return g / std::pow(det, 1.0 / g.rows());
}

CMat herm_exp(const CMat& x) {
  require_hermitian(x, "exponent");
  Eigen::SelfAdjointEigenSolver<CMat> es((x + x.adjoint()) / 2.0);
  Eigen::VectorXd ev = es.eigenvalues();
  CMat d = CMat::Zero(x.rows(), x.cols());
  for (int i = 0; i < ev.size(); ++i) d(i, i) = std::exp(ev[i]);
  return es.eigenvectors() * d * es.eigenvectors().adjoint();
}

CMat herm_log(const CMat& m) {
  require_hermitian(m, "log argument");
  Eigen::SelfAdjointEigenSolver<CMat> es((m + m.adjoint()) / 2.0);
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev.minCoeff() <= 0.0) throw UsageError("log argument is not positive definite");
  CMat d = CMat::Zero(m.rows(), m.cols());
  for (int i = 0; i < ev.size(); ++i) d(i, i) = std::log(ev[i]);
  return es.eigenvectors() * d * es.eigenvectors().adjoint();
}

CMat unitary_exp(const CMat& x) {
  CMat h = Cplx(0, 1) * x;  // Hermitian for skew-Hermitian x
  require_hermitian(h, "exponent");
  Eigen::SelfAdjointEigenSolver<CMat> es((h + h.adjoint()) / 2.0);
  Eigen::VectorXd ev = es.eigenvalues();
  CMat d = CMat::Zero(x.rows(), x.cols());
  for (int i = 0; i < ev.size(); ++i) d(i, i) = std::exp(Cplx(0, -ev[i]));
  return es.eigenvectors() * d * es.eigenvectors().adjoint();
}

CMat an_project(const CMat& g) {
  using LMat = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;
  int n = g.rows();
  // reversed triangular square root of g g†, in extended precision since
  // forming the Gram matrix squares the condition number
  LMat gl = g.cast<std::complex<long double>>();
  LMat M = gl * gl.adjoint();
  LMat R = LMat::Zero(n, n);
  for (int i = 0; i < n; ++i) R(i, n - 1 - i) = 1.0L;
  Eigen::LLT<LMat> llt(LMat(R * M * R));
  if (llt.info() != Eigen::Success) {
    std::ostringstream ss;
    ss << "triangular factorization failed (condition ~ " << condition_of(g) << ")";
    throw NumericalError(ss.str());
  }
  CMat u = (R * LMat(llt.matrixL()) * R).cast<Cplx>();
  CMat k = u.inverse() * g;
  double scale = 1.0 + g.norm();
  if ((u * k - g).norm() > 1e-9 * scale ||
      (k.adjoint() * k - CMat::Identity(n, n)).norm() > 1e-9) {
    std::ostringstream ss;
    ss << "Iwasawa projection lost accuracy (condition ~ " << condition_of(g) << ")";
    throw NumericalError(ss.str());
  }
  return u;
}

CMat k_project(const CMat& g) { return an_project(g).inverse() * g; }

CMat dressing(const CMat& k, const CMat& b) { return an_project(k * b); }

CMat E_map(const CMat& xi) {
  require_hermitian(xi, "symmetric-space point");
  return an_project(herm_exp((xi + xi.adjoint()) / 2.0));
}

CMat E_inverse(const CMat& b) { return herm_log(b * b.adjoint()) / 2.0; }

CMat sigma_an(const GroupCatalog& gc, const CMat& b) { return an_project(gc.tau(b)); }

CMat sigma_an_dressing(const GroupCatalog& gc, const CMat& b) {
  return dressing(gc.w0, gc.tau_d(b));
}

std::vector<CMat> nu(const std::vector<CMat>& bs) {
  std::vector<CMat> out;
  CMat acc = CMat::Identity(bs.front().rows(), bs.front().cols());
  for (const CMat& b : bs) {
    acc = sl_normalize(acc * b);
    out.push_back(acc);
  }
  return out;
}

std::vector<CMat> nu_inverse(const std::vector<CMat>& cs) {
  std::vector<CMat> out;
  for (size_t j = 0; j < cs.size(); ++j)
    out.push_back(j == 0 ? cs[0] : sl_normalize(cs[j - 1].inverse() * cs[j]));
  return out;
}

std::vector<CMat> twisted_action(const CMat& k, const std::vector<CMat>& bs) {
  std::vector<CMat> cs = nu(bs);
  for (CMat& c : cs) c = dressing(k, c);
  return nu_inverse(cs);
}

std::vector<CMat> twisted_action_steps(const CMat& k, const std::vector<CMat>& bs) {
  std::vector<CMat> out;
  CMat kj = k;
  CMat partial = CMat::Identity(k.rows(), k.cols());
  for (size_t j = 0; j < bs.size(); ++j) {
    if (j > 0) {
      partial = sl_normalize(partial * bs[j - 1]);
      kj = k_project(k * partial);
    }
    out.push_back(dressing(kj, bs[j]));
  }
  return out;
}

std::vector<CMat> sigma_l(const GroupCatalog& gc, const std::vector<CMat>& bs) {
  std::vector<CMat> cs = nu(bs);
  for (CMat& c : cs) c = sigma_an(gc, c);
  return nu_inverse(cs);
}

std::vector<CMat> sigma_l_twisted(const GroupCatalog& gc, const std::vector<CMat>& bs) {
  std::vector<CMat> td;
  for (const CMat& b : bs) td.push_back(gc.tau_d(b));
  return twisted_action(gc.w0, td);
}

std::pair<CMat, CMat> cartan_decompose(const GroupCatalog& gc, const CMat& g) {
  if ((gc.tau(g) - g).norm() > 1e-8 * (1.0 + g.norm()))
    throw UsageError("element is not in the real group");
  CMat xi = herm_log(g * g.adjoint()) / 2.0;
  CMat k = herm_exp(-xi) * g;
  return {xi, k};
}

CMat random_span(Rng& rng, const std::vector<CMat>& basis, double scale) {
  CMat x = CMat::Zero(basis.front().rows(), basis.front().cols());
  for (const CMat& b : basis) x += scale * rng.normal() * b;
  return x;
}

CMat random_unitary(Rng& rng, int n) {
  CMat x = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      x(i, j) = Cplx(rng.normal(), rng.normal());
      x(j, i) = -std::conj(x(i, j));
    }
  for (int i = 0; i < n; ++i) x(i, i) = Cplx(0, rng.normal());
  x -= (x.trace() / double(n)) * CMat::Identity(n, n);
  return unitary_exp(x);
}

CMat random_k0(const GroupCatalog& gc, Rng& rng, double scale) {
  return unitary_exp(random_span(rng, gc.k0_basis, scale));
}

CMat random_an(Rng& rng, int n, double scale) {
  CMat a = CMat::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    double t = scale * rng.normal();
    a(i, i) += t;
    a(i + 1, i + 1) -= t;
  }
  CMat d = CMat::Identity(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = std::exp(a(i, i).real());
  CMat up = CMat::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) up(i, j) = scale * Cplx(rng.normal(), rng.normal());
  return d * up;
}

CMat random_a0n0(const GroupCatalog& gc, Rng& rng, double scale) {
  CMat a = random_span(rng, gc.a0_basis, scale);
  CMat nl = gc.n0_basis.empty() ? CMat::Zero(gc.n, gc.n)
                                : random_span(rng, gc.n0_basis, scale);
  CMat expn = CMat::Identity(gc.n, gc.n);
  CMat term = CMat::Identity(gc.n, gc.n);
  for (int k = 1; k < gc.n; ++k) {
    term = term * nl / double(k);
    expn += term;
  }
  return herm_exp(a) * expn;
}

CMat random_p_herm(Rng& rng, int n, double scale) {
  CMat x = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      x(i, j) = scale * Cplx(rng.normal(), rng.normal());
      x(j, i) = std::conj(x(i, j));
    }
  for (int i = 0; i < n; ++i) x(i, i) = scale * rng.normal();
  x -= (x.trace().real() / double(n)) * CMat::Identity(n, n);
  return x;
}

CMat random_p0(const GroupCatalog& gc, Rng& rng, double scale) {
  return random_span(rng, gc.p0_basis, scale);
}

CMat random_sl(Rng& rng, int n, double scale) {
  CMat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = scale * Cplx(rng.normal(), rng.normal());
  g += CMat::Identity(n, n);
  return sl_normalize(g);
}

}  // namespace lieth

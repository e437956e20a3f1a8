#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "lieth/errors.hpp"

namespace lieth {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;

/// Matrix model of a real form of SL(n,C): the conjugation tau, its
/// quasi-split companion tau_d, and the group Weyl representative w0 with
/// tau = Ad_{w0} tau_d.  The Hermitian form behind su(p,q) pairs the i-th
/// and (n+1-i)-th coordinates so that the restricted torus sits inside the
/// standard diagonal and tau is compatible with the upper-triangular
/// Iwasawa decomposition.
struct GroupCatalog {
  std::string id;
  int n = 0;
  int p = 0, q = 0;  // q == 0 marks the split family sl(n,R)
  int restricted_rank = 0;
  int dim_an = 0;    // real dimension of AN
  int dim_a0n0 = 0;  // real dimension of A0N0 = dim p0

  CMat S;     // Hermitian form fixed by the real group (su(p,q) only)
  CMat S_qs;  // signed antidiagonal form behind tau_d
  CMat w0;    // unitary monomial matrix, w0 tau_d(w0) = 1

  bool split() const { return q == 0; }

  CMat tau(const CMat& g) const;
  CMat tau_lie(const CMat& x) const;
  CMat tau_d(const CMat& g) const;
  CMat tau_d_lie(const CMat& x) const;

  /// Real bases: frames span a+n and su(n); the fixed-point bases span the
  /// corresponding subalgebras of the real form.
  std::vector<CMat> an_frame;
  std::vector<CMat> k_frame;
  std::vector<CMat> k0_basis;
  std::vector<CMat> a0_basis;
  std::vector<CMat> n0_basis;
  std::vector<CMat> p0_basis;
};

const GroupCatalog& group_catalog(const std::string& id);
std::vector<std::string> group_catalog_ids();

}  // namespace lieth

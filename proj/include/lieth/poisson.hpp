#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lieth/group_maps.hpp"

namespace lieth {

/// Frames for the Poisson Lie structures on the complex ambient group
/// SL(n,C) = K(AN) with K = SU(n).  Everything is expressed over the
/// right-translated frame of a+n (for AN) or of su(n) (for K), so bivectors
/// at a point are plain antisymmetric real matrices.
struct PoissonAmbient {
  std::string id;
  int n = 0;
  std::vector<CMat> an_basis;  // H_k, then E_ij and iE_ij per pair i<j
  std::vector<CMat> k_basis;   // iH_k, then X_ij = E_ij-E_ji, Y_ij = i(E_ij+E_ji)
  std::vector<CMat> p_basis;   // H_k, then E_ij+E_ji and i(E_ij-E_ji)
  Eigen::MatrixXd k_an_pairing;  // (u,i) = <k_u, an_i>
  Eigen::MatrixXd k_p_pairing;   // (u,r) = <k_u, p_r>

  int dim() const { return static_cast<int>(an_basis.size()); }
};

const PoissonAmbient& poisson_ambient(const std::string& id);  // sl2c, sl3c
std::vector<std::string> poisson_ambient_ids();

/// Imaginary part of the Killing form of sl(n,C), the pairing that puts
/// su(n) and a+n in duality.
double im_killing(const CMat& x, const CMat& y);

/// Coordinates over an_basis of an element of a+n (upper triangular, real
/// diagonal); throws NumericalError when the input is off the subspace.
Eigen::VectorXd an_coords(const PoissonAmbient& amb, const CMat& v);
CMat an_span(const PoissonAmbient& amb, const Eigen::VectorXd& c);

/// Right-frame coordinates of the dressing vector field of x in su(n) at b,
/// by central finite differences of t -> p(exp(tx) b).
Eigen::VectorXd dressing_vector(const PoissonAmbient& amb, const CMat& x,
                                const CMat& b);

/// The Poisson Lie bivector on AN: the unique pi with pi#(xbar) = x_AN for
/// all x in su(n), solved pointwise in the right frame.
Eigen::MatrixXd pi_AN_at(const PoissonAmbient& amb, const CMat& b);

/// Lambda0 = (1/2) sum over positive roots of X wedge Y, in k_basis
/// coordinates, and the dual bivector pi_K = Lambda0^r - Lambda0^l.
Eigen::MatrixXd lambda0_matrix(const PoissonAmbient& amb);
Eigen::MatrixXd pi_K_at(const PoissonAmbient& amb, const CMat& k);

/// Gauge transform pi' = pi (1 + gamma pi)^{-1} of bivector by closed-form
/// value at one point; throws GaugeError when 1 + gamma pi is singular.
Eigen::MatrixXd gauge_transform(const Eigen::MatrixXd& pi,
                                const Eigen::MatrixXd& gamma);

/// Differential forms over the right an-frame, as coefficient fields.
using OneForm = std::function<Eigen::VectorXd(const CMat&)>;
using TwoForm = std::function<Eigen::MatrixXd(const CMat&)>;

/// Exterior derivative of a 1-form field against right-invariant frame
/// fields (includes the structure-constant term).
TwoForm exterior_d(const PoissonAmbient& amb, OneForm eps);
/// Max component of d(gamma) at b, for closedness checks.
double two_form_d_residual(const PoissonAmbient& amb, const TwoForm& gamma,
                           const CMat& b);

/// The deformation family.
CMat I_s_map(const CMat& b, double s);  // E . (s id) . E^{-1}, s != 0
CMat bullet_s(const CMat& b1, const CMat& b2, double s);
CMat bullet_s_inverse(const CMat& b, double s);
Eigen::MatrixXd pi_AN_s_at(const PoissonAmbient& amb, const CMat& b, double s);

CMat m_s(const std::vector<CMat>& bs, double s);
std::vector<CMat> nu_s(const std::vector<CMat>& bs, double s);
std::vector<CMat> nu_s_inverse(const std::vector<CMat>& cs, double s);
std::vector<CMat> twisted_action_s(const CMat& k, const std::vector<CMat>& bs,
                                   double s);

/// Coordinate functions on AN (real diagonal entries, then Re/Im of the
/// strict upper entries); index range [0, dim).
double an_coordinate(const PoissonAmbient& amb, int index, const CMat& b);

/// Poisson bracket {f,g}(b) = (Df)^T pi_AN (Dg) of two coordinate
/// functions, and the Jacobiator over a coordinate triple (finite
/// differences at second order, hence the looser tolerance downstream).
double poisson_bracket(const PoissonAmbient& amb, int f, int g, const CMat& b);
double jacobi_residual(const PoissonAmbient& amb, int f, int g, int h,
                       const CMat& b);

}  // namespace lieth

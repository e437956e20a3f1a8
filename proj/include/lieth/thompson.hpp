#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lieth/group_maps.hpp"

namespace lieth {

enum class Picture { additive, multiplicative };
enum class Decision { feasible, infeasible, undecided };
std::string to_string(Picture p);
std::string to_string(Decision d);

/// Orbit data for the closure problems: one coordinate vector per leg, in
/// catalog coordinates (full sorted diagonal for the split family, the q
/// non-negative restricted values for su(p,q)).
struct OrbitLabel {
  std::vector<Eigen::VectorXd> legs;

  int l() const { return static_cast<int>(legs.size()); }
};

/// Chamber representative of a leg as a matrix in a0.
CMat leg_matrix(const GroupCatalog& gc, const Eigen::VectorXd& coords);
void validate_label(const GroupCatalog& gc, const OrbitLabel& label);

/// Complete orbit invariants of a point of p0 (sorted eigenvalues for the
/// split family, the q leading eigenvalues for su(p,q)).
Eigen::VectorXd invariants_of(const GroupCatalog& gc, const CMat& xi);

CMat orbit_point(const GroupCatalog& gc, const Eigen::VectorXd& coords, const CMat& k);
CMat dressing_orbit_point(const GroupCatalog& gc, const Eigen::VectorXd& coords, const CMat& k);

/// Membership in the orbit labeled by coords, with invariant distance.
std::pair<bool, double> orbit_membership(const GroupCatalog& gc, const CMat& xi,
                                         const Eigen::VectorXd& coords);
std::pair<bool, double> dressing_membership(const GroupCatalog& gc, const CMat& b,
                                            const Eigen::VectorXd& coords);

double additive_residual(const GroupCatalog& gc, const OrbitLabel& label,
                         const std::vector<CMat>& ks);
double multiplicative_residual(const GroupCatalog& gc, const OrbitLabel& label,
                               const std::vector<CMat>& ks);
double multiplicative_residual_bs(const GroupCatalog& gc, const std::vector<CMat>& bs);

struct FeasibilityConfig {
  int restarts = 32;
  int max_iters = 2000;
  double fd_step = 1e-5;
  double eps_feas = 1e-6;
  double eps_infeas = 1e-2;
  double grad_tol = 1e-7;
  double init_scale = 1.2;
  uint64_t seed = 1;
};

struct RestartTrace {
  int index = 0;
  uint64_t seed = 0;
  int iters = 0;
  double residual = 0;
  double grad_norm = 0;
  bool converged = false;
  bool diverged = false;
};

struct FeasibilityReport {
  Decision decision = Decision::undecided;
  double best_residual = 0;
  int best_restart = -1;
  std::vector<CMat> witness;  // one unitary per leg when feasible
  std::vector<RestartTrace> trace;
  uint64_t seed = 0;
  bool divergence = false;
  double wall_seconds = 0;
};

/// Deterministic seeded multistart search.  Restarts run in index order
/// (possibly in parallel, capped by THOMPSON_LIE_THREADS); issuing stops
/// after the first restart that reaches eps_feas, and the report only
/// depends on restarts up to that index, so parallel and serial runs agree.
FeasibilityReport feasibility_search(const GroupCatalog& gc, const OrbitLabel& label,
                                     Picture picture, const FeasibilityConfig& cfg);

enum class CompareVerdict { agree_feasible, agree_infeasible, disagree, undecided };
std::string to_string(CompareVerdict v);

struct CompareReport {
  CompareVerdict verdict = CompareVerdict::undecided;
  FeasibilityReport additive;
  FeasibilityReport multiplicative;
};

CompareReport thompson_compare(const GroupCatalog& gc, const OrbitLabel& label,
                               const FeasibilityConfig& cfg);

/// Closed-polygon oracle for restricted rank one; side lengths are the
/// norms of the legs.
Decision rank1_oracle(const GroupCatalog& gc, const OrbitLabel& label);
/// Sum of side lengths minus twice the largest; positive means feasible.
double rank1_margin(const GroupCatalog& gc, const OrbitLabel& label);

/// Basis of the centralizer of a chamber point inside k0.
std::vector<CMat> stabilizer_basis(const GroupCatalog& gc, const CMat& lambda);

}  // namespace lieth

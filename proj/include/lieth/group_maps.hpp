#pragma once

#include <utility>
#include <vector>

#include "lieth/group_catalog.hpp"
#include "lieth/rng.hpp"

namespace lieth {

/// Rescales to unit determinant (principal branch; AN factors have a
/// positive real determinant so the branch is never ambiguous there).
CMat sl_normalize(const CMat& g);

CMat herm_exp(const CMat& x);
/// Logarithm of a positive definite Hermitian matrix; throws UsageError
/// otherwise.
CMat herm_log(const CMat& m);
CMat unitary_exp(const CMat& x);  // x skew-Hermitian

/// Iwasawa projections of G = (AN)K: an_project is the upper-triangular
/// positive-diagonal factor, k_project the unitary one.
CMat an_project(const CMat& g);
CMat k_project(const CMat& g);

/// Dressing action k . b = an_project(k b).
CMat dressing(const CMat& k, const CMat& b);

/// E: p -> AN and its inverse E^{-1}(b) = (1/2) log(b b†).
CMat E_map(const CMat& xi);
CMat E_inverse(const CMat& b);

/// sigma(b) = an_project(tau(b)); the dressing route w0 . tau_d(b) must
/// agree with it.
CMat sigma_an(const GroupCatalog& gc, const CMat& b);
CMat sigma_an_dressing(const GroupCatalog& gc, const CMat& b);

/// Partial-product diffeomorphism of (AN)^l and its inverse.
std::vector<CMat> nu(const std::vector<CMat>& bs);
std::vector<CMat> nu_inverse(const std::vector<CMat>& cs);

/// Twisted diagonal action, both as nu^{-1} after diagonal dressing after
/// nu and via the step-by-step dressing factors k_1 = k,
/// k_j = k_project(k b_1 ... b_{j-1}).
std::vector<CMat> twisted_action(const CMat& k, const std::vector<CMat>& bs);
std::vector<CMat> twisted_action_steps(const CMat& k, const std::vector<CMat>& bs);

/// Componentwise sigma conjugated by nu, and the equivalent twisted form
/// (twisted action of w0 after componentwise tau_d).
std::vector<CMat> sigma_l(const GroupCatalog& gc, const std::vector<CMat>& bs);
std::vector<CMat> sigma_l_twisted(const GroupCatalog& gc, const std::vector<CMat>& bs);

/// g = exp(xi) k with xi in p0 and k in K0; g must satisfy tau(g) = g.
std::pair<CMat, CMat> cartan_decompose(const GroupCatalog& gc, const CMat& g);

/// Samplers (all deterministic through the passed Rng).
CMat random_span(Rng& rng, const std::vector<CMat>& basis, double scale);
CMat random_unitary(Rng& rng, int n);
CMat random_k0(const GroupCatalog& gc, Rng& rng, double scale = 1.0);
CMat random_an(Rng& rng, int n, double scale = 0.5);
CMat random_a0n0(const GroupCatalog& gc, Rng& rng, double scale = 0.5);
CMat random_p_herm(Rng& rng, int n, double scale = 0.7);
CMat random_p0(const GroupCatalog& gc, Rng& rng, double scale = 0.7);
CMat random_sl(Rng& rng, int n, double scale = 0.6);

}  // namespace lieth

#pragma once

#include <string>
#include <vector>

#include "lieth/exact.hpp"
#include "lieth/weyl_basis.hpp"

namespace lieth {

/// Complex-linear or conjugate-linear map of the algebra, stored as an exact
/// rational matrix over the Weyl basis together with the linearity flag.
struct LinearEndo {
  const WeylBasis* algebra = nullptr;
  bool conjugate_linear = false;
  RatMat mat;
  std::string label;

  AlgebraElement apply(const AlgebraElement& x) const;
  bool involutive() const;
  bool is_automorphism() const;
  /// True when the Cartan block maps to itself and each root vector maps to a
  /// multiple of a single root vector.
  bool is_monomial() const;
};

/// f after g; conjugate-linearity composes by parity.
LinearEndo compose(const LinearEndo& f, const LinearEndo& g);

/// Permutation of the simple roots preserving the Cartan matrix.
struct DiagramAutomorphism {
  std::vector<int> perm;

  static DiagramAutomorphism identity(int rank);
  int operator()(int i) const { return perm[i]; }
  int rank() const { return static_cast<int>(perm.size()); }
  bool involutive() const;
  DiagramAutomorphism after(const DiagramAutomorphism& o) const;
  bool operator==(const DiagramAutomorphism& o) const { return perm == o.perm; }
};

/// Validates that perm preserves the Cartan matrix.
DiagramAutomorphism make_diagram_automorphism(const RootSystem& rs, std::vector<int> perm);
std::vector<DiagramAutomorphism> all_diagram_automorphisms(const RootSystem& rs);
DiagramAutomorphism minus_w0_automorphism(const RootSystem& rs);

/// Compact conjugation: h -> -h on coroots, e_a -> -e_{-a}, conjugate-linear.
LinearEndo compact_form_theta(const WeylBasis& wb);

/// Split conjugation: identity matrix, conjugate-linear.
LinearEndo split_form_eta0(const WeylBasis& wb);

/// Complex-linear lift of a diagram automorphism fixing the simple
/// generators, with signs propagated through brackets.
LinearEndo gamma_d(const WeylBasis& wb, const DiagramAutomorphism& d);

/// Quasi-split conjugation attached to an involutive diagram automorphism:
/// eta0 composed with the lift of (-w0) d.
LinearEndo tau_d(const WeylBasis& wb, const DiagramAutomorphism& d);

/// Adjoint matrix of the canonical reflection representative
/// exp(ad e_i) exp(-ad f_i) exp(ad e_i); entries are integers.
RatMat simple_reflection_adjoint(const WeylBasis& wb, int i);
RatMat weyl_adjoint(const WeylBasis& wb, const WeylWord& w);

/// Diagram automorphism measuring how far tau is from inner relative to
/// theta: the composition tau theta acts on roots, and the unique Weyl
/// translate taking the image positive system back to the standard one
/// leaves this permutation of the simple roots.
DiagramAutomorphism inner_class(const WeylBasis& wb, const LinearEndo& tau,
                                const LinearEndo& theta);

}  // namespace lieth

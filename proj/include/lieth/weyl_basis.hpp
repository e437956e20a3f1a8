#pragma once

#include <utility>
#include <vector>

#include "lieth/exact.hpp"
#include "lieth/root_system.hpp"

namespace lieth {

class WeylBasis;

/// Element of the complexified algebra in basis coordinates.
/// Coordinates are exact complex rationals; ordering is the h_i block
/// followed by one root vector per root, in root index order.
struct AlgebraElement {
  const WeylBasis* algebra = nullptr;
  QCVec coords;

  bool is_zero() const;
  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement scaled(const QC& s) const;
  bool operator==(const AlgebraElement& o) const;
};

/// Basis of a split semi-simple algebra attached to a root system:
/// coroots h_i and one vector e_alpha per root, with integer structure
/// constants.  [e_a, f_a] is the coroot of a; m(a, b) is the coefficient
/// in [e_a, e_b] = m e_{a+b}.
class WeylBasis {
 public:
  static WeylBasis build(const RootSystem& rs);

  const RootSystem& roots() const { return rs_; }
  int dim() const { return rs_.rank() + rs_.num_roots(); }

  int cartan_slot(int i) const { return i; }
  int root_slot(int t) const { return rs_.rank() + t; }
  bool is_cartan_slot(int k) const { return k < rs_.rank(); }
  int root_of_slot(int k) const { return k - rs_.rank(); }

  /// Structure constant of [e_a, e_b]; zero when a + b is not a root.
  /// a and b must not be opposite (that bracket is a coroot, not a root vector).
  long long m(int a, int b) const;

  /// Largest k with b - k a still a root (the string length below b).
  int string_down(int a, int b) const;

  /// Coefficients of the coroot of the root at idx over the h_i.
  const std::vector<long long>& coroot(int idx) const { return coroots_[idx]; }

  /// Bracket of two basis slots as a sparse list of (slot, coefficient).
  const std::vector<std::pair<int, Rat>>& bracket_slots(int k1, int k2) const {
    return table_[k1 * dim() + k2];
  }

  AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) const;
  QC killing(const AlgebraElement& x, const AlgebraElement& y) const;
  const RatMat& killing_gram() const { return gram_; }

  /// Element t_alpha of the Cartan with killing(t_alpha, h) = alpha(h).
  RatVec killing_coroot(int idx) const;
  /// Killing square length of the root at idx (a rational number).
  Rat killing_norm2(int idx) const;

  AlgebraElement zero() const;
  AlgebraElement h(int i) const;
  AlgebraElement e(int idx) const;
  AlgebraElement from_coords(QCVec c) const;

 private:
  explicit WeylBasis(RootSystem rs) : rs_(std::move(rs)) {}
  void check_same(const AlgebraElement& x) const;

  RootSystem rs_;
  std::vector<std::vector<long long>> n_;               // [root][root]
  std::vector<std::vector<long long>> coroots_;         // positive and negative
  std::vector<std::vector<std::pair<int, Rat>>> table_; // dim x dim sparse brackets
  RatMat gram_;                                         // Killing form on the basis
};

}  // namespace lieth

#pragma once

#include <string>
#include <vector>

#include "lieth/exact.hpp"

namespace lieth {

enum class Series : char { A = 'A', B = 'B', C = 'C', D = 'D' };

Series series_from_char(char c);
char series_to_char(Series s);

/// Coordinates of a root over the simple basis.
using RootCoords = std::vector<int>;

/// Word in simple reflections; act applies the rightmost letter first,
/// so a word (i, j) means s_i after s_j.
using WeylWord = std::vector<int>;

/// Reduced root system of classical type, rank up to 6.
///
/// Roots are indexed with the positive roots first, ordered by height then
/// lexicographically; the negative of index t is t +- num_positive().
/// cartan(i, j) is the pairing of alpha_i against the j-th coroot,
/// 2(alpha_i, alpha_j) / (alpha_j, alpha_j).
class RootSystem {
 public:
  static RootSystem build(Series s, int rank);

  Series series() const { return series_; }
  int rank() const { return rank_; }
  int num_roots() const { return static_cast<int>(roots_.size()); }
  int num_positive() const { return pos_; }

  const RootCoords& root(int idx) const { return roots_[idx]; }
  int root_index(const RootCoords& c) const;  // -1 if not a root
  bool is_root(const RootCoords& c) const { return root_index(c) >= 0; }
  int negative_of(int idx) const { return idx < pos_ ? idx + pos_ : idx - pos_; }
  bool is_positive(int idx) const { return idx < pos_; }
  int simple_root(int i) const { return simple_idx_[i]; }
  /// Index into the simple basis if the root is simple, else -1.
  int simple_slot(int idx) const;
  int height(int idx) const;

  int cartan(int i, int j) const { return cartan_[i][j]; }
  /// (alpha, alpha) for the root at idx, W-invariant normalization with long
  /// roots of square length 2 in the simply laced case.
  Rat norm2(int idx) const;
  /// Pairing of the root at idx against the i-th simple coroot.
  int pair_coroot(int idx, int i) const;

  /// s_i applied to the root at idx, as an index.
  int reflect(int i, int idx) const { return reflect_[i][idx]; }
  int act(const WeylWord& w, int idx) const;

  /// Reduced word for the longest element; length equals num_positive().
  const WeylWord& longest_word() const { return longest_; }
  /// The diagram permutation i -> j with w0(alpha_i) = -alpha_j.
  int minus_w0(int i) const { return minus_w0_[i]; }

  /// All roots supported on the given subset of simple slots.
  std::vector<int> span_closure(const std::vector<int>& sigma0) const;

  /// Reduced word for the longest element of the parabolic subsystem delta0,
  /// which must be the span closure of a set of simple roots.
  WeylWord subset_longest_element(const std::vector<int>& delta0) const;

 private:
  RootSystem() = default;

  Series series_;
  int rank_ = 0;
  int pos_ = 0;
  std::vector<std::vector<int>> cartan_;
  std::vector<Rat> simple_norm2_;
  std::vector<RootCoords> roots_;
  std::vector<int> simple_idx_;
  std::vector<std::vector<int>> reflect_;  // [simple][root idx]
  WeylWord longest_;
  std::vector<int> minus_w0_;
};

}  // namespace lieth

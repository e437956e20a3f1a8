#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lieth/real_forms.hpp"

namespace lieth {

/// Painted diagram: blackened simple roots plus an involutive arrow pairing
/// on the white ones.  Slots are 0-based internally; the JSON format is
/// 1-based.
struct SatakeDiagram {
  Series series = Series::A;
  int rank = 0;
  std::vector<int> black;                     // sorted
  std::vector<std::pair<int, int>> arrows;    // canonical (i < j), sorted

  void validate() const;
  bool is_black(int i) const;
  bool operator==(const SatakeDiagram& o) const;
};

/// The diagram automorphism (-w^0) c attached to the painted diagram, where
/// c restricts to -w0 of the black subsystem and swaps arrow partners.
DiagramAutomorphism satake_inner_class(const RootSystem& rs, const SatakeDiagram& sd);

struct IwasawaReport {
  bool involution_ok = false;       // conjugate-linear involutive automorphism
  bool commutes_with_theta = false;
  bool preserves_a = false;
  bool a_fixed_maximal = false;     // fixed part of a maximal abelian in fixed p
  bool positivity = false;          // nonvanishing positive roots stay positive
  int dim_a_fixed = 0;
  std::vector<int> sigma0;          // simple slots restricting to zero

  bool all() const {
    return involution_ok && commutes_with_theta && preserves_a && a_fixed_maximal && positivity;
  }
};

/// Checks the alignment conditions of a conjugation against the compact one.
IwasawaReport check_iwasawa_form(const WeylBasis& wb, const LinearEndo& tau,
                                 const LinearEndo& theta);

/// Reads the painted diagram back off an aligned conjugation.
SatakeDiagram extract_satake(const WeylBasis& wb, const LinearEndo& tau);

struct SatakeRealization {
  LinearEndo tau;
  DiagramAutomorphism d;        // inner class
  WeylWord w0_word;             // longest element of the black subsystem
  uint32_t sign_mask = 0;       // torus character used to fix tau^2 = id
  SatakeDiagram round_trip;
  IwasawaReport report;
};

/// Builds an aligned conjugation realizing the painted diagram, as the
/// canonical Weyl representative of the black longest element twisted by a
/// sign character of the root lattice.
SatakeRealization tau_from_satake(const WeylBasis& wb, const SatakeDiagram& sd);

/// Built-in catalog of painted diagrams.
std::vector<std::string> satake_catalog_ids();
SatakeDiagram satake_catalog(const std::string& id);

}  // namespace lieth

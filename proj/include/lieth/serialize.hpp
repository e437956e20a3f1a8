#pragma once

#include <json.hpp>
#include <string>

#include "lieth/satake.hpp"
#include "lieth/weyl_basis.hpp"

namespace lieth {

using Json = nlohmann::ordered_json;

/// Root data as a JSON document: roots as integer coordinate vectors over
/// the simple basis, positive roots first in index order.
Json root_system_json(const RootSystem& rs);

/// Root data plus coroots and the nonzero structure constants, the latter
/// as [a, b, m] triples over 0-based root indices.
Json weyl_basis_json(const WeylBasis& wb);

/// Painted diagram file format, 1-indexed:
///   { "series": "A", "rank": 3, "black": [2], "arrows": [[1, 3]] }
Json satake_json(const SatakeDiagram& sd);
SatakeDiagram satake_from_json(const nlohmann::json& j);
SatakeDiagram load_satake_file(const std::string& path);

/// Serialized documents are dumped with two-space indentation and a trailing
/// newline so golden files compare byte for byte.
std::string dump_json(const Json& j);

/// Resolves a file under the installed data directory.
std::string data_path(const std::string& rel);

}  // namespace lieth

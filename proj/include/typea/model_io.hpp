#pragma once

// JSON model documents:
//   {"christoffel": {"111": .., "112": .., "121": .., "122": .., "221": .., "222": ..},
//    "name": "optional label"}
// Key "ijk" holds C_ij^k with i <= j; nothing else is accepted.

#include <optional>
#include <string>
#include <string_view>

#include "typea/affine_core.hpp"

namespace typea {

struct ModelDocument {
    ChristoffelSymbols christoffel;
    std::optional<std::string> name;
};

/// Throws InputDomain on malformed JSON, missing, unknown or non-finite entries.
ModelDocument parse_model_document(std::string_view text);

/// Compact JSON; floats use the shortest round-trip decimal.
std::string serialize_model_document(const ModelDocument& doc);

/// Reads and parses a file. Throws InputDomain when it cannot be read.
ModelDocument load_model_document(const std::string& path);

/// "M1", "M2", "M3", "M+:delta" or "M-:delta" (delta defaults to 0).
ModelDocument canonical_document(std::string_view spec);

}  // namespace typea

#pragma once

#include <string>

#include <json.hpp>

#include "olive/etr.hpp"
#include "olive/kgroup.hpp"
#include "olive/ladder.hpp"
#include "olive/relational.hpp"

namespace olive::io {

using nlohmann::json;

/// {"l2": hex, "l1": hex, "l0": hex}, each the BitVec::to_hex of that level.
json to_json(const KElement& e);
KElement kelement_from_json(const json& j, const KParams& p);

/// {"lambda": N, "iota": 2, "rows": [[...], ...]} where rows[i] is f_{i+1},
/// so rows[i] has i + 1 entries.
json to_json(const Ladder& f);
Ladder ladder_from_json(const json& j);

json to_json(const OliveSignature& sig);
OliveSignature signature_from_json(const json& j);

/// {"signature": {...}, "universe": N, "P": [[i,j],...], "Q0": [...], "Q1": [...]}
json to_json(const FinStructure& s);
FinStructure structure_from_json(const json& j);

/// {"nodes": N, "parent": [...], "linear_order": [...], "P": [...],
///  "F0": [[p, img], ...], "F1": [...]}. Missing arrays read as empty and a
/// missing "nodes" as the length of "parent".
json to_json(const ExpandedTree& t);
ExpandedTree tree_from_json(const json& j);

json to_json(const SPair& s);
json to_json(const Triple& t);

/// Parses a file; throws olive::Error if it cannot be read or parsed.
json read_file(const std::string& path);

}  // namespace olive::io

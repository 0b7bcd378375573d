#pragma once

#include <json.hpp>

#include "invar/circuit.hpp"

namespace invar::circ {

/// Circuit wire format:
///   {"m": int, "r": int,
///    "gates": [{"op":"const","value":"num/den"} |
///              {"op":"xvar","index":[i,j,k]} | {"op":"xvar","index":t} |
///              {"op":"yvar","index":t} |
///              {"op":"add","l":id,"r":id} | {"op":"mul","l":id,"r":id}],
///    "outputs": [id or null, ...]}
/// Main-variable indices are written as 1-based [i,j,k] triples whenever m is
/// a perfect cube n^3 (flat = (i-1)n^2 + (j-1)n + (k-1)) and as flat 0-based
/// integers otherwise; both forms are accepted on input. A null output is a
/// structurally-zero polynomial.
nlohmann::json to_json(const Circuit& c);
Circuit circuit_from_json(const nlohmann::json& j);

}  // namespace invar::circ

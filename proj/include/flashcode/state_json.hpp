#pragma once

// JSON interchange for cell states:
//   {"n":…, "k":…, "q":…, "scheme":…, "cells":[…]}
// Keys are emitted in that order.

#include <string>

#include <json.hpp>

#include "flashcode/core.hpp"

namespace flashcode {

using ordered_json = nlohmann::ordered_json;

ordered_json state_to_json(const CodeParams& params, const CellState& state);

/// Parses and validates a state document. Throws Error(invalid_params) for
/// malformed documents or parameters and Error(corrupted_state) for cells
/// that do not fit (wrong count, level out of range).
std::pair<CodeParams, CellState> state_from_json(const ordered_json& doc);

}  // namespace flashcode

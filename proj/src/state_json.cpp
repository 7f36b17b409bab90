#include "flashcode/state_json.hpp"

namespace flashcode {

ordered_json state_to_json(const CodeParams& params, const CellState& state) {
  ordered_json doc;
  doc["n"] = params.n;
  doc["k"] = params.k;
  doc["q"] = params.q;
  doc["scheme"] = scheme_name(params.scheme);
  auto& cells = doc["cells"] = ordered_json::array();
  for (Level l : state.levels) cells.push_back(static_cast<int>(l));
  return doc;
}

std::pair<CodeParams, CellState> state_from_json(const ordered_json& doc) {
  CodeParams params;
  try {
    params = CodeParams::make(doc.at("n").get<int>(), doc.at("k").get<int>(), doc.at("q").get<int>(),
                              parse_scheme(doc.at("scheme").get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::invalid_params, std::string("malformed state document: ") + e.what());
  }

  const auto& cells = doc.contains("cells") ? doc["cells"] : ordered_json();
  if (!cells.is_array() || cells.size() != static_cast<std::size_t>(params.n)) {
    throw Error(ErrorKind::corrupted_state, "cells must be an array of n levels");
  }
  CellState state = CellState::zeros(static_cast<std::size_t>(params.n));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i].is_number_integer()) throw Error(ErrorKind::corrupted_state, "cell levels must be integers");
    const auto level = cells[i].get<std::int64_t>();
    if (level < 0 || level >= params.q) {
      throw Error(ErrorKind::corrupted_state, "cell " + std::to_string(i) + " level out of range");
    }
    state.levels[i] = static_cast<Level>(level);
  }
  return {params, state};
}

}  // namespace flashcode

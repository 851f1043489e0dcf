#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hc/solver.hpp"

namespace hc {

// Machine-readable solve report:
// { "seed", "gamma": [re,im], "n_paths", "n_failed", "n_at_infinity",
//   "runtime_seconds", "solutions": [ { "x": [[re,im],...], "residual",
//   "winding_number", "is_real", "is_singular", "at_infinity", "path_index" } ] }
nlohmann::ordered_json result_to_json(const SolveResult& result);

SolveResult result_from_json(const nlohmann::ordered_json& j);  // fields used by tools

// Start points for custom homotopies. Accepts {"starts": [...]}, a solve
// report (solutions[].x with the homogenizing coordinate 1 prepended), or a
// bare array of points; each point is a list of [re,im] pairs.
std::vector<CVec> parse_starts_json(const std::string& path);
std::vector<CVec> starts_from_json(const nlohmann::ordered_json& j);

}  // namespace hc

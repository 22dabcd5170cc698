#pragma once

#include "jlq_cli/problem.hpp"

#include <json.hpp>

#include <string>

namespace jlq::cli {

using nlohmann::json;

// Every report carries "stage" and "status"; status is one of
// "ok", "empty", "verification_failure", "ansatz_insufficient".
json stage_symmetries(const Problem& p, bool verify_only);
json stage_multipliers(const Problem& p);
json stage_lagrangians(const Problem& p, const json& multipliers);
json stage_noether(const Problem& p, const json& lagrangians);
json stage_transformation(const Problem& p);
// noether may be null when the Lagrangian is given as an expression.
json stage_quantize(const Problem& p, const json& noether, bool verify_only);

// 0 ok or empty, 1 verification failure, 3 ansatz insufficient.
int status_code(const json& report);

// Text rendering of a stage or pipeline report.
std::string render(const json& report);

// Orders "X2" before "X10".
bool natural_less(const std::string& a, const std::string& b);

}  // namespace jlq::cli

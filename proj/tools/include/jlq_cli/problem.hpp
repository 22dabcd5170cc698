#pragma once

#include "jlq/ode.hpp"
#include "jlq/var_ctx.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jlq::cli {

// Malformed problem file or invalid option; exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Transformation {
    std::string s1, s2;
    std::string t_new, x_new;
    std::optional<std::string> target;
};

struct Problem {
    std::string name;
    std::string ode_text;
    Ode2 ode{Expr()};
    std::vector<PointSymmetry> symmetries;
    int search_degree = 2;
    int gauge_degree = 3;
    // restricts the multiplier sweep; empty means all pairs
    std::vector<std::pair<std::string, std::string>> pairs;
    // user Lagrangians by label, kept as written
    std::map<std::string, std::string> lagrangians;
    std::optional<Transformation> transformation;

    // quantization
    std::string lagrangian;  // label or expression
    bool schrodinger_mode = false;
    int ansatz_degree = 2;
    bool allow_log = false;
    int max_depth = 3;
    std::optional<std::string> xi;
    // PDE and lambdas checked by --verify-only
    std::optional<std::array<std::string, 6>> pde;
    std::vector<std::string> lams;

    const PointSymmetry& symmetry(const std::string& label) const;
};

// Point symmetry variables t, q.
const VarCtx& point_ctx();

Problem parse_problem(const nlohmann::json& j, std::string name);
// Throws ConfigError for unreadable files and JSON syntax errors.
Problem load_problem(const std::filesystem::path& path, std::string* raw = nullptr);

}  // namespace jlq::cli

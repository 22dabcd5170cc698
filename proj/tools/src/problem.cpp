#include "jlq_cli/problem.hpp"

#include "jlq/parser.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace jlq::cli {

namespace {

using nlohmann::json;

Expr parse_field(const std::string& text, const VarCtx& ctx, const std::string& where) {
    try {
        return parse(text, ctx);
    } catch (const ParseError& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

template <class T>
T get(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("field '") + key + "' has the wrong type");
    }
}

std::string trim(std::string s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

}  // namespace

const VarCtx& point_ctx() {
    static const VarCtx ctx{{"t", Role::independent}, {"q", Role::dependent}};
    return ctx;
}

const PointSymmetry& Problem::symmetry(const std::string& label) const {
    for (auto& s : symmetries)
        if (s.label == label) return s;
    throw ConfigError("unknown symmetry label '" + label + "'");
}

Problem parse_problem(const json& j, std::string name) {
    if (!j.is_object()) throw ConfigError("problem file must hold a JSON object");
    Problem p;
    p.name = std::move(name);
    if (!j.contains("ode")) throw ConfigError("missing field 'ode'");
    p.ode_text = get<std::string>(j, "ode", "");
    std::string rhs = p.ode_text;
    if (auto eq = rhs.find('='); eq != std::string::npos) {
        if (trim(rhs.substr(0, eq)) != "qdd") throw ConfigError("ode must read 'qdd = F(t, q, qd)'");
        rhs = rhs.substr(eq + 1);
    }
    VarCtx ode_ctx{{"t", Role::independent}, {"q", Role::dependent}, {"qd", Role::jet}};
    p.ode = Ode2(parse_field(rhs, ode_ctx, "ode"));

    std::set<std::string> labels;
    json syms = get<json>(j, "symmetries", json::array());
    for (auto& s : syms) {
        auto label = get<std::string>(s, "label", "");
        if (label.empty()) throw ConfigError("symmetry without a label");
        if (!labels.insert(label).second) throw ConfigError("duplicate symmetry label '" + label + "'");
        p.symmetries.emplace_back(parse_field(get<std::string>(s, "v", "0"), point_ctx(), label + ".v"),
                                  parse_field(get<std::string>(s, "g", "0"), point_ctx(), label + ".g"), label);
    }

    p.search_degree = get<int>(j, "search_degree", 2);
    p.gauge_degree = get<int>(j, "gauge_degree", 3);
    json pairs = get<json>(j, "pairs", json::array());
    for (auto& pr : pairs) {
        if (!pr.is_array() || pr.size() != 2) throw ConfigError("each entry of 'pairs' must be [label, label]");
        p.pairs.emplace_back(pr[0].get<std::string>(), pr[1].get<std::string>());
        p.symmetry(p.pairs.back().first);
        p.symmetry(p.pairs.back().second);
    }
    json user = get<json>(j, "lagrangians", json::object());
    for (auto& [label, text] : user.items()) {
        parse_field(text.get<std::string>(), VarCtx::ode(), "lagrangian " + label);
        p.lagrangians[label] = text.get<std::string>();
    }
    if (j.contains("transformation")) {
        auto& tr = j.at("transformation");
        auto pair = get<std::vector<std::string>>(tr, "pair", {});
        if (pair.size() != 2) throw ConfigError("transformation.pair must name two symmetries");
        Transformation t{pair[0], pair[1], get<std::string>(tr, "t", ""), get<std::string>(tr, "x", ""), std::nullopt};
        p.symmetry(t.s1);
        p.symmetry(t.s2);
        parse_field(t.t_new, point_ctx(), "transformation.t");
        parse_field(t.x_new, point_ctx(), "transformation.x");
        if (tr.contains("target")) {
            t.target = get<std::string>(tr, "target", "");
            parse_field(*t.target, ode_ctx, "transformation.target");
        }
        p.transformation = t;
    }

    p.lagrangian = get<std::string>(j, "lagrangian", "");
    auto mode = get<std::string>(j, "mode", "general");
    if (mode != "general" && mode != "schrodinger") throw ConfigError("mode must be 'general' or 'schrodinger'");
    p.schrodinger_mode = mode == "schrodinger";
    p.ansatz_degree = get<int>(j, "ansatz_degree", 2);
    p.allow_log = get<bool>(j, "allow_log", false);
    p.max_depth = get<int>(j, "max_depth", 3);
    if (p.ansatz_degree < 0 || p.search_degree < 0 || p.gauge_degree < 0 || p.max_depth < 0)
        throw ConfigError("degrees must be nonnegative");
    if (j.contains("xi")) {
        p.xi = get<std::string>(j, "xi", "");
        parse_field(*p.xi, VarCtx::pde(), "xi");
    }
    if (j.contains("pde")) {
        auto& c = j.at("pde");
        std::array<std::string, 6> slots;
        const char* keys[] = {"psi_tt", "psi_tx", "psi_xx", "psi_t", "psi_x", "psi"};
        for (int k = 0; k < 6; ++k) {
            slots[k] = get<std::string>(c, keys[k], "0");
            parse_field(slots[k], VarCtx::pde(), std::string("pde.") + keys[k]);
        }
        p.pde = slots;
        for (auto& l : get<std::vector<std::string>>(j, "lams", {})) {
            parse_field(l, VarCtx::pde(), "lams");
            p.lams.push_back(l);
        }
    }
    return p;
}

Problem load_problem(const std::filesystem::path& path, std::string* raw) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    json j;
    try {
        j = json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    if (raw) *raw = ss.str();
    return parse_problem(j, path.stem().string());
}

}  // namespace jlq::cli

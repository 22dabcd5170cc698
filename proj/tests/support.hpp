#pragma once

#include "jlq/ode.hpp"
#include "jlq/parser.hpp"
#include "jlq/pde.hpp"

#include <json.hpp>

#include <fstream>
#include <string>
#include <vector>

namespace jlq::test {

inline Expr P(const std::string& s) { return parse(s); }

inline const nlohmann::json& oracle() {
    static const nlohmann::json j = [] {
        std::ifstream in(std::string(JLQ_TEST_DATA) + "/oracle.json");
        return nlohmann::json::parse(in);
    }();
    return j;
}

inline std::vector<PointSymmetry> free_particle_symmetries() {
    return {{P("q*t"), P("q^2"), "X1"}, {P("q"), P("0"), "X2"}, {P("t^2"), P("q*t"), "X3"}, {P("0"), P("q"), "X4"},
            {P("t"), P("0"), "X5"},     {P("1"), P("0"), "X6"}, {P("0"), P("t"), "X7"},     {P("0"), P("1"), "X8"}};
}

inline Ode2 free_particle() { return Ode2(Expr()); }

inline Ode2 riccati() { return Ode2(P("-3*q*qd - q^3")); }

inline std::vector<PointSymmetry> riccati_symmetries() {
    return {{P("t^3*(t*q-2)"), P("-t*(q*t-2)*(q^2*t^2+2-2*q*t)"), "G1"},
            {P("q*t^3"), P("-(q*t-1)*(q^2*t^2+4-2*q*t)"), "G2"},
            {P("q*t^2"), P("-q*(q^2*t^2+2-2*q*t)"), "G3"},
            {P("q*t"), P("-q^2*(q*t-1)"), "G4"},
            {P("q"), P("-q^3"), "G5"},
            {P("1"), P("0"), "G6"},
            {P("t"), P("-q"), "G7"},
            {P("t^2"), P("-2*(q*t-1)"), "G8"}};
}

inline LinearPde2 pde(const std::vector<std::string>& c, bool schrodinger = false) {
    LinearPde2 p;
    for (int k = 0; k < 6; ++k) p.c[k] = P(c[k]);
    p.schrodinger_mode = schrodinger;
    return p;
}

inline PdeSymmetry field(const std::string& xt, const std::string& xx, const std::string& lam = "0",
                         std::string label = {}) {
    return {P(xt), P(xx), P(lam), std::move(label)};
}


// Reference equations with symmetry generators and their lambdas.
struct ReferencePde {
    LinearPde2 pde;
    std::vector<PdeSymmetry> syms;
};

inline std::vector<PdeSymmetry> generator_list(const std::string& key, const std::vector<std::string>& lams) {
    std::vector<PdeSymmetry> out;
    auto& g = oracle()["generators"][key];
    for (std::size_t k = 0; k < g.size(); ++k)
        out.push_back(field(g[k][0].get<std::string>(), g[k][1].get<std::string>(), lams[k]));
    return out;
}

inline ReferencePde reference(const std::string& name) {
    if (name == "sch")
        return {pde({"0", "0", "1", "2*i", "0", "0"}, true),
                generator_list("sch", {"(i*x^2 - t)/2", "0", "0", "i*x", "0"})};
    if (name == "sch20")
        return {pde({"4*t^2", "8*t*x", "4*x^2", "12*t", "12*x", "3"}),
                generator_list("w", {"-x/2", "0", "-t/2", "0", "0"})};
    if (name == "sch2b")
        return {pde({"4*t^4", "8*t^3*x", "4*t^2*x^2", "4*t^2*(3*t + x)", "4*t*x*(3*t + x)", "3*t^2 + 4*t*x + x^2"}),
                generator_list("w", {"-(1 + x/t)*x/2", "x^2/(2*t^2)*log(t)", "-(t + x)/2", "x/t*log(t)",
                                     "-log(t)/2"})};
    if (name == "schr")
        return {pde({"4", "-8*x^2", "4*x^4", "0", "8*x^3", "-3*x^2"}),
                generator_list("riccati", {"-(t*x - 1)^3/(2*x)", "-(t*x - 1)^2/2", "-(t*x - 1)*x/2", "-x^2/2",
                                           "-(t*x - 1)/x"})};
    throw std::invalid_argument("no reference equation " + name);
}

}  // namespace jlq::test

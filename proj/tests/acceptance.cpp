// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "random_gen.hpp"
#include "support.hpp"

#include "jlq/lagrange.hpp"
#include "jlq/linear_solve.hpp"
#include "jlq/noether.hpp"
#include "jlq/quantizer.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

using namespace jlq;
using namespace jlq::test;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream notes;

    void require(bool ok, const std::string& what) {
        if (ok || !seen.insert(what).second) return;
        notes << (pass ? "failed: " : "; ") << what;
        pass = false;
    }

private:
    std::set<std::string> seen;
};

// Multiplier and Lagrangian table of the free particle, keyed by the pair of
// generators it comes from. The last entry is listed as M87 = 1 in the
// reference; the sweep orders pairs as X7,X8 and gets -1.
struct TableRow {
    std::string pair;
    std::string m;
    std::string l;
};

const std::vector<TableRow>& free_particle_table() {
    static const std::vector<TableRow> rows{
        {"X1,X3", "-1/(t*qd - q)^3", "-1/(2*t^2*(t*qd - q))"},
        {"X1,X5", "-1/(qd*(t*qd - q)^2)", "qd/q^2*(log(t*qd - q) - log(qd))"},
        {"X1,X6", "1/(qd^2*(t*qd - q))", "(t*qd/q^2 - 1/q)*(log(qd) - log(t*qd - q))"},
        {"X1,X7", "-1/(t*qd - q)^2", "-log(t*qd - q)/t^2"},
        {"X1,X8", "1/(qd*(t*qd - q))", "-qd/q*log(qd) - (1/t - qd/q)*log(t*qd - q) + (1 + log(q))/t"},
        {"X2,X6", "-1/qd^3", "-1/(2*qd)"},
        {"X2,X8", "1/qd^2", "-log(qd)"},
        {"X3,X8", "1/(t*qd - q)", "(qd/t - q/t^2)*(log(t*qd - q) - 1)"},
        {"X4,X8", "-1/qd", "qd*(1 - log(qd))"},
        {"X7,X8", "1", "qd^2/2"},
    };
    return rows;
}

struct IntegralRow {
    std::string symmetry;
    std::string integral;
};

const std::vector<IntegralRow> l13_integrals{{"X1", "-qd/(q - t*qd)"},
                                             {"X2", "qd^2/(2*(q - t*qd)^2)"},
                                             {"X3", "-1/(q - t*qd)"},
                                             {"X4-X5", "-qd/(q - t*qd)^2"},
                                             {"X7", "-1/(2*(q - t*qd)^2)"}};

const std::vector<IntegralRow> l87_integrals{{"X3", "-(q - t*qd)^2/2"},
                                             {"X4+2*X5", "-qd*(q - t*qd)"},
                                             {"X6", "qd^2/2"},
                                             {"X7", "q - t*qd"},
                                             {"X8", "-qd"}};

std::vector<Lagrangian> free_particle_lagrangians() {
    auto ode = free_particle();
    std::vector<Lagrangian> out;
    for (auto& m : distinct_multipliers(multiplier_sweep(ode, free_particle_symmetries())))
        out.push_back(lagrangian_from_multiplier(ode, m));
    return out;
}

const Lagrangian* by_provenance(const std::vector<Lagrangian>& ls, const std::string& pair) {
    for (auto& l : ls)
        if (l.provenance == pair) return &l;
    return nullptr;
}

// I1 = +-I2 + c
bool same_integral(const Expr& a, const Expr& b) {
    return (a - b).is_constant() || (a + b).is_constant();
}

void check_spectrum(Outcome& o, const SpectrumEntry& e, const std::vector<IntegralRow>& expected, const std::string& name) {
    auto ode = free_particle();
    o.require(e.certificates.size() == 5, name + " has " + std::to_string(e.certificates.size()) + " Noether symmetries");
    for (auto& row : expected) {
        auto it = std::find_if(e.certificates.begin(), e.certificates.end(),
                               [&](const NoetherCertificate& c) { return c.symmetry.label == row.symmetry; });
        if (it == e.certificates.end()) {
            o.require(false, name + " lacks " + row.symmetry);
            continue;
        }
        o.require(same_integral(it->integral, P(row.integral)), name + " integral for " + row.symmetry);
        o.require(total_derivative(P(row.integral), ode).is_zero(), "reference integral for " + row.symmetry + " conserved");
        o.require(total_derivative(it->integral, ode).is_zero(), name + " integral for " + row.symmetry + " conserved");
    }
}

std::vector<PdeSymmetry> geometric(const ReferencePde& ref) {
    std::vector<PdeSymmetry> out;
    for (auto& s : ref.syms) out.push_back({s.xi_t, s.xi_x, Expr(), s.label});
    return out;
}

std::vector<Expr> lambdas(const ReferencePde& ref) {
    std::vector<Expr> out;
    for (auto& s : ref.syms) out.push_back(s.lam);
    return out;
}

// Some branch contains the reference equation with its lambdas, up to
// additive constants (multiples of psi d/dpsi). Returns the number of lambdas
// that differ by a nonzero constant, or -1 if no branch matches.
int branch_match(const DeterminingResult& res, const ReferencePde& ref) {
    auto lams = lambdas(ref);
    for (auto& b : res.branches) {
        auto m = branch_member(b, ref.pde, lams);
        if (!m) continue;
        int shifted = 0;
        bool ok = true;
        for (std::size_t k = 0; k < lams.size(); ++k) {
            Expr d = m->lams[k] - lams[k];
            ok = ok && d.is_constant();
            shifted += !d.is_zero();
        }
        if (ok) return shifted;
    }
    return -1;
}

std::set<std::string> exponent_set(const EulerSolution& s) {
    std::set<std::string> out;
    for (auto& r : s.exponents) out.insert(r.str());
    return out;
}

// ---------------------------------------------------------------------------

void criterion1(Outcome& o) {
    auto ode = free_particle();
    auto syms = free_particle_symmetries();
    for (auto& s : syms) o.require(verify_point_symmetry(s, ode).ok, s.label + " verifies");
    auto basis = find_point_symmetries(ode, 2);
    o.require(basis.size() == 8, "search dimension " + std::to_string(basis.size()));
    for (auto& s : syms) o.require(span_coordinates(basis, s).has_value(), s.label + " in the searched span");
    o.notes << "8 generators, search span " << basis.size();
}

void criterion2(Outcome& o) {
    auto sweep = multiplier_sweep(free_particle(), free_particle_symmetries());
    std::set<std::string> degenerate;
    for (auto& e : sweep)
        if (e.degenerate) degenerate.insert(e.s1 + "," + e.s2);
    std::set<std::string> expected{"X1,X2", "X1,X4", "X2,X4", "X3,X5", "X3,X7", "X5,X7", "X6,X8"};
    o.require(sweep.size() == 28, "28 pairs");
    o.require(degenerate == expected, "degenerate pairs");
    auto ms = distinct_multipliers(sweep);
    o.require(ms.size() == 10, std::to_string(ms.size()) + " distinct multipliers");
    for (auto& row : free_particle_table()) {
        auto it = std::find_if(ms.begin(), ms.end(), [&](const Multiplier& m) { return m.provenance == row.pair; });
        o.require(it != ms.end() && constant_ratio(it->m, P(row.m)).has_value(), "multiplier of " + row.pair);
    }
    if (o.pass) o.notes << "7 degenerate pairs, 10 multipliers up to constants";
}

void criterion3(Outcome& o) {
    auto ls = free_particle_lagrangians();
    o.require(ls.size() == 10, std::to_string(ls.size()) + " Lagrangians");
    for (auto& row : free_particle_table()) {
        auto* l = by_provenance(ls, row.pair);
        o.require(l && gauge_equivalent_up_to_constant(l->l, P(row.l)).has_value(), "Lagrangian of " + row.pair);
    }
    int linked = 0;
    for (std::size_t i = 0; i < ls.size(); ++i)
        for (std::size_t j = i + 1; j < ls.size(); ++j) linked += gauge_equivalent(ls[i], ls[j]);
    o.require(linked == 0, std::to_string(linked) + " gauge-linked pairs");
    if (o.pass) o.notes << "10 Lagrangians modulo gauge, 45 pairs inequivalent";
}

void criterion4(Outcome& o) {
    auto ls = free_particle_lagrangians();
    for (auto& l : ls)
        o.require(constant_ratio(diff(l.l, vars::qd(), 2), l.multiplier).has_value(), "second derivative of " + l.provenance);
    for (auto& row : free_particle_table())
        o.require(constant_ratio(diff(P(row.l), vars::qd(), 2), P(row.m)).has_value(), "reference Lagrangian " + row.pair);
    if (o.pass) o.notes << "all 10 multipliers recovered";
}

void criterion5(Outcome& o) {
    auto ls = free_particle_lagrangians();
    auto* l13 = by_provenance(ls, "X1,X3");
    auto* l78 = by_provenance(ls, "X7,X8");
    if (!l13 || !l78) {
        o.require(false, "Lagrangians of X1,X3 and X7,X8");
        return;
    }
    auto spectrum = noether_spectrum({*l13, *l78}, free_particle_symmetries(), free_particle());
    check_spectrum(o, spectrum[0], l13_integrals, "L13");
    check_spectrum(o, spectrum[1], l87_integrals, "L78");
    if (o.pass) o.notes << "5 + 5 generators, 10 integrals conserved";
}

void criterion6(Outcome& o) {
    auto ref = reference("sch");
    QuantizeOptions opt;
    opt.schrodinger_mode = true;
    auto res = solve_determining(geometric(ref), opt);
    o.require(branch_match(res, ref) == 0, "2*i*psi_t + psi_xx = 0 with the reference lambdas");
    if (!res.branches.empty()) {
        auto rep = representative(res.branches.front());
        o.require(rep.pde.normalized().str() == ref.pde.normalized().str(), "representative " + rep.pde.str());
        o.notes << rep.pde.str() << ", " << res.branches.size() << " branch(es)";
    }
}

void criterion7(Outcome& o) {
    auto sch20 = reference("sch20");
    QuantizeOptions opt;
    auto res = solve_determining(geometric(sch20), opt);
    o.require(branch_match(res, sch20) == 0, "4t^2, 8tx, 4x^2, 12t, 12x, 3 with W1 = -x/2, W3 = -t/2");

    // the psi_tx coefficient is 8t^3x and W4 = -(x/t)log(t); the printed
    // 8t^2x and +(x/t)log(t) fail the symmetry condition
    auto sch2b = reference("sch2b");
    sch2b.syms[3].lam = -sch2b.syms[3].lam;
    opt.allow_log = true;
    opt.degree = 4;
    auto logs = solve_determining(geometric(sch2b), opt);
    o.require(branch_match(logs, sch2b) == 0, "log-extended branch with the corrected second equation");
    if (o.pass) o.notes << "both equations found (second with corrected psi_tx coefficient and W4 sign)";
}

void criterion8(Outcome& o) {
    struct Case {
        const char* name;
        const char* xi;
        const char* phi_xx;
        const char* phi_x;
        const char* phi;
        std::set<std::string> roots;
    };
    std::vector<Case> cases{
        {"sch20", "x/t", "4*x^2", "12*x", "3", {"-1/2", "-3/2"}},
        {"schr", "t - 1/x", "4*x^2", "8*x", "-3", {"1/2", "-3/2"}},
        {"sch2b", "x/t", "4*x^2", "(12 + 4*xi)*x", "3 + 4*xi + xi^2", {"-1/2 - xi/2", "-3/2 - xi/2"}},
    };
    for (auto& c : cases) {
        auto p = reference(c.name).pde;
        std::string n = c.name;
        o.require(classify(p) == PdeClass::parabolic, n + " parabolic");
        Expr xi = characteristic_coordinate(p);
        o.require(xi == P(c.xi), n + " characteristic coordinate " + xi.str());
        auto red = to_normal_form(p, xi);
        auto k = constant_ratio(red.phi_xx, P(c.phi_xx));
        o.require(k && red.phi_xi.is_zero() && red.phi_x == Expr(*k) * P(c.phi_x) && red.phi == Expr(*k) * P(c.phi),
                  n + " normal form " + red.str());
        auto sol = solve_euler(red);
        std::set<std::string> want;
        for (auto& r : c.roots) want.insert(P(r).str());
        o.require(sol.closed && exponent_set(sol) == want, n + " exponents");
        o.require(back_substitution_check(p, red, sol), n + " back substitution");
    }
    if (o.pass) o.notes << "xi = x/t, t - 1/x; three Euler equations solved";
}

void criterion9(Outcome& o) {
    auto ode = riccati();
    auto g = riccati_symmetries();
    for (auto& s : g) o.require(verify_point_symmetry(s, ode).ok, s.label + " verifies");

    auto pr = jlm_from_pair(ode, g[4], g[5]);
    if (!pr.multiplier) {
        o.require(false, "G5,G6 multiplier");
        return;
    }
    auto lagr = P("-1/(2*(qd + q^2))");
    auto l = lagrangian_from_multiplier(ode, *pr.multiplier, 4);
    o.require(gauge_equivalent_up_to_constant(l.l, lagr).has_value(), "Lagr from the G5,G6 multiplier");

    auto spectrum = noether_spectrum({lagrangian_from_expr(lagr, "Lagr")}, g, ode, 4);
    std::vector<std::string> labels;
    for (auto& c : spectrum[0].certificates) labels.push_back(c.symmetry.label);
    o.require(labels == std::vector<std::string>{"G2-G8", "G3-2/3*G7", "G4", "G5", "G6"}, "Noether set");

    auto st = canonical_straightening_check(g[4], g[5], P("1/(2*q^2)"), P("(t*q - 1)/q"), ode, P("-qd^3"));
    o.require(st.straightens, "G5, G6 straightened");
    o.require(st.target_matches, "cubic equation");

    auto schr = reference("schr");
    QuantizeOptions opt;
    opt.degree = 4;
    auto res = solve_determining(geometric(schr), opt);
    int shifted = branch_match(res, schr);
    o.require(shifted >= 0, "Riccati Schrodinger equation with the reference lambdas");
    if (o.pass) {
        o.notes << "8 generators, Lagr, 5 Noether symmetries, cubic equation, quantized";
        if (shifted > 0) o.notes << "; " << shifted << " lambda(s) differ by a constant multiple of psi d/dpsi";
    }
}

std::optional<GQ> try_eval(const std::function<GQ()>& f) {
    try {
        return f();
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
}

void criterion10(Outcome& o) {
    RandomGen g;
    auto ode = free_particle();

    auto ms = distinct_multipliers(multiplier_sweep(ode, free_particle_symmetries()));
    for (int n = 0; n < 10; ++n) {
        auto r = multiplier_ratio(ms[g.pick(0, 9)], ms[g.pick(0, 9)], ode);
        o.require(total_derivative(r.r, ode).is_zero(), "multiplier ratio conserved");
    }

    Expr base = P("qd^2/2 - q/t");
    for (int n = 0; n < 20; ++n) {
        Expr l1 = base + total_derivative_free(g.poly_tq());
        Expr l2 = l1 + total_derivative_free(g.poly_tq());
        o.require(gauge_equivalent(l1, l1) && gauge_equivalent(l1, base) && gauge_equivalent(base, l1) &&
                      gauge_equivalent(l2, base),
                  "gauge equivalence relation");
    }

    int compared = 0;
    for (int n = 0; n < 1000; ++n) {
        auto tree = g.tree(4);
        Expr e;
        try {
            e = to_expr(*tree);
        } catch (const std::domain_error&) {
            continue;
        }
        for (int k = 0; k < 5; ++k) {
            std::map<std::string, GQ> at{{"t", g.number()}, {"q", g.number()}, {"qd", g.number()}};
            auto value = [&](Var v) { return at.at(sym_name(v)); };
            auto a = try_eval([&] { return evaluate_tree(*tree, value); });
            auto b = try_eval([&] { return evaluate(e, value); });
            if (!a || !b) continue;
            o.require(*a == *b, "normal form of " + ast::print(*tree));
            ++compared;
        }
    }

    std::vector<Var> u{sym("u1"), sym("u2"), sym("u3")};
    int solved = 0;
    for (int n = 0; n < 50; ++n) {
        std::vector<Expr> eqs;
        for (int r = 0; r < 3; ++r) {
            Expr e(GQ(g.pick(-4, 4)));
            for (auto v : u) e = e + Expr(GQ(g.pick(-3, 3))) * P("t").pow(g.pick(0, 1)) * Expr::variable(v);
            eqs.push_back(e);
        }
        auto s = solve_linear(eqs, u);
        if (s.status == SolveStatus::inconsistent) continue;
        Bindings b;
        for (auto v : u) b[v] = s.value(v);
        for (auto& e : eqs) o.require(substitute(e, b).is_zero(), "linear back substitution");
        ++solved;
    }
    if (o.pass) o.notes << compared << " random evaluations, " << solved << " linear systems";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"free particle symmetries", criterion1},
        {"multiplier sweep", criterion2},
        {"Lagrangian reconstruction", criterion3},
        {"multiplier round trip", criterion4},
        {"Noether spectrum", criterion5},
        {"Schrodinger-mode quantization", criterion6},
        {"general-mode quantization", criterion7},
        {"parabolic reduction", criterion8},
        {"Riccati suite", criterion9},
        {"property suites", criterion10},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        try {
            criteria[k].second(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (k + 1) << ". " << criteria[k].first << " [" << o.notes.str()
                  << "] (" << std::fixed << std::setprecision(1) << secs << " s)" << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}

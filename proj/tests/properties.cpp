#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "random_gen.hpp"
#include "support.hpp"

#include "jlq/lagrange.hpp"
#include "jlq/linear_solve.hpp"
#include "jlq/quantizer.hpp"

using namespace jlq;
using namespace jlq::test;

namespace {

std::optional<GQ> try_eval(const std::function<GQ()>& f) {
    try {
        return f();
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
}

}  // namespace

TEST_CASE("tree evaluation agrees with the normal form") {
    RandomGen g;
    int compared = 0;
    for (int n = 0; n < 1000; ++n) {
        auto tree = g.tree(4);
        Expr e;
        try {
            e = to_expr(*tree);
        } catch (const std::domain_error&) {
            continue;  // literal division by zero
        }
        CHECK(parse(e.str()) == e);
        for (int k = 0; k < 5; ++k) {
            std::map<std::string, GQ> at{{"t", g.number()}, {"q", g.number()}, {"qd", g.number()}};
            auto value = [&](Var v) { return at.at(sym_name(v)); };
            auto a = try_eval([&] { return evaluate_tree(*tree, value); });
            auto b = try_eval([&] { return evaluate(e, value); });
            if (!a || !b) continue;
            CHECK_MESSAGE(*a == *b, ast::print(*tree));
            ++compared;
        }
    }
    CHECK(compared > 2000);
}

TEST_CASE("differentiation is a derivation") {
    RandomGen g;
    for (int n = 0; n < 100; ++n) {
        Expr a, b;
        try {
            a = to_expr(*g.tree(3));
            b = to_expr(*g.tree(3));
        } catch (const std::domain_error&) {
            continue;
        }
        for (Var v : {vars::t(), vars::q(), vars::qd()}) CHECK(diff(a * b, v) == diff(a, v) * b + a * diff(b, v));
    }
}

TEST_CASE("ratios of free particle multipliers are first integrals") {
    auto ode = free_particle();
    auto ms = distinct_multipliers(multiplier_sweep(ode, free_particle_symmetries()));
    RandomGen g;
    for (int n = 0; n < 10; ++n) {
        auto& a = ms[g.pick(0, int(ms.size()) - 1)];
        auto& b = ms[g.pick(0, int(ms.size()) - 1)];
        auto r = multiplier_ratio(a, b, ode);
        CHECK(total_derivative(r.r, ode).is_zero());
        CHECK(r.trivial == (&a == &b));
    }
}

TEST_CASE("gauge equivalence is an equivalence relation") {
    RandomGen g;
    Expr base = P("qd^2/2 - q/t");
    for (int n = 0; n < 20; ++n) {
        Expr h1 = g.poly_tq(), h2 = g.poly_tq();
        Expr l1 = base + total_derivative_free(h1);
        Expr l2 = l1 + total_derivative_free(h2);
        CHECK(gauge_equivalent(l1, base));
        CHECK(gauge_equivalent(base, l1));
        CHECK(gauge_equivalent(l2, base));
        CHECK(gauge_equivalent(l2, l1));
        CHECK_FALSE(gauge_equivalent(l1 + P("qd^3"), base));
    }
}

TEST_CASE("linear solutions satisfy the system") {
    RandomGen g;
    std::vector<Var> u{sym("u1"), sym("u2"), sym("u3")};
    for (int n = 0; n < 50; ++n) {
        std::vector<Expr> eqs;
        for (int r = 0; r < 3; ++r) {
            Expr e(GQ(g.pick(-4, 4)));
            for (auto v : u) e = e + Expr(GQ(g.pick(-3, 3))) * P("t").pow(g.pick(0, 1)) * Expr::variable(v);
            eqs.push_back(e);
        }
        auto s = solve_linear(eqs, u);
        if (s.status == SolveStatus::inconsistent) {
            REQUIRE(s.witness.has_value());
            continue;
        }
        Bindings b;
        for (auto v : u) b[v] = s.value(v);
        for (auto& e : eqs) CHECK(substitute(e, b).is_zero());
    }
}

TEST_CASE("psi d/dpsi is a symmetry of random operators") {
    RandomGen g;
    for (int n = 0; n < 30; ++n) {
        LinearPde2 p;
        for (auto& c : p.c) c = Expr(GQ(g.pick(-2, 2))) * P("t").pow(g.pick(0, 2)) * P("x").pow(g.pick(0, 2));
        if (p.c[0].is_zero() && p.c[1].is_zero() && p.c[2].is_zero()) p.c[0] = Expr(1);
        CHECK(is_pde_symmetry(p, field("0", "0", "1")));
        CHECK(is_pde_symmetry(p, field("0", "0", "-5/3")));
    }
}

TEST_CASE("functions of a characteristic coordinate are characteristic") {
    for (auto [name, xi] : {std::pair{"sch20", "x/t"}, {"schr", "(t*x - 1)/x"}, {"sch2b", "x/t"}}) {
        auto p = reference(name).pde;
        Expr z = P(xi);
        for (const Expr& f : {z * z, z.inverse(), 2 * z + 3, z.pow(3) - z})
            CHECK_MESSAGE(verify_characteristic(p, f), name);
    }
}

TEST_CASE("every branch representative keeps its symmetries") {
    std::vector<PdeSymmetry> geo;
    for (auto s : reference("sch").syms) geo.push_back({s.xi_t, s.xi_x, Expr(), s.label});
    QuantizeOptions opt;
    opt.schrodinger_mode = true;
    auto res = solve_determining(geo, opt);
    for (auto& b : res.branches) {
        auto rep = representative(b);
        for (std::size_t k = 0; k < geo.size(); ++k) {
            auto s = geo[k];
            s.lam = rep.lams[k];
            CHECK(is_pde_symmetry(rep.pde, s));
        }
    }
}

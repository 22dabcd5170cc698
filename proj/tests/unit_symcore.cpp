#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "jlq/collect.hpp"
#include "jlq/integrate.hpp"
#include "jlq/linear_solve.hpp"

using namespace jlq;
using jlq::test::P;

TEST_CASE("gaussian rationals") {
    GQ a(mpq_class(1), mpq_class(2)), b(mpq_class(3), mpq_class(-1));
    CHECK(a * b == GQ(mpq_class(5), mpq_class(5)));
    CHECK(a * a.inverse() == GQ(1));
    CHECK(GQ(-4).sqrt() == GQ(mpq_class(0), mpq_class(2)));
    CHECK_FALSE(GQ(2).sqrt().has_value());
    CHECK(GQ::frac(6, -4).str() == "-3/2");
    CHECK(GQ::i().pow(2) == GQ(-1));
}

TEST_CASE("canonical form") {
    CHECK(P("x/x") == Expr(1));
    CHECK(P("(x^2-1)/(x-1)") == P("x+1"));
    CHECK(P("1/(2*(qd+q^2))") == P("1/2/(q^2+qd)"));
    CHECK(P("i*i") == Expr(-1));
    CHECK((P("t") - P("t")).is_zero());
    CHECK(P("(t*q-1)/q").str() == "(t*q - 1)/q");
    CHECK((P("log(t^2)") - P("log(t^2)")).is_zero());
    CHECK(diff(P("log(t^2)"), vars::t()) == P("2/t"));
    CHECK(P("log(1)").is_zero());
}

TEST_CASE("printing round trips") {
    for (const char* s : {"-1/2/(t^3*qd - t^2*q)", "(1/2*i*x^2 - 1/2*t)", "x^(-2) + log(t*qd - q)", "(1+2*i)*t",
                          "(-t*qd*log(qd) + q)/(t*q^2)"}) {
        Expr e = P(s);
        CHECK(parse(e.str()) == e);
    }
}

TEST_CASE("parser errors") {
    CHECK_THROWS_AS(parse("t + z", VarCtx::ode()), UnknownVariable);
    CHECK_THROWS_AS(parse("t +", VarCtx::ode()), ParseError);
    CHECK_THROWS_AS(parse("(t", VarCtx::ode()), ParseError);
    CHECK_THROWS_AS(parse("1/0"), std::domain_error);
    CHECK_NOTHROW(parse("qd^2/2", VarCtx::ode()));
}

TEST_CASE("differentiation and substitution") {
    Var t = vars::t(), q = vars::q();
    CHECK(diff(P("log(t*q-1)"), t) == P("q/(t*q-1)"));
    CHECK(diff(P("t^3*q"), t, 2) == P("6*t*q"));
    CHECK(diff(P("1/q"), q) == P("-1/q^2"));
    CHECK(substitute(P("t*q + q^2"), {{q, P("t+1")}}) == P("t^2 + t + (t+1)^2"));
    CHECK(substitute(P("log(q)"), q, P("t^2")) == P("log(t^2)"));
}

TEST_CASE("evaluation") {
    Var t = vars::t();
    auto at2 = [&](Var v) { return v == t ? GQ(2) : GQ(3); };
    CHECK(evaluate(P("t^2/q + i"), at2) == GQ(mpq_class(4, 3), mpq_class(1)));
    CHECK_THROWS_AS(evaluate(P("1/(t-2)"), at2), std::domain_error);
}

TEST_CASE("polynomial gcd and exact division") {
    Poly a = P("(t+q)^2*(t-1)").num(), b = P("(t+q)*(t+1)").num();
    CHECK(Expr(gcd(a, b)) == P("t+q"));
    CHECK(divide_exact(a, P("t-1").num()).has_value());
    CHECK_FALSE(divide_exact(a, P("t+2").num()).has_value());
    CHECK(Expr(*poly_sqrt(P("4*x^2 + 4*x*xi + xi^2").num())) == P("2*x + xi"));
    CHECK_FALSE(poly_sqrt(P("x^2 + 1").num()).has_value());
}

TEST_CASE("coefficient collection") {
    auto m = collect_coefficients(P("a*qd^2 + b*qd + a*b"), {vars::qd()});
    CHECK(coefficient(m, Monomial::of(vars::qd(), 2)) == P("a"));
    CHECK(coefficient(m, Monomial::of(vars::qd())) == P("b"));
    CHECK(coefficient(m, Monomial()) == P("a*b"));
    CHECK(coefficient(m, Monomial::of(vars::qd(), 3)).is_zero());
}

TEST_CASE("power integration") {
    Var t = vars::t();
    CHECK(integrate_power(P("1/(2*t+1)"), t) == P("log(t+1/2)/2"));
    CHECK(integrate_power(P("(t+1)^(-2)"), t) == P("-1/(t+1)"));
    CHECK(integrate_power(P("3*t^2 + q"), t) == P("t^3 + q*t"));
    CHECK(diff(integrate_power(P("log(t)"), t), t) == P("log(t)"));
    // t^2 + 1 splits over Q(i)
    CHECK(diff(integrate_power(P("1/(t^2+1)"), t), t) == P("1/(t^2+1)"));
    CHECK_THROWS_AS(integrate_power(P("1/(t^2+2)"), t), UnsupportedIntegrand);
    CHECK_THROWS_AS(integrate_power(P("log(t)/(t+1)"), t), UnsupportedIntegrand);
}

TEST_CASE("linear solving") {
    Var a = sym("a"), b = sym("b"), c = sym("c");
    auto r = solve_linear({P("a + b - 3"), P("a - b - 1")}, {a, b});
    CHECK(r.status == SolveStatus::unique);
    CHECK(r.value(a) == Expr(2));
    CHECK(r.value(b) == Expr(1));

    auto s = solve_linear({P("t*a + b - c")}, {a, b, c});
    CHECK(s.status == SolveStatus::parametrized);
    CHECK(s.free.size() == 2);

    auto u = solve_linear({P("a + b - 1"), P("2*a + 2*b - 3")}, {a, b});
    CHECK(u.status == SolveStatus::inconsistent);
    REQUIRE(u.witness.has_value());
    CHECK_FALSE(u.witness->is_zero());

    CHECK_THROWS_AS(solve_linear({P("a*b - 1")}, {a, b}), NotLinear);
}

TEST_CASE("constant ratio") {
    CHECK(constant_ratio(P("-2/(t*qd-q)"), P("1/(t*qd-q)")) == GQ(-2));
    CHECK_FALSE(constant_ratio(P("t"), P("q")).has_value());
    CHECK_FALSE(constant_ratio(Expr(), P("q")).has_value());
}

TEST_CASE("randomized zero test agrees with the normal form") {
    auto tree = parse_tree("(t+1)^2 - t^2 - 2*t - 1", VarCtx::open());
    CHECK(is_zero_checked(*tree));
    auto other = parse_tree("(t+1)^2 - t^2", VarCtx::open());
    CHECK_FALSE(is_zero_checked(*other));
}

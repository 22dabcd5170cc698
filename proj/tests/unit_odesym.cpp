#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace jlq;
using namespace jlq::test;

TEST_CASE("free particle generators verify") {
    auto ode = free_particle();
    for (auto& s : free_particle_symmetries()) {
        auto chk = verify_point_symmetry(s, ode);
        CHECK_MESSAGE(chk.ok, s.label);
        CHECK(chk.residual.is_zero());
        // same residual as the independent computation
        CHECK(chk.residual == P(oracle()["free_particle_symmetry_residuals"][s.label].get<std::string>()));
    }
}

TEST_CASE("riccati generators verify") {
    auto ode = riccati();
    for (auto& s : riccati_symmetries()) CHECK_MESSAGE(verify_point_symmetry(s, ode).ok, s.label);
}

TEST_CASE("a wrong generator leaves a residual") {
    auto chk = verify_point_symmetry(PointSymmetry(P("q^2"), P("t"), "Y"), free_particle());
    CHECK_FALSE(chk.ok);
    CHECK(chk.residual == P("-2*qd^3"));
}

TEST_CASE("prolongation") {
    auto pr = prolong(PointSymmetry(P("t^2"), P("t*q")), free_particle());
    // eta1 = Dt(G) - qd Dt(V)
    CHECK(pr.eta1 == P("q + t*qd - 2*t*qd"));
    CHECK(total_derivative(P("t*qd - q"), free_particle()).is_zero());
    CHECK(total_derivative(P("qd"), riccati()) == P("-3*q*qd - q^3"));
}

TEST_CASE("search recovers sl(3)") {
    auto basis = find_point_symmetries(free_particle(), 2);
    CHECK(basis.size() == 8);
    for (auto& s : free_particle_symmetries()) CHECK_MESSAGE(span_coordinates(basis, s).has_value(), s.label);
    CHECK_FALSE(span_coordinates(basis, PointSymmetry(P("q^2"), P("t"))).has_value());
}

TEST_CASE("riccati search needs degree 7 for the full algebra") {
    auto basis = find_point_symmetries(riccati(), 7);
    CHECK(basis.size() == 8);
    for (auto& s : riccati_symmetries()) CHECK_MESSAGE(span_coordinates(basis, s).has_value(), s.label);
    CHECK(find_point_symmetries(riccati(), 2).size() == 3);
}

TEST_CASE("linear combinations") {
    auto x = free_particle_symmetries();
    auto s = linear_combination({GQ(0), GQ(0), GQ(0), GQ(1), GQ(2), GQ(0), GQ(0), GQ(0)}, x, "X4+2*X5");
    CHECK(s.v == P("2*t"));
    CHECK(s.g == P("q"));
    CHECK(apply_field(s, P("q^2/t")) == P("0"));
}

TEST_CASE("ode validation") {
    CHECK_THROWS_AS(Ode2(P("x")), std::invalid_argument);
    CHECK_NOTHROW(Ode2(P("qd^2/q")));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "jlq/noether.hpp"

using namespace jlq;
using namespace jlq::test;

TEST_CASE("noether test on the kinetic energy") {
    auto l = lagrangian_from_expr(P("qd^2/2"), "K");
    auto x = free_particle_symmetries();
    auto ode = free_particle();

    auto time = noether_test(l, x[5], ode);
    REQUIRE(time.certificate.has_value());
    CHECK(time.certificate->gauge.is_zero());
    CHECK(constant_ratio(time.certificate->integral, P("qd^2")).has_value());

    auto galilei = noether_test(l, x[6], ode);
    REQUIRE(galilei.certificate.has_value());
    CHECK(total_derivative(galilei.certificate->integral, ode).is_zero());

    auto proj = noether_test(l, x[0], ode);
    CHECK_FALSE(proj.certificate.has_value());
    CHECK_FALSE(proj.unresolved.is_zero());
}

TEST_CASE("first integral formula") {
    auto l = lagrangian_from_expr(P("qd^2/2"), "K");
    NoetherCertificate c{PointSymmetry(P("0"), P("1"), "X8"), Expr(), Expr()};
    CHECK(first_integral(c, l, free_particle()) == P("-qd"));
    NoetherCertificate bad{PointSymmetry(P("0"), P("1"), "X8"), P("q"), Expr()};
    CHECK_THROWS_AS(first_integral(bad, l, free_particle()), std::logic_error);
}

TEST_CASE("spectrum of the kinetic energy") {
    auto spectrum = noether_spectrum({lagrangian_from_expr(P("qd^2/2"), "K"), lagrangian_from_expr(P("-log(qd)"), "L28")},
                                 free_particle_symmetries(), free_particle());
    REQUIRE(spectrum.size() == 2);
    CHECK(spectrum[0].certificates.size() == 5);
    CHECK(spectrum[0].physical_candidate);
    CHECK(spectrum[1].certificates.size() == 3);
    CHECK_FALSE(spectrum[1].physical_candidate);
    std::vector<std::string> labels;
    for (auto& c : spectrum[0].certificates) labels.push_back(c.symmetry.label);
    CHECK(labels == std::vector<std::string>{"X3", "X4+2*X5", "X6", "X7", "X8"});
    for (auto& c : spectrum[0].certificates) CHECK(total_derivative(c.integral, free_particle()).is_zero());
}

TEST_CASE("riccati spectrum") {
    auto spectrum = noether_spectrum({lagrangian_from_expr(P("-1/(2*(qd+q^2))"), "Lagr")}, riccati_symmetries(), riccati(), 4);
    REQUIRE(spectrum.size() == 1);
    std::vector<std::string> labels;
    for (auto& c : spectrum[0].certificates) {
        labels.push_back(c.symmetry.label);
        CHECK(total_derivative(c.integral, riccati()).is_zero());
    }
    CHECK(labels == std::vector<std::string>{"G2-G8", "G3-2/3*G7", "G4", "G5", "G6"});
}

TEST_CASE("combination labels") {
    auto x = free_particle_symmetries();
    CHECK(combination_label({GQ(0), GQ(0), GQ(0), GQ(1), GQ(-1), GQ(0), GQ(0), GQ(0)}, x) == "X4-X5");
    CHECK(combination_label({GQ::frac(1, 2), GQ(0), GQ(0), GQ(0), GQ(0), GQ(0), GQ(0), GQ(0)}, x) == "1/2*X1");
    CHECK(combination_label(std::vector<GQ>(8, GQ(0)), x) == "0");
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "jlq/multiplier.hpp"

using namespace jlq;
using namespace jlq::test;

TEST_CASE("pair determinants match the independent computation") {
    auto x = free_particle_symmetries();
    auto ode = free_particle();
    auto& deltas = oracle()["free_particle_deltas"];
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            auto key = x[i].label + "," + x[j].label;
            Expr d = P(deltas[key].get<std::string>());
            auto r = jlm_from_pair(ode, x[i], x[j]);
            CHECK_MESSAGE(r.degenerate == d.is_zero(), key);
            if (r.degenerate) continue;
            CHECK_MESSAGE(r.delta == d, key);
            CHECK_MESSAGE(r.multiplier->m == d.inverse(), key);
            CHECK(r.multiplier->provenance == key);
        }
}

TEST_CASE("riccati pair") {
    auto g = riccati_symmetries();
    auto r = jlm_from_pair(riccati(), g[4], g[5]);
    REQUIRE_FALSE(r.degenerate);
    CHECK(r.delta == P(oracle()["riccati_delta_G5_G6"].get<std::string>()));
    CHECK(verify_multiplier(riccati(), r.multiplier->m).ok);
}

TEST_CASE("unverified symmetries are rejected") {
    auto x = free_particle_symmetries();
    CHECK_THROWS_AS(jlm_from_pair(free_particle(), x[0], PointSymmetry(P("q^2"), P("t"))), std::invalid_argument);
}

TEST_CASE("multiplier verification") {
    CHECK(verify_multiplier(free_particle(), P("1/(t*qd-q)^3")).ok);
    auto bad = verify_multiplier(free_particle(), P("t"));
    CHECK_FALSE(bad.ok);
    CHECK(bad.residual == Expr(1));
    CHECK_THROWS_AS(verify_multiplier(free_particle(), Expr()), std::invalid_argument);
    // Dt(M) + M dF/dqd for qdd = -3 q qd - q^3
    CHECK(verify_multiplier(riccati(), P("1/(qd+q^2)^3")).ok);
}

TEST_CASE("sweep bookkeeping") {
    auto sw = multiplier_sweep(free_particle(), free_particle_symmetries());
    CHECK(sw.size() == 28);
    int degenerate = 0;
    for (auto& e : sw) degenerate += e.degenerate;
    CHECK(degenerate == 7);
    auto distinct = distinct_multipliers(sw);
    CHECK(distinct.size() == 10);
    for (auto& e : sw)
        if (e.duplicate_of) {
            auto& d = sw[*e.duplicate_of];
            CHECK(e.m == Expr(e.factor) * d.m);
        }
}

TEST_CASE("ratio of two multipliers is a first integral") {
    auto ode = free_particle();
    Multiplier a{P("1/(t*qd-q)"), "a"}, b{P("1/qd^2"), "b"};
    auto r = multiplier_ratio(a, b, ode);
    CHECK_FALSE(r.trivial);
    CHECK(total_derivative(r.r, ode).is_zero());
    CHECK(multiplier_ratio(a, Multiplier{P("-3/(t*qd-q)"), "c"}, ode).trivial);
    CHECK_THROWS_AS(multiplier_ratio(a, Multiplier{P("t"), "d"}, ode), std::logic_error);
}

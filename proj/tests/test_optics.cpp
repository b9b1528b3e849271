#include "doctest.h"

#include <cmath>

#include "lightfl/optics.hpp"
#include "lightfl/rng.hpp"
#include "support.hpp"

using namespace lightfl::optics;
using testsupport::deg;

namespace {
OpticalLinkd onaxis_link() { return {85e-4, 2.2, 0.0, 0.0, deg(70), deg(60), 1.0, 1.5}; }
HarvesterParamsd table_harvester() { return {0.75, 0.4, 1e-12, 0.02585}; }
} // namespace

TEST_SUITE("optics") {

TEST_CASE("lambertian order at the half-power semi-angle") {
    CHECK(lambertian_order(deg(60)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lambertian_order(deg(45)) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(lambertian_order(0.0), std::domain_error);
    CHECK_THROWS_AS(lambertian_order(M_PI_2), std::domain_error);
    CHECK_THROWS_AS(lambertian_order(-0.1), std::domain_error);
}

TEST_CASE("concentrator gain") {
    auto link = onaxis_link();
    CHECK(concentrator_gain(link) == doctest::Approx(2.548067245721537).epsilon(1e-15));
    link.incidence_angle = deg(71);
    CHECK(concentrator_gain(link) == 0.0);
    link.incidence_angle = 0.0;
    link.concentrator_index = 1.0;
    link.fov = deg(90);
    CHECK(concentrator_gain(link) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("channel gain on the Table-1 link") {
    const auto link = onaxis_link();
    CHECK(channel_gain(link) == doctest::Approx(0.001424408565553982).epsilon(1e-14));
}

TEST_CASE("channel gain vanishes outside the field of view") {
    auto link = onaxis_link();
    link.incidence_angle = deg(75);
    CHECK(channel_gain(link) == 0.0);
    link.incidence_angle = deg(30);
    CHECK(channel_gain(link) > 0.0);
}

TEST_CASE("inverse-square law under distance doubling") {
    lightfl::Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto link = onaxis_link();
        link.distance = testsupport::uniform_in(rng, 0.5, 5.0);
        link.irradiation_angle = testsupport::uniform_in(rng, 0.0, deg(50));
        link.incidence_angle = testsupport::uniform_in(rng, 0.0, deg(60));
        auto far = link;
        far.distance = 2.0 * link.distance;
        const double near_gain = channel_gain(link);
        REQUIRE(near_gain > 0.0);
        CHECK(std::abs(near_gain / channel_gain(far) - 4.0) <= 1e-12);
    }
}

TEST_CASE("harvested power is zero at zero input and pinned at 28 W") {
    const auto link = onaxis_link();
    const auto hp = table_harvester();
    CHECK(harvested_power(link, hp, 0.0) == 0.0);
    CHECK(harvested_power(link, hp, 28.0) == doctest::Approx(0.007266273009890666).epsilon(1e-13));
    CHECK_THROWS_AS(harvested_power(link, hp, -1.0), std::domain_error);
}

TEST_CASE("harvested power strictly increases in transmit power") {
    const auto link = onaxis_link();
    const auto hp = table_harvester();
    lightfl::Rng rng(12);
    for (int trial = 0; trial < 500; ++trial) {
        const double p1 = std::pow(10.0, testsupport::uniform_in(rng, -6.0, 5.0));
        const double p2 = p1 * testsupport::uniform_in(rng, 1.0 + 1e-9, 10.0);
        CHECK(harvested_power(link, hp, p2) > harvested_power(link, hp, p1));
    }
}

TEST_CASE("harvested power has positive finite-difference slope") {
    const auto link = onaxis_link();
    const auto hp = table_harvester();
    for (const double p : {1e-3, 0.1, 1.0, 28.0, 1e3}) {
        const double h = p * 1e-6;
        CHECK(harvested_power(link, hp, p + h) - harvested_power(link, hp, p - h) > 0.0);
    }
}

TEST_CASE("total harvested energy composition") {
    const auto link = onaxis_link();
    const auto hp = table_harvester();
    CHECK(total_harvested_energy(link, link, hp, 0.0, 0.0, 1.0) == 0.0);

    const double one = total_harvested_energy(link, link, hp, 28.0, 5.0, 1.0);
    const double two = total_harvested_energy(link, link, hp, 28.0, 5.0, 2.0);
    CHECK(two == doctest::Approx(2.0 * one).epsilon(1e-15));

    const double vl_only = total_harvested_energy(link, link, hp, 28.0, 0.0, 3.0);
    CHECK(vl_only == doctest::Approx(3.0 * harvested_power(link, hp, 28.0)).epsilon(1e-15));
}

} // TEST_SUITE

#include "doctest.h"

#include <cmath>

#include "lightfl/oracle.hpp"
#include "lightfl/rng.hpp"
#include "lightfl/solver.hpp"
#include "support.hpp"

using namespace lightfl;

TEST_SUITE("oracle") {

TEST_CASE("grid spec validation and geometry") {
    oracle::GridSpecd grid{11, {{"x", 0.0, 1.0}}};
    grid.validate();
    CHECK(grid.point(0, 0) == 0.0);
    CHECK(grid.point(0, 10) == 1.0);
    CHECK(grid.step(0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK_THROWS_AS((oracle::GridSpecd{1, {{"x", 0.0, 1.0}}}).validate(), std::domain_error);
    CHECK_THROWS_AS((oracle::GridSpecd{5, {}}).validate(), std::domain_error);
    CHECK_THROWS_AS((oracle::GridSpecd{5, {{"x", 1.0, 0.0}}}).validate(), std::domain_error);
}

TEST_CASE("window grid spans the feasible window") {
    const auto dp = testsupport::reference_problem();
    const auto grid = oracle::window_grid(dp, 1000);
    const auto [a0, b0] = solver::transmission_window(dp);
    CHECK(grid.point(0, 0) == a0);
    CHECK(grid.point(0, 999) == b0);
}

TEST_CASE("grid minimum tracks the solver") {
    Rng rng(51);
    for (int trial = 0; trial < 3; ++trial) {
        const auto dp = testsupport::random_problem(rng);
        const auto grid = oracle::window_grid(dp, 20000);
        const auto [t_grid, v_grid] = oracle::grid_min_energy_demand(dp, grid);
        const double t_star = solver::solve_transmission_time(dp, 1e-8 * dp.frame);
        CHECK(std::abs(t_star - t_grid) <= std::max(1e-8 * dp.frame, grid.step(0)));
        CHECK(solver::energy_demand(dp, t_star) <= v_grid * (1 + 1e-9));
    }
}

TEST_CASE("refining the grid never raises the reported minimum") {
    const auto dp = testsupport::reference_problem();
    const auto coarse = oracle::grid_min_energy_demand(dp, oracle::window_grid(dp, 1000));
    const auto fine = oracle::grid_min_energy_demand(dp, oracle::window_grid(dp, 1999));
    CHECK(fine.second <= coarse.second);
}

TEST_CASE("joint grid certificate stays within one step of the solver") {
    Rng rng(52);
    for (int trial = 0; trial < 3; ++trial) {
        const auto dp = testsupport::random_feasible_problem(rng);
        const auto s = solver::solve_device(dp);
        const auto grid = oracle::joint_grid(dp);
        const auto p_grid = oracle::joint_feasible_min_power(dp, grid);
        REQUIRE(p_grid.has_value());
        CHECK(*p_grid >= s.p_irl - grid.step(1) - 1e-9 * dp.power_budget);
    }
}

TEST_CASE("visible-band-sufficient instance needs zero grid power") {
    auto dp = testsupport::reference_problem();
    dp.p_vl = 1e4; // enough harvested energy without any IRL transmit power
    const auto s = solver::solve_device(dp);
    CHECK(s.p_irl == 0.0);
    const auto p_grid = oracle::joint_feasible_min_power(dp, oracle::joint_grid(dp));
    REQUIRE(p_grid.has_value());
    CHECK(*p_grid == 0.0);
}

TEST_CASE("solver and oracle agree on infeasibility") {
    auto dp = testsupport::reference_problem();
    dp.rate_threshold = 1e6;
    dp.power_budget = 1e-3;
    const auto s = solver::try_solve_device(dp);
    CHECK_FALSE(s.feasible);
    CHECK_FALSE(oracle::joint_feasible_min_power(dp, oracle::joint_grid(dp)).has_value());
}

} // TEST_SUITE

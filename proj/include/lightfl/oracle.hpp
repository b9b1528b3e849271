#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lightfl/optics.hpp"
#include "lightfl/solver.hpp"

namespace lightfl::oracle {

// Named inclusive parameter range of one grid axis.
template <class Scalar>
struct Axis {
    std::string name;
    Scalar lo;
    Scalar hi;
};

template <class Scalar>
struct GridSpec {
    int points_per_axis = 2;
    std::vector<Axis<Scalar>> axes;

    void validate() const {
        if (points_per_axis < 2) throw std::domain_error("grid: points_per_axis must be >= 2");
        if (axes.empty()) throw std::domain_error("grid: needs at least one axis");
        for (const auto& ax : axes)
            if (!(ax.hi >= ax.lo)) throw std::domain_error("grid: axis " + ax.name + " has hi < lo");
    }

    Scalar point(std::size_t axis, int i) const {
        const auto& ax = axes[axis];
        return ax.lo + (ax.hi - ax.lo) * Scalar(i) / Scalar(points_per_axis - 1);
    }

    Scalar step(std::size_t axis) const {
        const auto& ax = axes[axis];
        return (ax.hi - ax.lo) / Scalar(points_per_axis - 1);
    }
};

using GridSpecd = GridSpec<double>;

// Grid over the transmission-time window, default oracle resolution 1e5.
template <class Scalar>
GridSpec<Scalar> window_grid(const solver::DeviceProblem<Scalar>& dp, int points = 100000) {
    const auto [a0, b0] = solver::transmission_window(dp);
    return {points, {{"t_trans", a0, b0}}};
}

// Joint grid over (t_trans window) x [0, power budget], default 300 x 300.
template <class Scalar>
GridSpec<Scalar> joint_grid(const solver::DeviceProblem<Scalar>& dp, int points = 300) {
    const auto [a0, b0] = solver::transmission_window(dp);
    return {points, {{"t_trans", a0, b0}, {"p_irl", Scalar(0), dp.power_budget}}};
}

// Brute-force minimizer of Psi over the grid; ties keep the smaller abscissa.
template <class Scalar>
std::pair<Scalar, Scalar> grid_min_energy_demand(const solver::DeviceProblem<Scalar>& dp,
                                                 const GridSpec<Scalar>& grid) {
    grid.validate();
    Scalar best_t = grid.point(0, 0);
    Scalar best_v = std::numeric_limits<Scalar>::infinity();
    for (int i = 0; i < grid.points_per_axis; ++i) {
        const Scalar t = grid.point(0, i);
        const Scalar v = solver::energy_demand(dp, t);
        if (v < best_v) {
            best_v = v;
            best_t = t;
        }
    }
    return {best_t, best_v};
}

// Smallest grid IRL power for which some grid transmission time keeps the
// device within rate, energy, time, and CPU limits. Scans power ascending so
// the first feasible column is the certificate; nullopt when nothing passes.
template <class Scalar>
std::optional<Scalar> joint_feasible_min_power(const solver::DeviceProblem<Scalar>& dp,
                                               const GridSpec<Scalar>& grid) {
    grid.validate();
    if (grid.axes.size() != 2) throw std::domain_error("joint grid: expected two axes");
    const Scalar eh_vl = optics::harvested_power(dp.vl_link, dp.harvester, dp.p_vl);
    std::vector<Scalar> demand(static_cast<std::size_t>(grid.points_per_axis));
    Scalar min_demand = std::numeric_limits<Scalar>::infinity();
    for (int i = 0; i < grid.points_per_axis; ++i) {
        demand[static_cast<std::size_t>(i)] = solver::energy_demand(dp, grid.point(0, i));
        if (demand[static_cast<std::size_t>(i)] < min_demand)
            min_demand = demand[static_cast<std::size_t>(i)];
    }
    for (int k = 0; k < grid.points_per_axis; ++k) {
        const Scalar p = grid.point(1, k);
        const Scalar budget = dp.frame *
                              (eh_vl + optics::harvested_power(dp.irl_link, dp.harvester, p));
        if (budget >= min_demand) return p;
    }
    return std::nullopt;
}

} // namespace lightfl::oracle

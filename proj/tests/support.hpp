#pragma once

// Shared instance generators: a Table-1-scale reference device problem and
// +-50% perturbations of it, resampled until the transmission window is usable.

#include <cmath>
#include <complex>

#include "lightfl/rf.hpp"
#include "lightfl/rng.hpp"
#include "lightfl/solver.hpp"

namespace testsupport {

inline double deg(double d) { return d * M_PI / 180.0; }

inline double uniform_in(lightfl::Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * rng.uniform();
}

inline double perturb(lightfl::Rng& rng, double v) { return v * uniform_in(rng, 0.5, 1.5); }

inline int uniform_int(lightfl::Rng& rng, int lo, int hi) {
    const int span = hi - lo + 1;
    const int offset = static_cast<int>(rng.uniform() * span);
    return lo + (offset >= span ? span - 1 : offset);
}

inline lightfl::rf::Beamformerd synthetic_beamformer(double gamma, int antennas = 4) {
    lightfl::rf::Beamformerd bf;
    bf.weights = lightfl::rf::CVector<double>::Constant(
        antennas, std::complex<double>(1.0 / std::sqrt(static_cast<double>(antennas)), 0.0));
    bf.sinr_coefficient = gamma;
    return bf;
}

inline lightfl::solver::DeviceProblemd reference_problem() {
    lightfl::solver::DeviceProblemd dp;
    dp.compute = {2e-28, 20.0, 1e7, 0.3e9, 1.5e9, 1};
    dp.beamformer = synthetic_beamformer(0.2);
    dp.rate_threshold = 36e3;
    dp.frame = 1.0;
    dp.bandwidth = 1e6;
    dp.power_budget = 2e4;
    dp.vl_link = {85e-4, 2.2, 0.0, 0.0, deg(70), deg(60), 1.0, 1.5};
    dp.irl_link = dp.vl_link;
    dp.harvester = {0.75, 0.4, 1e-12, 0.02585};
    dp.p_vl = 28.0;
    return dp;
}

inline lightfl::solver::DeviceProblemd random_problem(lightfl::Rng& rng) {
    for (;;) {
        auto dp = reference_problem();
        dp.compute.capacitance_coeff = perturb(rng, 2e-28);
        dp.compute.cycles_per_sample = perturb(rng, 20.0);
        dp.compute.dataset_size = perturb(rng, 1e7);
        dp.compute.f_min = perturb(rng, 0.3e9);
        dp.compute.f_max = perturb(rng, 1.5e9);
        dp.compute.local_iterations = uniform_int(rng, 1, 3);
        dp.beamformer = synthetic_beamformer(perturb(rng, 0.1));
        dp.rate_threshold = perturb(rng, 36e3);
        dp.frame = perturb(rng, 1.0);
        dp.bandwidth = perturb(rng, 1e6);
        dp.power_budget = perturb(rng, 2e4);
        dp.vl_link.active_area = perturb(rng, 85e-4);
        dp.vl_link.distance = perturb(rng, 2.2);
        dp.irl_link = dp.vl_link;
        dp.harvester.fill_factor = uniform_in(rng, 0.375, 1.0);
        dp.harvester.responsivity = perturb(rng, 0.4);
        dp.harvester.dark_current = perturb(rng, 1e-12);
        dp.harvester.thermal_voltage = perturb(rng, 0.02585);
        dp.p_vl = perturb(rng, 28.0);
        const auto [a0, b0] = lightfl::solver::transmission_window(dp);
        if (a0 > 0.01 * dp.frame && b0 - a0 > 1e-3 * dp.frame) return dp;
    }
}

inline lightfl::solver::DeviceProblemd random_feasible_problem(lightfl::Rng& rng) {
    for (;;) {
        auto dp = random_problem(rng);
        if (lightfl::solver::try_solve_device(dp).feasible) return dp;
    }
}

} // namespace testsupport

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lightfl/config.hpp"
#include "lightfl/solver.hpp"

namespace lightfl::sim {

struct Aggregate {
    double mean = 0;
    double std = 0;
    double q05 = 0;
    double q95 = 0;
    long n_feasible = 0;
    long n_total = 0;
};

// One CSV row: device 0 carries network-level aggregates, devices are
// otherwise 1-based. Curve parameters (IRL semi-angle, frame) ride in the
// metric name as a bracketed tag so each sweep stays one-dimensional.
struct ResultRow {
    std::string sweep_name;
    double sweep_value = 0;
    int device = 0;
    std::string metric;
    Aggregate agg;
};

struct ExperimentResult {
    std::string experiment;
    std::vector<ResultRow> rows;
};

// Per-sweep-point overrides applied on top of the scenario.
struct PointOverrides {
    std::optional<double> theta_kbits;       // applied to every device
    std::optional<double> irl_semi_angle_deg;
    std::optional<double> frame_s;
    std::optional<int> local_iterations;
};

// One realization's per-device solutions; a realization counts as infeasible
// as soon as any device is.
struct RealizationOutcome {
    bool feasible = false;
    std::string failed_constraint;
    std::vector<solver::DeviceSolutiond> devices;
};

Aggregate aggregate(std::vector<double> values, long n_total);

// Rebuilds one device's solver instance for a given channel realization.
solver::DeviceProblemd assemble_device_problem(const ScenarioConfig& cfg, int device,
                                               const rf::Beamformerd& beamformer,
                                               const PointOverrides& ov = {});

// Draws channels and solves every device for realizations 0..N-1; channel
// realization r depends only on (rng_seed, r), so sweep points are paired.
std::vector<RealizationOutcome> run_point(const ScenarioConfig& cfg, const PointOverrides& ov = {});

ExperimentResult run_monte_carlo(const ScenarioConfig& cfg);
ExperimentResult experiment_fig2(const ScenarioConfig& cfg, const std::vector<double>& theta_kbits,
                                 const std::vector<double>& irl_semi_angles_deg);
ExperimentResult experiment_fig3(const ScenarioConfig& cfg, const std::vector<double>& theta_kbits);
ExperimentResult experiment_fig4_fig5(const ScenarioConfig& cfg, const std::vector<int>& k_values,
                                      const std::vector<double>& frames_s);

// Brute-force re-check of solved realizations; returns human-readable
// discrepancy descriptions (empty means the oracles agree).
std::vector<std::string> certify_point(const ScenarioConfig& cfg, const PointOverrides& ov,
                                       int realizations_to_check);

} // namespace lightfl::sim

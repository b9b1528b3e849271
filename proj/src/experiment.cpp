#include "lightfl/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "lightfl/csv.hpp"
#include "lightfl/oracle.hpp"
#include "lightfl/rng.hpp"

namespace lightfl::sim {

namespace {

// type-7 quantile of a sorted sample
double quantile(const std::vector<double>& sorted, double q) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double h = q * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= n) return sorted[n - 1];
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::vector<double> ap_distances(const ScenarioConfig& cfg) {
    std::vector<double> d;
    d.reserve(cfg.devices.size());
    for (const auto& dev : cfg.devices) d.push_back(dev.distance_to_ap_m);
    return d;
}

std::string tagged(const std::string& metric, const std::string& tag_key, double tag_value) {
    return metric + "[" + tag_key + "=" + format_double(tag_value) + "]";
}

// Values of one metric across feasible realizations; device 0 sums devices.
template <class Extract>
std::vector<double> collect(const std::vector<RealizationOutcome>& outcomes, int device,
                            Extract&& extract) {
    std::vector<double> values;
    values.reserve(outcomes.size());
    for (const auto& o : outcomes) {
        if (!o.feasible) continue;
        if (device == 0) {
            double sum = 0;
            for (const auto& s : o.devices) sum += extract(s);
            values.push_back(sum);
        } else {
            values.push_back(extract(o.devices[static_cast<std::size_t>(device - 1)]));
        }
    }
    return values;
}

struct MetricSpec {
    std::string name;
    double (*get)(const solver::DeviceSolutiond&);
};

const MetricSpec kPerDeviceMetrics[] = {
    {"p_irl_w", [](const solver::DeviceSolutiond& s) { return s.p_irl; }},
    {"p_uplink_w", [](const solver::DeviceSolutiond& s) { return s.p_uplink; }},
    {"t_trans_s", [](const solver::DeviceSolutiond& s) { return s.t_trans; }},
    {"t_comp_s", [](const solver::DeviceSolutiond& s) { return s.t_comp; }},
    {"t_trans_over_t_comp", [](const solver::DeviceSolutiond& s) { return s.t_trans / s.t_comp; }},
    {"f_cpu_hz", [](const solver::DeviceSolutiond& s) { return s.f_cpu; }},
    {"energy_required_j", [](const solver::DeviceSolutiond& s) { return s.energy_required; }},
};

} // namespace

Aggregate aggregate(std::vector<double> values, long n_total) {
    Aggregate a;
    a.n_total = n_total;
    a.n_feasible = static_cast<long>(values.size());
    if (values.empty()) return a;
    std::sort(values.begin(), values.end());
    double sum = 0;
    for (const double v : values) sum += v;
    a.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0;
        for (const double v : values) ss += (v - a.mean) * (v - a.mean);
        a.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    a.q05 = quantile(values, 0.05);
    a.q95 = quantile(values, 0.95);
    return a;
}

solver::DeviceProblemd assemble_device_problem(const ScenarioConfig& cfg, int device,
                                               const rf::Beamformerd& beamformer,
                                               const PointOverrides& ov) {
    const auto& dev = cfg.devices[static_cast<std::size_t>(device)];
    const double frame = ov.frame_s.value_or(cfg.frame_s);
    const double theta_kbits = ov.theta_kbits.value_or(dev.rate_threshold_kbits);
    const double irl_semi = ov.irl_semi_angle_deg ? *ov.irl_semi_angle_deg * (M_PI / 180.0)
                                                  : cfg.irl_semi_angle_rad;
    const double d = dev.distance_to_optical_m;
    const double angle = std::acos(cfg.transmitter_height_m / d);

    solver::DeviceProblemd dp;
    dp.compute = cfg.compute;
    dp.compute.local_iterations = ov.local_iterations.value_or(cfg.compute.local_iterations);
    dp.beamformer = beamformer;
    dp.rate_threshold = theta_kbits * 1e3;
    dp.frame = frame;
    dp.bandwidth = cfg.bandwidth_hz;
    dp.power_budget = dev.power_budget_w;
    dp.vl_link = {cfg.area_m2, d,     angle, angle, cfg.fov_rad, cfg.vl_semi_angle_rad,
                  cfg.filter_gain, cfg.concentrator_index};
    dp.irl_link = {cfg.area_m2, d,     angle, angle, cfg.fov_rad, irl_semi,
                   cfg.filter_gain, cfg.concentrator_index};
    dp.harvester = cfg.harvester;
    dp.p_vl = cfg.p_vl_w;
    return dp;
}

std::vector<RealizationOutcome> run_point(const ScenarioConfig& cfg, const PointOverrides& ov) {
    const auto distances = ap_distances(cfg);
    const int n_dev = static_cast<int>(cfg.devices.size());
    std::vector<RealizationOutcome> outcomes;
    outcomes.reserve(static_cast<std::size_t>(cfg.realizations));
    for (int r = 0; r < cfg.realizations; ++r) {
        const auto set = rf::draw_channels(cfg.rician, distances, cfg.antennas,
                                           realization_seed(cfg.rng_seed, static_cast<std::uint64_t>(r)),
                                           cfg.noise_variance_w, cfg.bandwidth_hz);
        RealizationOutcome out;
        out.feasible = true;
        out.devices.reserve(static_cast<std::size_t>(n_dev));
        for (int j = 0; j < n_dev; ++j) {
            const auto bf = rf::optimal_beamformer(set, j);
            auto sol = solver::try_solve_device(assemble_device_problem(cfg, j, bf, ov));
            if (!sol.feasible) {
                out.feasible = false;
                out.failed_constraint = sol.failed_constraint;
            }
            out.devices.push_back(std::move(sol));
        }
        outcomes.push_back(std::move(out));
    }
    return outcomes;
}

ExperimentResult run_monte_carlo(const ScenarioConfig& cfg) {
    cfg.validate();
    ExperimentResult result;
    result.experiment = "single";
    const auto outcomes = run_point(cfg);
    const long n = cfg.realizations;
    result.rows.push_back({"none", 0, 0, "p_irl_total_w",
                           aggregate(collect(outcomes, 0,
                                             [](const solver::DeviceSolutiond& s) { return s.p_irl; }),
                                     n)});
    for (int j = 1; j <= static_cast<int>(cfg.devices.size()); ++j)
        for (const auto& m : kPerDeviceMetrics)
            result.rows.push_back({"none", 0, j, m.name, aggregate(collect(outcomes, j, m.get), n)});
    return result;
}

ExperimentResult experiment_fig2(const ScenarioConfig& cfg, const std::vector<double>& theta_kbits,
                                 const std::vector<double>& irl_semi_angles_deg) {
    cfg.validate();
    ExperimentResult result;
    result.experiment = "fig2";
    for (const double semi : irl_semi_angles_deg) {
        for (const double theta : theta_kbits) {
            PointOverrides ov;
            ov.theta_kbits = theta;
            ov.irl_semi_angle_deg = semi;
            const auto outcomes = run_point(cfg, ov);
            const long n = cfg.realizations;
            result.rows.push_back(
                {"theta_kbits", theta, 0, tagged("p_irl_total_w", "irl_semi_angle_deg", semi),
                 aggregate(collect(outcomes, 0,
                                   [](const solver::DeviceSolutiond& s) { return s.p_irl; }),
                           n)});
            for (int j = 1; j <= static_cast<int>(cfg.devices.size()); ++j)
                result.rows.push_back(
                    {"theta_kbits", theta, j, tagged("p_irl_w", "irl_semi_angle_deg", semi),
                     aggregate(collect(outcomes, j,
                                       [](const solver::DeviceSolutiond& s) { return s.p_irl; }),
                               n)});
        }
    }
    return result;
}

ExperimentResult experiment_fig3(const ScenarioConfig& cfg, const std::vector<double>& theta_kbits) {
    cfg.validate();
    ExperimentResult result;
    result.experiment = "fig3";
    for (const double theta : theta_kbits) {
        PointOverrides ov;
        ov.theta_kbits = theta;
        const auto outcomes = run_point(cfg, ov);
        const long n = cfg.realizations;
        for (int j = 1; j <= static_cast<int>(cfg.devices.size()); ++j) {
            for (const char* name : {"t_trans_over_t_comp", "t_trans_s", "t_comp_s"}) {
                const auto* spec = std::find_if(std::begin(kPerDeviceMetrics), std::end(kPerDeviceMetrics),
                                                [&](const MetricSpec& m) { return m.name == name; });
                result.rows.push_back(
                    {"theta_kbits", theta, j, spec->name, aggregate(collect(outcomes, j, spec->get), n)});
            }
        }
    }
    return result;
}

ExperimentResult experiment_fig4_fig5(const ScenarioConfig& cfg, const std::vector<int>& k_values,
                                      const std::vector<double>& frames_s) {
    cfg.validate();
    ExperimentResult result;
    result.experiment = "fig4_fig5";
    std::vector<int> ks = k_values;
    std::sort(ks.begin(), ks.end());
    const double theta = cfg.experiments.fig45_theta_kbits;
    const long n = cfg.realizations;
    for (const double frame : frames_s) {
        // per-realization baseline powers at the smallest K, for paired differences
        std::vector<std::vector<double>> base_p1;
        std::vector<char> base_ok;
        for (const int k : ks) {
            PointOverrides ov;
            ov.theta_kbits = theta;
            ov.frame_s = frame;
            ov.local_iterations = k;
            const auto outcomes = run_point(cfg, ov);
            if (base_p1.empty()) {
                base_p1.assign(outcomes.size(), {});
                base_ok.assign(outcomes.size(), 0);
                for (std::size_t r = 0; r < outcomes.size(); ++r) {
                    base_ok[r] = outcomes[r].feasible ? 1 : 0;
                    if (!outcomes[r].feasible) continue;
                    for (const auto& s : outcomes[r].devices) base_p1[r].push_back(s.p_irl);
                }
            }
            for (int j = 0; j <= static_cast<int>(cfg.devices.size()); ++j) {
                if (j > 0) {
                    result.rows.push_back({"local_iterations", double(k), j,
                                           tagged("t_comp_s", "frame_s", frame),
                                           aggregate(collect(outcomes, j,
                                                             [](const solver::DeviceSolutiond& s) {
                                                                 return s.t_comp;
                                                             }),
                                                     n)});
                    result.rows.push_back({"local_iterations", double(k), j,
                                           tagged("p_irl_w", "frame_s", frame),
                                           aggregate(collect(outcomes, j,
                                                             [](const solver::DeviceSolutiond& s) {
                                                                 return s.p_irl;
                                                             }),
                                                     n)});
                }
                std::vector<double> additional;
                for (std::size_t r = 0; r < outcomes.size(); ++r) {
                    if (!outcomes[r].feasible || !base_ok[r]) continue;
                    if (j == 0) {
                        double sum = 0;
                        for (std::size_t d = 0; d < outcomes[r].devices.size(); ++d)
                            sum += outcomes[r].devices[d].p_irl - base_p1[r][d];
                        additional.push_back(sum);
                    } else {
                        const auto d = static_cast<std::size_t>(j - 1);
                        additional.push_back(outcomes[r].devices[d].p_irl - base_p1[r][d]);
                    }
                }
                const std::string name = j == 0 ? "p_irl_additional_total_w" : "p_irl_additional_w";
                result.rows.push_back({"local_iterations", double(k), j, tagged(name, "frame_s", frame),
                                       aggregate(std::move(additional), n)});
            }
        }
    }
    return result;
}

std::vector<std::string> certify_point(const ScenarioConfig& cfg, const PointOverrides& ov,
                                       int realizations_to_check) {
    const auto distances = ap_distances(cfg);
    const int n_check = std::min(realizations_to_check, cfg.realizations);
    const solver::SolverTolerances tols;
    std::vector<std::string> issues;
    for (int r = 0; r < n_check; ++r) {
        const auto set = rf::draw_channels(cfg.rician, distances, cfg.antennas,
                                           realization_seed(cfg.rng_seed, static_cast<std::uint64_t>(r)),
                                           cfg.noise_variance_w, cfg.bandwidth_hz);
        for (int j = 0; j < static_cast<int>(cfg.devices.size()); ++j) {
            const auto dp = assemble_device_problem(cfg, j, rf::optimal_beamformer(set, j), ov);
            const auto sol = solver::try_solve_device(dp);
            const auto describe = [&](const std::string& what) {
                std::ostringstream os;
                os << "realization " << r << " device " << (j + 1) << ": " << what;
                issues.push_back(os.str());
            };
            const auto joint = oracle::joint_grid(dp);
            const auto joint_min = oracle::joint_feasible_min_power(dp, joint);
            if (!sol.feasible) {
                if (joint_min)
                    describe("solver reported infeasible but the joint grid found power " +
                             format_double(*joint_min));
                continue;
            }
            const auto grid = oracle::window_grid(dp);
            const auto [t_grid, psi_grid] = oracle::grid_min_energy_demand(dp, grid);
            const double t_tol = std::max(tols.golden_rel * dp.frame, grid.step(0));
            if (std::abs(sol.t_trans - t_grid) > t_tol)
                describe("transmission time " + format_double(sol.t_trans) +
                         " disagrees with grid minimizer " + format_double(t_grid));
            if (sol.energy_required > psi_grid * (1 + 1e-9))
                describe("energy demand " + format_double(sol.energy_required) +
                         " exceeds grid minimum " + format_double(psi_grid));
            if (joint_min && *joint_min < sol.p_irl - joint.step(1))
                describe("joint grid found feasible power " + format_double(*joint_min) +
                         " more than one step below " + format_double(sol.p_irl));
        }
    }
    return issues;
}

} // namespace lightfl::sim

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lightfl/config.hpp"
#include "lightfl/csv.hpp"
#include "lightfl/experiment.hpp"
#include "lightfl/svg.hpp"

namespace {

using namespace lightfl;

constexpr int kCertifyRealizations = 16;

// Sweep points a given experiment visits, for --certify replay.
std::vector<sim::PointOverrides> certify_points(const sim::ScenarioConfig& cfg,
                                                const std::string& experiment) {
    std::vector<sim::PointOverrides> points;
    const auto& ex = cfg.experiments;
    if (experiment == "fig2") {
        for (const double semi : ex.fig2_irl_semi_angles_deg)
            for (const double theta : ex.fig2_theta_kbits) {
                sim::PointOverrides ov;
                ov.theta_kbits = theta;
                ov.irl_semi_angle_deg = semi;
                points.push_back(ov);
            }
    } else if (experiment == "fig3") {
        for (const double theta : ex.fig3_theta_kbits) {
            sim::PointOverrides ov;
            ov.theta_kbits = theta;
            points.push_back(ov);
        }
    } else if (experiment == "fig4" || experiment == "fig5") {
        for (const double frame : ex.fig45_frames_s)
            for (const int k : ex.fig45_k_values) {
                sim::PointOverrides ov;
                ov.theta_kbits = ex.fig45_theta_kbits;
                ov.frame_s = frame;
                ov.local_iterations = k;
                points.push_back(ov);
            }
    } else {
        points.emplace_back();
    }
    return points;
}

sim::ExperimentResult filter_metrics(sim::ExperimentResult result, const std::string& experiment,
                                     const std::string& prefix) {
    sim::ExperimentResult out;
    out.experiment = experiment;
    for (auto& row : result.rows)
        if (row.metric.rfind(prefix, 0) == 0) out.rows.push_back(std::move(row));
    return out;
}

long feasible_total(const sim::ExperimentResult& result) {
    long n = 0;
    for (const auto& row : result.rows) n += row.agg.n_feasible;
    return n;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lightwave-powered federated learning resource allocation simulator"};

    std::string config_path;
    std::string experiment = "single";
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> realizations;
    bool certify = false;

    app.add_option("--config", config_path, "scenario config file (key = value)");
    app.add_option("--experiment", experiment, "experiment to run")
        ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5", "single"}));
    app.add_option("--seed", seed, "master RNG seed (overrides config)");
    app.add_option("--out", out_dir, "output directory for CSV/SVG");
    app.add_option("--realizations", realizations, "channel realizations per sweep point");
    app.add_flag("--certify", certify, "replay sample solutions against grid oracles");

    CLI11_PARSE(app, argc, argv);

    sim::ScenarioConfig cfg;
    try {
        cfg = config_path.empty() ? sim::ScenarioConfig::defaults() : sim::load_config(config_path);
        if (seed) cfg.rng_seed = *seed;
        if (realizations) cfg.realizations = *realizations;
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }

    try {
        std::filesystem::create_directories(out_dir);
        sim::ExperimentResult result;
        const auto& ex = cfg.experiments;
        if (experiment == "fig2") {
            result = sim::experiment_fig2(cfg, ex.fig2_theta_kbits, ex.fig2_irl_semi_angles_deg);
        } else if (experiment == "fig3") {
            result = sim::experiment_fig3(cfg, ex.fig3_theta_kbits);
        } else if (experiment == "fig4") {
            result = filter_metrics(sim::experiment_fig4_fig5(cfg, ex.fig45_k_values, ex.fig45_frames_s),
                                    "fig4", "t_comp_s");
        } else if (experiment == "fig5") {
            result = filter_metrics(sim::experiment_fig4_fig5(cfg, ex.fig45_k_values, ex.fig45_frames_s),
                                    "fig5", "p_irl_additional");
        } else {
            result = sim::run_monte_carlo(cfg);
        }

        const auto base = std::filesystem::path(out_dir) / experiment;
        sim::emit_csv(result, base.string() + ".csv");
        sim::emit_svg(result, base.string() + ".svg");
        std::cout << "wrote " << base.string() << ".csv (" << result.rows.size() << " rows)\n";

        if (certify) {
            std::vector<std::string> issues;
            for (const auto& ov : certify_points(cfg, experiment)) {
                auto found = sim::certify_point(cfg, ov, kCertifyRealizations);
                issues.insert(issues.end(), found.begin(), found.end());
            }
            if (!issues.empty()) {
                for (const auto& issue : issues) std::cerr << "oracle discrepancy: " << issue << "\n";
                return 3;
            }
            std::cout << "certified against grid oracles\n";
        }

        if (feasible_total(result) == 0) {
            std::cerr << "no feasible realization at any sweep point\n";
            return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

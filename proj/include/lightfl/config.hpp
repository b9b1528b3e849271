#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "lightfl/compute.hpp"
#include "lightfl/optics.hpp"
#include "lightfl/rf.hpp"

namespace lightfl::sim {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct DeviceConfig {
    double distance_to_ap_m;
    double distance_to_optical_m;
    double rate_threshold_kbits; // theta, kbits per frame
    double power_budget_w;       // IRL cap
};

// Default sweep axes for the four reproduced experiments.
struct ExperimentDefaults {
    std::vector<double> fig2_theta_kbits;
    std::vector<double> fig2_irl_semi_angles_deg;
    std::vector<double> fig3_theta_kbits;
    std::vector<int> fig45_k_values;
    std::vector<double> fig45_frames_s;
    double fig45_theta_kbits;
};

// Full scenario: stored in SI units; the config file uses unit-suffixed keys
// (deg, cm2, mA, kbits) normalized at parse time.
struct ScenarioConfig {
    double frame_s;
    int realizations;
    std::uint64_t rng_seed;

    int antennas;
    double bandwidth_hz;
    double noise_variance_w;
    rf::RicianModeld rician;

    double transmitter_height_m;
    double area_m2;
    double fov_rad;
    double vl_semi_angle_rad;
    double irl_semi_angle_rad;
    double filter_gain;
    double concentrator_index;
    double p_vl_w;
    optics::HarvesterParamsd harvester;

    compute::ComputeParamsd compute;

    std::vector<DeviceConfig> devices;
    ExperimentDefaults experiments;

    static ScenarioConfig defaults();
    void validate() const; // throws ConfigError
};

// Parses `key = value` lines over the defaults; '#' starts a comment.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::string& path);

// Serializes every field with the same keys parse_config accepts.
std::string render_config(const ScenarioConfig& cfg);

} // namespace lightfl::sim

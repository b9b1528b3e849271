#include "lightfl/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "lightfl/csv.hpp"

namespace lightfl::sim {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' has non-numeric value '" + value + "'");
    }
}

long long to_integer(const std::string& key, const std::string& value) {
    const double v = to_double(key, value);
    const double rounded = std::round(v);
    if (std::abs(v - rounded) > 0) throw ConfigError("config: key '" + key + "' must be an integer");
    return static_cast<long long>(rounded);
}

std::vector<double> to_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("config: key '" + key + "' has an empty list element");
        out.push_back(to_double(key, item));
    }
    if (out.empty()) throw ConfigError("config: key '" + key + "' has an empty list");
    return out;
}

// Preimage of `stored` under multiplication by `scale`, so a rendered
// unit-converted value parses back to the stored double bit for bit; among
// the (at most a few) valid preimages, prefers the shortest decimal.
double unscale(double stored, double scale) {
    if (stored == 0) return 0;
    double y = stored / scale;
    for (int i = 0; i < 8 && y * scale != stored; ++i)
        y = std::nextafter(y, y * scale < stored ? HUGE_VAL : -HUGE_VAL);
    double best = y;
    const auto better = [&](double c) { return format_double(c).size() < format_double(best).size(); };
    for (double c = std::nextafter(y, -HUGE_VAL); c * scale == stored; c = std::nextafter(c, -HUGE_VAL))
        if (better(c)) best = c;
    for (double c = std::nextafter(y, HUGE_VAL); c * scale == stored; c = std::nextafter(c, HUGE_VAL))
        if (better(c)) best = c;
    return best;
}

std::string join(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += format_double(values[i]);
    }
    return out;
}

} // namespace

ScenarioConfig ScenarioConfig::defaults() {
    ScenarioConfig cfg;
    cfg.frame_s = 1.0;
    cfg.realizations = 10000;
    cfg.rng_seed = 1;

    cfg.antennas = 4;
    cfg.bandwidth_hz = 1e6;
    cfg.noise_variance_w = 1e-10;
    cfg.rician = {8.0, 2.6, 2e-11};

    cfg.transmitter_height_m = 2.0;
    cfg.area_m2 = 85e-4;
    cfg.fov_rad = 70.0 * kDegToRad;
    cfg.vl_semi_angle_rad = 60.0 * kDegToRad;
    cfg.irl_semi_angle_rad = 60.0 * kDegToRad;
    cfg.filter_gain = 1.0;
    cfg.concentrator_index = 1.5;
    cfg.p_vl_w = 28.0;
    cfg.harvester = {0.75, 0.4, 1e-12, 0.02585};

    cfg.compute = {2e-28, 20.0, 1e7, 0.3e9, 1.5e9, 1};

    cfg.devices = {
        {3.3, 2.3, 36.0, 1e6},
        {3.0, 2.2, 36.0, 1e6},
        {2.7, 2.1, 36.0, 1e6},
    };

    cfg.experiments.fig2_theta_kbits = {20, 36, 40, 60, 80, 100};
    cfg.experiments.fig2_irl_semi_angles_deg = {20, 45, 60};
    cfg.experiments.fig3_theta_kbits = {20, 36, 60, 100};
    cfg.experiments.fig45_k_values = {1, 2, 3, 4};
    cfg.experiments.fig45_frames_s = {3, 5};
    cfg.experiments.fig45_theta_kbits = 40;
    return cfg;
}

void ScenarioConfig::validate() const {
    try {
        rician.validate();
        harvester.validate();
        compute.validate();
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!(frame_s > 0)) throw ConfigError("config: frame_s must be > 0");
    if (realizations < 1) throw ConfigError("config: realizations must be >= 1");
    if (antennas < 1) throw ConfigError("config: antennas must be >= 1");
    if (!(bandwidth_hz > 0)) throw ConfigError("config: bandwidth_hz must be > 0");
    if (!(noise_variance_w > 0)) throw ConfigError("config: noise_variance_w must be > 0");
    if (!(transmitter_height_m > 0)) throw ConfigError("config: transmitter_height_m must be > 0");
    if (!(area_m2 > 0)) throw ConfigError("config: optical area must be > 0");
    if (!(fov_rad > 0 && fov_rad <= M_PI_2)) throw ConfigError("config: fov outside (0, 90] degrees");
    for (const double semi : {vl_semi_angle_rad, irl_semi_angle_rad})
        if (!(semi > 0 && semi < M_PI_2)) throw ConfigError("config: semi-angle outside (0, 90) degrees");
    if (!(filter_gain > 0)) throw ConfigError("config: filter_gain must be > 0");
    if (!(concentrator_index > 0)) throw ConfigError("config: concentrator_index must be > 0");
    if (!(p_vl_w >= 0)) throw ConfigError("config: p_vl_w must be >= 0");
    if (devices.empty()) throw ConfigError("config: needs at least one device");
    for (std::size_t i = 0; i < devices.size(); ++i) {
        const auto& d = devices[i];
        const std::string tag = "config: device." + std::to_string(i + 1);
        if (!(d.distance_to_ap_m > 0)) throw ConfigError(tag + ".distance_to_ap_m must be > 0");
        if (!(d.distance_to_optical_m >= transmitter_height_m))
            throw ConfigError(tag + ".distance_to_optical_m must be >= transmitter height");
        if (!(d.rate_threshold_kbits > 0)) throw ConfigError(tag + ".rate_threshold_kbits must be > 0");
        if (!(d.power_budget_w > 0)) throw ConfigError(tag + ".power_budget_w must be > 0");
    }
    const auto& ex = experiments;
    if (ex.fig2_theta_kbits.empty() || ex.fig2_irl_semi_angles_deg.empty() ||
        ex.fig3_theta_kbits.empty() || ex.fig45_k_values.empty() || ex.fig45_frames_s.empty())
        throw ConfigError("config: experiment sweep lists must be nonempty");
    for (const int k : ex.fig45_k_values)
        if (k < 1) throw ConfigError("config: experiment.fig45.k_values must be >= 1");
    if (!(ex.fig45_theta_kbits > 0)) throw ConfigError("config: experiment.fig45.theta_kbits must be > 0");
}

ScenarioConfig parse_config(std::istream& in) {
    ScenarioConfig cfg = ScenarioConfig::defaults();
    std::map<int, DeviceConfig> extra_devices;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(line_no) + " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config: line " + std::to_string(line_no) + " has an empty key or value");

        if (key == "frame_s") cfg.frame_s = to_double(key, value);
        else if (key == "realizations") cfg.realizations = static_cast<int>(to_integer(key, value));
        else if (key == "rng_seed") cfg.rng_seed = static_cast<std::uint64_t>(to_integer(key, value));
        else if (key == "antennas") cfg.antennas = static_cast<int>(to_integer(key, value));
        else if (key == "bandwidth_hz") cfg.bandwidth_hz = to_double(key, value);
        else if (key == "noise_variance_w") cfg.noise_variance_w = to_double(key, value);
        else if (key == "rician.factor_db") cfg.rician.rician_factor_db = to_double(key, value);
        else if (key == "rician.pathloss_exponent") cfg.rician.pathloss_exponent = to_double(key, value);
        else if (key == "rician.reference_gain") cfg.rician.reference_gain = to_double(key, value);
        else if (key == "optical.transmitter_height_m") cfg.transmitter_height_m = to_double(key, value);
        else if (key == "optical.area_cm2") cfg.area_m2 = to_double(key, value) * 1e-4;
        else if (key == "optical.fov_deg") cfg.fov_rad = to_double(key, value) * kDegToRad;
        else if (key == "optical.vl_semi_angle_deg") cfg.vl_semi_angle_rad = to_double(key, value) * kDegToRad;
        else if (key == "optical.irl_semi_angle_deg") cfg.irl_semi_angle_rad = to_double(key, value) * kDegToRad;
        else if (key == "optical.filter_gain") cfg.filter_gain = to_double(key, value);
        else if (key == "optical.concentrator_index") cfg.concentrator_index = to_double(key, value);
        else if (key == "optical.p_vl_w") cfg.p_vl_w = to_double(key, value);
        else if (key == "harvester.fill_factor") cfg.harvester.fill_factor = to_double(key, value);
        else if (key == "harvester.responsivity_a_per_w") cfg.harvester.responsivity = to_double(key, value);
        else if (key == "harvester.dark_current_ma") cfg.harvester.dark_current = to_double(key, value) * 1e-3;
        else if (key == "harvester.thermal_voltage_v") cfg.harvester.thermal_voltage = to_double(key, value);
        else if (key == "compute.capacitance_coeff") cfg.compute.capacitance_coeff = to_double(key, value);
        else if (key == "compute.cycles_per_sample") cfg.compute.cycles_per_sample = to_double(key, value);
        else if (key == "compute.dataset_size") cfg.compute.dataset_size = to_double(key, value);
        else if (key == "compute.f_min_hz") cfg.compute.f_min = to_double(key, value);
        else if (key == "compute.f_max_hz") cfg.compute.f_max = to_double(key, value);
        else if (key == "compute.local_iterations") cfg.compute.local_iterations = static_cast<int>(to_integer(key, value));
        else if (key == "experiment.fig2.theta_kbits") cfg.experiments.fig2_theta_kbits = to_list(key, value);
        else if (key == "experiment.fig2.irl_semi_angles_deg") cfg.experiments.fig2_irl_semi_angles_deg = to_list(key, value);
        else if (key == "experiment.fig3.theta_kbits") cfg.experiments.fig3_theta_kbits = to_list(key, value);
        else if (key == "experiment.fig45.k_values") {
            cfg.experiments.fig45_k_values.clear();
            for (const double v : to_list(key, value)) {
                if (v != std::round(v)) throw ConfigError("config: " + key + " must be integers");
                cfg.experiments.fig45_k_values.push_back(static_cast<int>(v));
            }
        } else if (key == "experiment.fig45.frames_s") cfg.experiments.fig45_frames_s = to_list(key, value);
        else if (key == "experiment.fig45.theta_kbits") cfg.experiments.fig45_theta_kbits = to_double(key, value);
        else if (key.rfind("device.", 0) == 0) {
            const auto rest = key.substr(7);
            const auto dot = rest.find('.');
            if (dot == std::string::npos)
                throw ConfigError("config: malformed device key '" + key + "'");
            int index = 0;
            const auto num = rest.substr(0, dot);
            const auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), index);
            if (ec != std::errc() || p != num.data() + num.size() || index < 1)
                throw ConfigError("config: device index in '" + key + "' must be a positive integer");
            if (extra_devices.find(index) == extra_devices.end()) {
                const auto& base = cfg.devices;
                extra_devices[index] = index <= static_cast<int>(base.size())
                                           ? base[static_cast<std::size_t>(index - 1)]
                                           : base.back();
            }
            DeviceConfig& dev = extra_devices[index];
            const std::string field = rest.substr(dot + 1);
            if (field == "distance_to_ap_m") dev.distance_to_ap_m = to_double(key, value);
            else if (field == "distance_to_optical_m") dev.distance_to_optical_m = to_double(key, value);
            else if (field == "rate_threshold_kbits") dev.rate_threshold_kbits = to_double(key, value);
            else if (field == "power_budget_w") dev.power_budget_w = to_double(key, value);
            else throw ConfigError("config: unknown device field '" + field + "'");
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    if (!extra_devices.empty()) {
        const int max_index = extra_devices.rbegin()->first;
        const int count = std::max(max_index, static_cast<int>(cfg.devices.size()));
        std::vector<DeviceConfig> devices;
        devices.reserve(static_cast<std::size_t>(count));
        for (int i = 1; i <= count; ++i) {
            const auto it = extra_devices.find(i);
            if (it != extra_devices.end()) devices.push_back(it->second);
            else if (i <= static_cast<int>(cfg.devices.size()))
                devices.push_back(cfg.devices[static_cast<std::size_t>(i - 1)]);
            else devices.push_back(cfg.devices.back());
        }
        cfg.devices = std::move(devices);
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    return parse_config(in);
}

std::string render_config(const ScenarioConfig& cfg) {
    std::ostringstream out;
    out << "# scenario\n";
    out << "frame_s = " << format_double(cfg.frame_s) << "\n";
    out << "realizations = " << cfg.realizations << "\n";
    out << "rng_seed = " << cfg.rng_seed << "\n";
    out << "antennas = " << cfg.antennas << "\n";
    out << "bandwidth_hz = " << format_double(cfg.bandwidth_hz) << "\n";
    out << "noise_variance_w = " << format_double(cfg.noise_variance_w) << "\n";
    out << "\n# uplink fading\n";
    out << "rician.factor_db = " << format_double(cfg.rician.rician_factor_db) << "\n";
    out << "rician.pathloss_exponent = " << format_double(cfg.rician.pathloss_exponent) << "\n";
    out << "rician.reference_gain = " << format_double(cfg.rician.reference_gain) << "\n";
    out << "\n# optical downlink\n";
    out << "optical.transmitter_height_m = " << format_double(cfg.transmitter_height_m) << "\n";
    out << "optical.area_cm2 = " << format_double(unscale(cfg.area_m2, 1e-4)) << "\n";
    out << "optical.fov_deg = " << format_double(unscale(cfg.fov_rad, kDegToRad)) << "\n";
    out << "optical.vl_semi_angle_deg = " << format_double(unscale(cfg.vl_semi_angle_rad, kDegToRad)) << "\n";
    out << "optical.irl_semi_angle_deg = " << format_double(unscale(cfg.irl_semi_angle_rad, kDegToRad)) << "\n";
    out << "optical.filter_gain = " << format_double(cfg.filter_gain) << "\n";
    out << "optical.concentrator_index = " << format_double(cfg.concentrator_index) << "\n";
    out << "optical.p_vl_w = " << format_double(cfg.p_vl_w) << "\n";
    out << "\n# solar-cell harvester\n";
    out << "harvester.fill_factor = " << format_double(cfg.harvester.fill_factor) << "\n";
    out << "harvester.responsivity_a_per_w = " << format_double(cfg.harvester.responsivity) << "\n";
    out << "harvester.dark_current_ma = " << format_double(unscale(cfg.harvester.dark_current, 1e-3)) << "\n";
    out << "harvester.thermal_voltage_v = " << format_double(cfg.harvester.thermal_voltage) << "\n";
    out << "\n# on-device computation\n";
    out << "compute.capacitance_coeff = " << format_double(cfg.compute.capacitance_coeff) << "\n";
    out << "compute.cycles_per_sample = " << format_double(cfg.compute.cycles_per_sample) << "\n";
    out << "compute.dataset_size = " << format_double(cfg.compute.dataset_size) << "\n";
    out << "compute.f_min_hz = " << format_double(cfg.compute.f_min) << "\n";
    out << "compute.f_max_hz = " << format_double(cfg.compute.f_max) << "\n";
    out << "compute.local_iterations = " << cfg.compute.local_iterations << "\n";
    out << "\n# devices\n";
    for (std::size_t i = 0; i < cfg.devices.size(); ++i) {
        const auto& d = cfg.devices[i];
        const std::string p = "device." + std::to_string(i + 1) + ".";
        out << p << "distance_to_ap_m = " << format_double(d.distance_to_ap_m) << "\n";
        out << p << "distance_to_optical_m = " << format_double(d.distance_to_optical_m) << "\n";
        out << p << "rate_threshold_kbits = " << format_double(d.rate_threshold_kbits) << "\n";
        out << p << "power_budget_w = " << format_double(d.power_budget_w) << "\n";
    }
    out << "\n# experiment sweeps\n";
    out << "experiment.fig2.theta_kbits = " << join(cfg.experiments.fig2_theta_kbits) << "\n";
    out << "experiment.fig2.irl_semi_angles_deg = " << join(cfg.experiments.fig2_irl_semi_angles_deg) << "\n";
    out << "experiment.fig3.theta_kbits = " << join(cfg.experiments.fig3_theta_kbits) << "\n";
    {
        out << "experiment.fig45.k_values = ";
        const auto& ks = cfg.experiments.fig45_k_values;
        for (std::size_t i = 0; i < ks.size(); ++i) out << (i ? ", " : "") << ks[i];
        out << "\n";
    }
    out << "experiment.fig45.frames_s = " << join(cfg.experiments.fig45_frames_s) << "\n";
    out << "experiment.fig45.theta_kbits = " << format_double(cfg.experiments.fig45_theta_kbits) << "\n";
    return out.str();
}

} // namespace lightfl::sim

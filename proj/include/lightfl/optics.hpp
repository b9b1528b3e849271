#pragma once

#include <cmath>
#include <stdexcept>

namespace lightfl::optics {

// Geometry and receiver parameters of one LOS optical link (one band, one device).
template <class Scalar>
struct OpticalLink {
    Scalar active_area;          // photodetector area, m^2
    Scalar distance;             // transmitter to device, m
    Scalar irradiation_angle;    // rad
    Scalar incidence_angle;      // rad
    Scalar fov;                  // field-of-view half angle, rad
    Scalar semi_angle_half_power; // LED semi-angle at half power, rad
    Scalar filter_gain;          // optical band-pass filter gain
    Scalar concentrator_index;   // refractive index of the concentrator

    void validate() const {
        if (!(active_area > Scalar(0))) throw std::domain_error("optical link: active_area must be > 0");
        if (!(distance > Scalar(0))) throw std::domain_error("optical link: distance must be > 0");
        if (!(fov >= Scalar(0) && fov <= Scalar(M_PI_2))) throw std::domain_error("optical link: fov outside [0, pi/2]");
        if (!(semi_angle_half_power > Scalar(0) && semi_angle_half_power < Scalar(M_PI_2)))
            throw std::domain_error("optical link: semi-angle at half power outside (0, pi/2)");
    }
};

using OpticalLinkd = OpticalLink<double>;

// Solar-cell harvester constants shared by both bands.
template <class Scalar>
struct HarvesterParams {
    Scalar fill_factor;     // f_opt
    Scalar responsivity;    // A/W
    Scalar dark_current;    // A
    Scalar thermal_voltage; // V

    void validate() const {
        if (!(fill_factor > Scalar(0) && fill_factor <= Scalar(1)))
            throw std::domain_error("harvester: fill_factor outside (0, 1]");
        if (!(responsivity > Scalar(0))) throw std::domain_error("harvester: responsivity must be > 0");
        if (!(dark_current > Scalar(0))) throw std::domain_error("harvester: dark_current must be > 0");
        if (!(thermal_voltage > Scalar(0))) throw std::domain_error("harvester: thermal_voltage must be > 0");
    }
};

using HarvesterParamsd = HarvesterParams<double>;

template <class Scalar>
Scalar lambertian_order(Scalar semi_angle_half_power) {
    if (!(semi_angle_half_power > Scalar(0) && semi_angle_half_power < Scalar(M_PI_2)))
        throw std::domain_error("lambertian_order: semi-angle must lie in (0, pi/2)");
    using std::cos;
    using std::log;
    return -log(Scalar(2)) / log(cos(semi_angle_half_power));
}

// n^2 / sin^2(fov) inside the field of view, 0 outside.
template <class Scalar>
Scalar concentrator_gain(const OpticalLink<Scalar>& link) {
    using std::sin;
    if (link.incidence_angle > link.fov) return Scalar(0);
    const Scalar s = sin(link.fov);
    return link.concentrator_index * link.concentrator_index / (s * s);
}

// Lambertian LOS gain h = A (m+1) / (2 pi d^2) cos^m(phi) T_s g(psi) cos(psi).
template <class Scalar>
Scalar channel_gain(const OpticalLink<Scalar>& link) {
    using std::cos;
    using std::pow;
    const Scalar cpsi = cos(link.incidence_angle);
    if (link.incidence_angle > link.fov || cpsi <= Scalar(0)) return Scalar(0);
    const Scalar m = lambertian_order(link.semi_angle_half_power);
    const Scalar geometry = link.active_area * (m + Scalar(1)) /
                            (Scalar(2) * Scalar(M_PI) * link.distance * link.distance);
    return geometry * pow(cos(link.irradiation_angle), m) * link.filter_gain *
           concentrator_gain(link) * cpsi;
}

// EH = f_opt I_G V_t ln(1 + I_G / I_d) with I_G = nu P h; strictly increasing in P.
template <class Scalar>
Scalar harvested_power(const OpticalLink<Scalar>& link, const HarvesterParams<Scalar>& hp,
                       Scalar transmit_power) {
    using std::log1p;
    if (!(transmit_power >= Scalar(0))) throw std::domain_error("harvested_power: transmit power must be >= 0");
    const Scalar ig = hp.responsivity * transmit_power * channel_gain(link);
    if (ig == Scalar(0)) return Scalar(0);
    return hp.fill_factor * ig * hp.thermal_voltage * log1p(ig / hp.dark_current);
}

// tau * (EH_vl + EH_irl), the per-frame harvested energy of both bands.
template <class Scalar>
Scalar total_harvested_energy(const OpticalLink<Scalar>& vl, const OpticalLink<Scalar>& irl,
                              const HarvesterParams<Scalar>& hp, Scalar p_vl, Scalar p_irl,
                              Scalar frame) {
    if (!(frame > Scalar(0))) throw std::domain_error("total_harvested_energy: frame must be > 0");
    return frame * (harvested_power(vl, hp, p_vl) + harvested_power(irl, hp, p_irl));
}

} // namespace lightfl::optics

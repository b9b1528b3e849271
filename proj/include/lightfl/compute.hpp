#pragma once

#include <stdexcept>

namespace lightfl::compute {

// On-device FL computation model: alpha/2 * cD * f^2 per local iteration.
template <class Scalar>
struct ComputeParams {
    Scalar capacitance_coeff; // alpha, J s^2 / cycles^3
    Scalar cycles_per_sample; // c
    Scalar dataset_size;      // D, samples
    Scalar f_min;             // Hz
    Scalar f_max;             // Hz
    int local_iterations;     // K

    Scalar workload() const { return cycles_per_sample * dataset_size; } // cD, cycles

    void validate() const {
        if (!(f_min > Scalar(0) && f_min <= f_max))
            throw std::domain_error("compute: need 0 < f_min <= f_max");
        if (!(capacitance_coeff > Scalar(0))) throw std::domain_error("compute: capacitance_coeff must be > 0");
        if (!(cycles_per_sample > Scalar(0))) throw std::domain_error("compute: cycles_per_sample must be > 0");
        if (!(dataset_size > Scalar(0))) throw std::domain_error("compute: dataset_size must be > 0");
        if (local_iterations < 1) throw std::domain_error("compute: local_iterations must be >= 1");
    }
};

using ComputeParamsd = ComputeParams<double>;

// cD / f, seconds per local iteration
template <class Scalar>
Scalar computation_time(const ComputeParams<Scalar>& p, Scalar f_cpu) {
    if (!(f_cpu >= p.f_min && f_cpu <= p.f_max))
        throw std::domain_error("computation_time: frequency outside [f_min, f_max]");
    return p.workload() / f_cpu;
}

// (alpha/2) (cD)^3 / t^2, joules per local iteration
template <class Scalar>
Scalar computation_energy(const ComputeParams<Scalar>& p, Scalar t_comp) {
    const Scalar cd = p.workload();
    return p.capacitance_coeff / Scalar(2) * cd * cd * cd / (t_comp * t_comp);
}

// (alpha/2) (cD)^3 K^2 / (tau - T)^2: all K iterations squeezed into tau - t_trans
template <class Scalar>
Scalar total_compute_energy(const ComputeParams<Scalar>& p, Scalar t_trans, Scalar frame) {
    if (!(t_trans > Scalar(0) && t_trans < frame))
        throw std::domain_error("total_compute_energy: t_trans outside (0, frame)");
    const Scalar cd = p.workload();
    const Scalar k = Scalar(p.local_iterations);
    const Scalar slack = frame - t_trans;
    return p.capacitance_coeff / Scalar(2) * cd * cd * cd * k * k / (slack * slack);
}

} // namespace lightfl::compute

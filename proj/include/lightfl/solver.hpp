#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lightfl/compute.hpp"
#include "lightfl/optics.hpp"
#include "lightfl/rf.hpp"
#include "lightfl/search.hpp"

namespace lightfl::solver {

// Raised when a subproblem has no solution; carries the violated constraint
// and how far the best attainable point falls short (in that constraint's units).
class InfeasibleProblem : public std::runtime_error {
  public:
    InfeasibleProblem(std::string constraint, double deficit)
        : std::runtime_error("infeasible: " + constraint + " short by " + std::to_string(deficit)),
          constraint_(std::move(constraint)), deficit_(deficit) {}

    const std::string& constraint() const { return constraint_; }
    double deficit() const { return deficit_; }

  private:
    std::string constraint_;
    double deficit_;
};

// One device's instance of the power-minimization problem, after the
// beamformer fixed Gamma: choose T_trans and the IRL transmit power.
template <class Scalar>
struct DeviceProblem {
    compute::ComputeParams<Scalar> compute;
    rf::Beamformer<Scalar> beamformer;
    Scalar rate_threshold; // theta, bits per frame
    Scalar frame;          // tau, s
    Scalar bandwidth;      // Hz
    Scalar power_budget;   // IRL cap, W
    optics::OpticalLink<Scalar> vl_link;
    optics::OpticalLink<Scalar> irl_link;
    optics::HarvesterParams<Scalar> harvester;
    Scalar p_vl; // fixed illumination power, W

    void validate() const {
        compute.validate();
        vl_link.validate();
        irl_link.validate();
        harvester.validate();
        if (!(frame > Scalar(0))) throw std::domain_error("device problem: frame must be > 0");
        if (!(rate_threshold > Scalar(0))) throw std::domain_error("device problem: rate_threshold must be > 0");
        if (!(bandwidth > Scalar(0))) throw std::domain_error("device problem: bandwidth must be > 0");
        if (!(power_budget > Scalar(0))) throw std::domain_error("device problem: power_budget must be > 0");
        if (!(p_vl >= Scalar(0))) throw std::domain_error("device problem: p_vl must be >= 0");
    }
};

using DeviceProblemd = DeviceProblem<double>;

template <class Scalar>
struct ConstraintSlack {
    std::string name;
    Scalar slack; // normalized; >= 0 means satisfied, equalities report -|violation|
};

template <class Scalar>
struct DeviceSolution {
    Scalar t_trans = Scalar(0);
    Scalar t_comp = Scalar(0);
    Scalar f_cpu = Scalar(0);
    Scalar p_uplink = Scalar(0);
    Scalar p_irl = Scalar(0);
    Scalar energy_required = Scalar(0); // epsilon* = Psi(T*)
    bool feasible = false;
    std::string failed_constraint;      // set when infeasible
    std::vector<ConstraintSlack<Scalar>> constraint_report;
};

using DeviceSolutiond = DeviceSolution<double>;

struct SolverTolerances {
    double golden_rel = 1e-8;  // times frame
    double bisect_rel = 1e-9;  // times power budget
    double energy_rel = 1e-8;  // target relative tightness of the energy balance
};

// Feasible transmission-time window [tau - cDK/f_min, tau - cDK/f_max].
template <class Scalar>
std::pair<Scalar, Scalar> transmission_window(const DeviceProblem<Scalar>& dp) {
    const Scalar cdk = dp.compute.workload() * Scalar(dp.compute.local_iterations);
    return {dp.frame - cdk / dp.compute.f_min, dp.frame - cdk / dp.compute.f_max};
}

// Psi(T): minimum total energy demand (compute + uplink transmission) if the
// device transmits for T seconds of the frame.
template <class Scalar>
Scalar energy_demand(const DeviceProblem<Scalar>& dp, Scalar t_trans) {
    using std::expm1;
    const auto [a0, b0] = transmission_window(dp);
    const Scalar slop = Scalar(1e-12) * dp.frame;
    if (!(t_trans >= a0 - slop && t_trans <= b0 + slop))
        throw std::domain_error("energy_demand: t_trans outside the feasible window");
    const Scalar cd = dp.compute.workload();
    const Scalar k = Scalar(dp.compute.local_iterations);
    const Scalar slack = dp.frame - t_trans;
    const Scalar e_comp = dp.compute.capacitance_coeff / Scalar(2) * cd * cd * cd * k * k / (slack * slack);
    const Scalar e_trans = t_trans *
                           expm1(Scalar(M_LN2) * dp.rate_threshold / (t_trans * dp.bandwidth)) /
                           dp.beamformer.sinr_coefficient;
    return e_comp + e_trans;
}

// Psi''(T) = 3 alpha (cD)^3 K^2 / (tau-T)^4 + (theta ln2 / B)^2 2^{theta/(TB)} / (Gamma T^3).
// Strictly positive on the window, which is what makes golden-section exact.
template <class Scalar>
Scalar energy_demand_curvature(const DeviceProblem<Scalar>& dp, Scalar t_trans) {
    using std::exp2;
    const auto [a0, b0] = transmission_window(dp);
    const Scalar slop = Scalar(1e-12) * dp.frame;
    if (!(t_trans >= a0 - slop && t_trans <= b0 + slop))
        throw std::domain_error("energy_demand_curvature: t_trans outside the feasible window");
    const Scalar cd = dp.compute.workload();
    const Scalar k = Scalar(dp.compute.local_iterations);
    const Scalar slack = dp.frame - t_trans;
    const Scalar slack2 = slack * slack;
    const Scalar comp_term = Scalar(3) * dp.compute.capacitance_coeff * cd * cd * cd * k * k /
                             (slack2 * slack2);
    const Scalar s = dp.rate_threshold * Scalar(M_LN2) / dp.bandwidth; // theta ln2 / B
    const Scalar trans_term = s * s * exp2(dp.rate_threshold / (t_trans * dp.bandwidth)) /
                              (dp.beamformer.sinr_coefficient * t_trans * t_trans * t_trans);
    return comp_term + trans_term;
}

namespace detail {
template <class Scalar>
void require_window(const std::pair<Scalar, Scalar>& window) {
    const auto [a0, b0] = window;
    if (!(a0 > Scalar(0)))
        throw InfeasibleProblem("time_window_lower", static_cast<double>(-a0));
    if (!(b0 >= a0))
        throw InfeasibleProblem("time_window_order", static_cast<double>(a0 - b0));
}
} // namespace detail

// SubOP_1: golden-section minimization of Psi over the window. The observer
// receives every bracket [a_n, b_n].
template <class Scalar, class Observer>
Scalar solve_transmission_time(const DeviceProblem<Scalar>& dp, Scalar tol, Observer&& observe) {
    const auto window = transmission_window(dp);
    detail::require_window(window);
    const auto [a0, b0] = window;
    if (b0 == a0) return a0; // f_min == f_max collapses the window to a point
    return search::golden_section_min([&](Scalar t) { return energy_demand(dp, t); }, a0, b0, tol,
                                      static_cast<Observer&&>(observe));
}

template <class Scalar>
Scalar solve_transmission_time(const DeviceProblem<Scalar>& dp, Scalar tol) {
    return solve_transmission_time(dp, tol, [](Scalar, Scalar) {});
}

// SubOP_2: smallest IRL power whose harvested energy, on top of the fixed VL
// band, covers energy_required. Bisection on the strictly increasing EH curve;
// iterates past the width tolerance until the energy balance is tight.
template <class Scalar>
Scalar solve_irl_power(const DeviceProblem<Scalar>& dp, Scalar energy_required,
                       const SolverTolerances& tols = {}) {
    using std::abs;
    if (!(energy_required > Scalar(0)))
        throw std::domain_error("solve_irl_power: energy_required must be > 0");
    const Scalar eh_vl = optics::harvested_power(dp.vl_link, dp.harvester, dp.p_vl);
    const Scalar residual = energy_required / dp.frame - eh_vl; // W demanded from the IRL band
    if (residual <= Scalar(0)) return Scalar(0);
    const auto eh_irl = [&](Scalar p) { return optics::harvested_power(dp.irl_link, dp.harvester, p); };
    const Scalar at_budget = eh_irl(dp.power_budget);
    if (at_budget < residual)
        throw InfeasibleProblem("energy", static_cast<double>((residual - at_budget) * dp.frame));
    const Scalar width_tol = Scalar(tols.bisect_rel) * dp.power_budget;
    const Scalar gap_tol = Scalar(tols.energy_rel) * residual;
    Scalar lo = Scalar(0);
    Scalar hi = dp.power_budget;
    Scalar eh_hi = at_budget;
    while (hi - lo > width_tol || eh_hi - residual > gap_tol) {
        const Scalar mid = lo + (hi - lo) / Scalar(2);
        if (mid <= lo || mid >= hi) break; // fp resolution reached
        const Scalar eh_mid = eh_irl(mid);
        if (eh_mid >= residual) {
            hi = mid;
            eh_hi = eh_mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

namespace detail {
template <class Scalar>
std::vector<ConstraintSlack<Scalar>> audit(const DeviceProblem<Scalar>& dp,
                                           const DeviceSolution<Scalar>& s) {
    using std::abs;
    std::vector<ConstraintSlack<Scalar>> report;
    report.reserve(8);
    const Scalar rate = rf::uplink_rate(dp.beamformer, s.p_uplink, s.t_trans, dp.bandwidth);
    report.push_back({"rate", (rate - dp.rate_threshold) / dp.rate_threshold});
    const Scalar harvested = optics::total_harvested_energy(dp.vl_link, dp.irl_link, dp.harvester,
                                                            dp.p_vl, s.p_irl, dp.frame);
    report.push_back({"energy", (harvested - s.energy_required) / s.energy_required});
    const Scalar used = Scalar(dp.compute.local_iterations) * s.t_comp + s.t_trans;
    report.push_back({"time", -abs(dp.frame - used) / dp.frame});
    report.push_back({"cpu_freq_low", (s.f_cpu - dp.compute.f_min) / dp.compute.f_min});
    report.push_back({"cpu_freq_high", (dp.compute.f_max - s.f_cpu) / dp.compute.f_max});
    report.push_back({"beam_norm", -abs(dp.beamformer.weights.squaredNorm() - Scalar(1))});
    report.push_back({"power_low", s.p_irl / dp.power_budget});
    report.push_back({"power_high", (dp.power_budget - s.p_irl) / dp.power_budget});
    return report;
}
} // namespace detail

// Full per-device solve: T* by golden section, epsilon* = Psi(T*), P* by
// bisection, then derived quantities and the constraint audit.
// Throws InfeasibleProblem when either subproblem is infeasible.
template <class Scalar>
DeviceSolution<Scalar> solve_device(const DeviceProblem<Scalar>& dp,
                                    const SolverTolerances& tols = {}) {
    dp.validate();
    DeviceSolution<Scalar> s;
    s.t_trans = solve_transmission_time(dp, Scalar(tols.golden_rel) * dp.frame);
    s.energy_required = energy_demand(dp, s.t_trans);
    s.p_irl = solve_irl_power(dp, s.energy_required, tols);
    const Scalar k = Scalar(dp.compute.local_iterations);
    s.t_comp = (dp.frame - s.t_trans) / k;
    s.f_cpu = dp.compute.workload() / s.t_comp;
    s.p_uplink = rf::required_uplink_power(dp.beamformer, dp.rate_threshold, s.t_trans, dp.bandwidth);
    s.feasible = true;
    s.constraint_report = detail::audit(dp, s);
    return s;
}

// Non-throwing variant used by the Monte-Carlo harness: infeasibility comes
// back as a flagged solution naming the violated constraint.
template <class Scalar>
DeviceSolution<Scalar> try_solve_device(const DeviceProblem<Scalar>& dp,
                                        const SolverTolerances& tols = {}) {
    try {
        return solve_device(dp, tols);
    } catch (const InfeasibleProblem& e) {
        DeviceSolution<Scalar> s;
        s.feasible = false;
        s.failed_constraint = e.constraint();
        return s;
    }
}

} // namespace lightfl::solver

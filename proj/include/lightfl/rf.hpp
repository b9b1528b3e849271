#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lightfl/rng.hpp"

namespace lightfl::rf {

template <class Scalar>
using CVector = Eigen::Vector<std::complex<Scalar>, Eigen::Dynamic>;
template <class Scalar>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

// One realization of all device-to-AP uplink channel vectors.
template <class Scalar>
struct UplinkChannelSet {
    std::vector<CVector<Scalar>> channels; // g_j, length M each
    Scalar noise_variance;                 // sigma_0^2, W
    Scalar bandwidth;                      // Hz

    void validate() const {
        if (channels.empty()) throw std::domain_error("channel set: needs at least one device");
        const auto m = channels.front().size();
        if (m < 1) throw std::domain_error("channel set: M must be >= 1");
        for (const auto& g : channels)
            if (g.size() != m) throw std::domain_error("channel set: mixed vector lengths");
        if (!(noise_variance > Scalar(0))) throw std::domain_error("channel set: noise_variance must be > 0");
        if (!(bandwidth > Scalar(0))) throw std::domain_error("channel set: bandwidth must be > 0");
    }
};

using UplinkChannelSetd = UplinkChannelSet<double>;

// Receive beamformer and the post-beamforming SINR per unit transmit power.
template <class Scalar>
struct Beamformer {
    CVector<Scalar> weights;  // w, unit norm
    Scalar sinr_coefficient;  // Gamma
};

using Beamformerd = Beamformer<double>;

// Statistical description of the uplink fading.
template <class Scalar>
struct RicianModel {
    Scalar rician_factor_db;
    Scalar pathloss_exponent;
    Scalar reference_gain; // power gain at 1 m

    void validate() const {
        if (!(pathloss_exponent > Scalar(0))) throw std::domain_error("rician: pathloss_exponent must be > 0");
        if (!(reference_gain > Scalar(0))) throw std::domain_error("rician: reference_gain must be > 0");
    }
};

using RicianModeld = RicianModel<double>;

// Draws g_j = sqrt(pathloss(d_j)) (sqrt(K/(K+1)) 1 + sqrt(1/(K+1)) CN(0, I)).
// The LOS component is the all-ones vector (broadside array); the draw order
// is device-major, antenna-minor, so the stream is reproducible by contract.
template <class Scalar>
UplinkChannelSet<Scalar> draw_channels(const RicianModel<Scalar>& model,
                                       const std::vector<Scalar>& distances, int antennas,
                                       std::uint64_t rng_seed, Scalar noise_variance,
                                       Scalar bandwidth) {
    using std::pow;
    using std::sqrt;
    model.validate();
    if (antennas < 1) throw std::domain_error("draw_channels: M must be >= 1");
    const Scalar k = pow(Scalar(10), model.rician_factor_db / Scalar(10));
    const Scalar los_weight = sqrt(k / (k + Scalar(1)));
    const Scalar scatter_weight = sqrt(Scalar(1) / (k + Scalar(1)));
    Rng rng(rng_seed);
    UplinkChannelSet<Scalar> set;
    set.noise_variance = noise_variance;
    set.bandwidth = bandwidth;
    set.channels.reserve(distances.size());
    for (const Scalar d : distances) {
        if (!(d > Scalar(0))) throw std::domain_error("draw_channels: distances must be > 0");
        const Scalar amp = sqrt(model.reference_gain * pow(d, -model.pathloss_exponent));
        CVector<Scalar> g(antennas);
        for (int a = 0; a < antennas; ++a) {
            const std::complex<double> z = rng.cnormal();
            g[a] = amp * (los_weight + scatter_weight *
                                           std::complex<Scalar>(Scalar(z.real()), Scalar(z.imag())));
        }
        set.channels.push_back(std::move(g));
    }
    set.validate();
    return set;
}

// Maximizes |g_j^H w|^2 / (w^H B w) with B = sum_{j' != j} g g^H + sigma^2 I.
// The numerator matrix has rank one, so the top generalized eigenvector is
// B^{-1} g_j up to scale; one Cholesky solve replaces an eigendecomposition.
template <class Scalar>
Beamformer<Scalar> optimal_beamformer(const UplinkChannelSet<Scalar>& set, int device) {
    set.validate();
    const int j = device;
    if (j < 0 || j >= static_cast<int>(set.channels.size()))
        throw std::out_of_range("optimal_beamformer: device index out of range");
    const auto& g = set.channels[static_cast<std::size_t>(j)];
    const auto m = g.size();
    CMatrix<Scalar> b = set.noise_variance * CMatrix<Scalar>::Identity(m, m);
    for (std::size_t jp = 0; jp < set.channels.size(); ++jp) {
        if (static_cast<int>(jp) == j) continue;
        const auto& gi = set.channels[jp];
        b.noalias() += gi * gi.adjoint();
    }
    Eigen::LLT<CMatrix<Scalar>> llt(b);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("optimal_beamformer: Cholesky factorization failed");
    const CVector<Scalar> x = llt.solve(g);
    const Scalar gamma = g.dot(x).real(); // g^H B^{-1} g, real by Hermitian symmetry
    if (!(gamma > Scalar(0)))
        throw std::runtime_error("optimal_beamformer: nonpositive SINR coefficient");
    Beamformer<Scalar> bf;
    bf.weights = x.normalized();
    bf.sinr_coefficient = gamma;
    return bf;
}

// T B log2(1 + Gamma P), bits delivered in t_trans seconds
template <class Scalar>
Scalar uplink_rate(const Beamformer<Scalar>& bf, Scalar tx_power, Scalar t_trans, Scalar bandwidth) {
    using std::log1p;
    if (!(tx_power >= Scalar(0))) throw std::domain_error("uplink_rate: tx_power must be >= 0");
    if (!(t_trans > Scalar(0))) throw std::domain_error("uplink_rate: t_trans must be > 0");
    return t_trans * bandwidth * log1p(bf.sinr_coefficient * tx_power) / Scalar(M_LN2);
}

// (2^{theta/(T B)} - 1) / Gamma, the exact inverse of uplink_rate in power
template <class Scalar>
Scalar required_uplink_power(const Beamformer<Scalar>& bf, Scalar rate_threshold, Scalar t_trans,
                             Scalar bandwidth) {
    using std::expm1;
    if (!(t_trans > Scalar(0))) throw std::domain_error("required_uplink_power: t_trans must be > 0");
    return expm1(Scalar(M_LN2) * rate_threshold / (t_trans * bandwidth)) / bf.sinr_coefficient;
}

template <class Scalar>
Scalar transmission_energy(Scalar t_trans, Scalar tx_power) {
    if (!(t_trans >= Scalar(0))) throw std::domain_error("transmission_energy: t_trans must be >= 0");
    if (!(tx_power >= Scalar(0))) throw std::domain_error("transmission_energy: tx_power must be >= 0");
    return t_trans * tx_power;
}

} // namespace lightfl::rf

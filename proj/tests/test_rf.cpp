#include "doctest.h"

#include <cmath>
#include <complex>

#include "lightfl/rf.hpp"
#include "lightfl/rng.hpp"
#include "support.hpp"

using namespace lightfl::rf;

namespace {

RicianModeld table_model() { return {8.0, 2.6, 2e-11}; }

UplinkChannelSetd table_set(std::uint64_t seed) {
    return draw_channels(table_model(), {3.3, 3.0, 2.7}, 4, seed, 1e-10, 1e6);
}

CMatrix<double> interference_matrix(const UplinkChannelSetd& set, int device) {
    const auto m = set.channels.front().size();
    CMatrix<double> b = set.noise_variance * CMatrix<double>::Identity(m, m);
    for (std::size_t jp = 0; jp < set.channels.size(); ++jp)
        if (static_cast<int>(jp) != device) b += set.channels[jp] * set.channels[jp].adjoint();
    return b;
}

double rayleigh_quotient(const UplinkChannelSetd& set, int device, const CVector<double>& w) {
    const auto& g = set.channels[static_cast<std::size_t>(device)];
    const CMatrix<double> b = interference_matrix(set, device);
    return std::norm(g.dot(w)) / w.dot(b * w).real();
}

} // namespace

TEST_SUITE("rf") {

TEST_CASE("same seed draws the same channels") {
    const auto a = table_set(5);
    const auto b = table_set(5);
    const auto c = table_set(6);
    for (std::size_t j = 0; j < a.channels.size(); ++j) {
        CHECK((a.channels[j] - b.channels[j]).norm() == 0.0);
        CHECK((a.channels[j] - c.channels[j]).norm() > 0.0);
    }
}

TEST_CASE("huge Rician factor collapses to the LOS term") {
    auto model = table_model();
    model.rician_factor_db = 300.0;
    const double d = 2.0;
    const auto set = draw_channels(model, {d}, 4, 9, 1e-10, 1e6);
    const double amp = std::sqrt(model.reference_gain * std::pow(d, -model.pathloss_exponent));
    for (int a = 0; a < 4; ++a)
        CHECK(std::abs(set.channels[0][a] - std::complex<double>(amp, 0.0)) <= 1e-12 * amp);
}

TEST_CASE("empirical entry power matches the pathloss") {
    const auto model = table_model();
    const double d = 2.0;
    const double expected = model.reference_gain * std::pow(d, -model.pathloss_exponent);
    double power = 0;
    const int draws = 25000;
    for (int r = 0; r < draws; ++r) {
        const auto set = draw_channels(model, {d}, 4, lightfl::realization_seed(77, r), 1e-10, 1e6);
        power += set.channels[0].squaredNorm();
    }
    CHECK(power / (4.0 * draws) == doctest::Approx(expected).epsilon(0.02));
}

TEST_CASE("single-device beamformer is the matched filter") {
    const auto set = draw_channels(table_model(), {2.5}, 4, 13, 1e-10, 1e6);
    const auto bf = optimal_beamformer(set, 0);
    const auto& g = set.channels[0];
    const CVector<double> mf = g.normalized();
    CHECK(std::abs(std::abs(bf.weights.dot(mf)) - 1.0) <= 1e-12);
    CHECK(bf.sinr_coefficient ==
          doctest::Approx(g.squaredNorm() / set.noise_variance).epsilon(1e-9));
}

TEST_CASE("beamformer maximizes the Rayleigh quotient") {
    lightfl::Rng probe_rng(1001);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto set = table_set(100 + s);
        for (int j = 0; j < 3; ++j) {
            const auto bf = optimal_beamformer(set, j);
            const double best = rayleigh_quotient(set, j, bf.weights);
            for (int probe = 0; probe < 200; ++probe) {
                CVector<double> w(4);
                for (int a = 0; a < 4; ++a) w[a] = probe_rng.cnormal();
                w.normalize();
                CHECK(best >= rayleigh_quotient(set, j, w) * (1.0 - 1e-12));
            }
        }
    }
}

TEST_CASE("beamformer aligns with the explicit-inverse solution") {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto set = table_set(200 + s);
        for (int j = 0; j < 3; ++j) {
            const auto bf = optimal_beamformer(set, j);
            CHECK(std::abs(bf.weights.squaredNorm() - 1.0) <= 1e-10);
            const CMatrix<double> b = interference_matrix(set, j);
            const auto& g = set.channels[static_cast<std::size_t>(j)];
            const CVector<double> alt = (b.inverse() * g).normalized();
            CHECK(std::abs(bf.weights.dot(alt)) > 1.0 - 1e-9);
            CHECK(bf.sinr_coefficient ==
                  doctest::Approx(g.dot(b.inverse() * g).real()).epsilon(1e-9));
        }
    }
}

TEST_CASE("uplink rate basics") {
    const auto bf = testsupport::synthetic_beamformer(0.5);
    CHECK(uplink_rate(bf, 0.0, 1.0, 1e6) == 0.0);
    CHECK(uplink_rate(bf, 2.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(uplink_rate(bf, 3.0, 2.0, 1e6) ==
          doctest::Approx(2.0 * uplink_rate(bf, 3.0, 1.0, 1e6)).epsilon(1e-14));
    CHECK_THROWS_AS(uplink_rate(bf, -1.0, 1.0, 1e6), std::domain_error);
    CHECK_THROWS_AS(uplink_rate(bf, 1.0, 0.0, 1e6), std::domain_error);
}

TEST_CASE("required power inverts the rate") {
    lightfl::Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const auto bf = testsupport::synthetic_beamformer(testsupport::perturb(rng, 0.2));
        const double theta = testsupport::perturb(rng, 36e3);
        const double t = testsupport::uniform_in(rng, 0.05, 3.0);
        const double bw = testsupport::perturb(rng, 1e6);
        const double p = required_uplink_power(bf, theta, t, bw);
        CHECK(uplink_rate(bf, p, t, bw) == doctest::Approx(theta).epsilon(1e-9));
    }
    const auto bf = testsupport::synthetic_beamformer(0.4);
    CHECK(required_uplink_power(bf, 1e6, 1.0, 1e6) == doctest::Approx(1.0 / 0.4).epsilon(1e-12));
    CHECK(required_uplink_power(bf, 0.0, 1.0, 1e6) == 0.0);
}

TEST_CASE("transmission energy declines with transmission time") {
    const auto bf = testsupport::synthetic_beamformer(0.2);
    double prev = 1e300;
    for (double t = 0.05; t <= 2.0; t += 0.05) {
        const double e = transmission_energy(t, required_uplink_power(bf, 36e3, t, 1e6));
        CHECK(e < prev);
        prev = e;
    }
}

TEST_CASE("transmission energy basics") {
    CHECK(transmission_energy(0.0, 123.0) == 0.0);
    CHECK(transmission_energy(1.0, 1.0) == 1.0);
    CHECK(transmission_energy(3.0, 2.0) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK_THROWS_AS(transmission_energy(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(transmission_energy(1.0, -1.0), std::domain_error);
}

} // TEST_SUITE

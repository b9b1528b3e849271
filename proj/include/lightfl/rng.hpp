#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace lightfl {

// SplitMix64 finalizer, used to expand one master seed into independent
// per-realization seeds without correlated low bits.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t realization_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master + 0x9E3779B97F4A7C15ULL * (index + 1));
}

// Deterministic generator wrapping std::mt19937_64 (whose output sequence is
// fixed by the standard) with an explicit canonical-uniform mapping, so the
// stream does not depend on library-specific distribution code.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // uniform on (0, 1]; never 0, safe under log()
    double uniform() {
        const std::uint64_t bits = engine_() >> 11;
        return static_cast<double>(bits + 1) * 0x1.0p-53;
    }

    // standard circularly-symmetric complex normal, unit total variance
    std::complex<double> cnormal() {
        const double radius = std::sqrt(-std::log(uniform()));
        const double angle = 2.0 * M_PI * uniform();
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace lightfl

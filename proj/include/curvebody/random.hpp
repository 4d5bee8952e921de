#pragma once

#include <cstdint>
#include <random>

#include "curvebody/chart.hpp"

namespace curvebody {

// Deterministic RNG with a platform-independent uniform double: identical byte output
// for identical seeds everywhere (no distribution objects, whose streams vary by
// implementation).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

    Vec3 vec3(double amp) { return {range(-amp, amp), range(-amp, amp), range(-amp, amp)}; }

    std::uint64_t raw() { return gen_(); }

  private:
    std::mt19937_64 gen_;
};

// splitmix64-style mixer: decorrelates per-case seeds derived from (seed, index).
inline std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Chart point well inside the chart domain (|v| <= rmax < 1 keeps both spaces valid).
inline ChartPoint random_chart_point(Rng& rng, Space sp, double rmax = 0.7) {
    Vec3 v;
    do {
        v = rng.vec3(rmax);
    } while (norm2(v) > rmax * rmax);
    return {v, sp};
}

inline Vec3 random_velocity(Rng& rng, double amp = 0.5) { return rng.vec3(amp); }

// Generic element with all 8 components populated.
inline Biquaternion random_biquaternion(Rng& rng, Space sp, double amp = 1.0) {
    return {RingScalar{rng.range(-amp, amp), rng.range(-amp, amp), sp},
            RingVector3{rng.vec3(amp), rng.vec3(amp), sp}};
}

inline PairVector random_pair_vector(Rng& rng, Space sp, double amp = 0.35) {
    return RingVector3{rng.vec3(amp), rng.vec3(amp), sp};
}

}  // namespace curvebody

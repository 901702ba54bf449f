#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace colloid {

// Thin deterministic RNG. mt19937_64 has a standard-mandated sequence and the
// value transforms below are our own, so identical seeds give identical
// streams on every platform (std::uniform_real_distribution does not
// guarantee that).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // uniform on the unit sphere (Marsaglia rejection)
    Eigen::Vector3d unit_vector() {
        for (;;) {
            const double a = uniform(-1.0, 1.0);
            const double b = uniform(-1.0, 1.0);
            const double s = a * a + b * b;
            if (s >= 1.0 || s == 0.0) continue;
            const double t = 2.0 * std::sqrt(1.0 - s);
            return {a * t, b * t, 1.0 - 2.0 * s};
        }
    }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

} // namespace colloid

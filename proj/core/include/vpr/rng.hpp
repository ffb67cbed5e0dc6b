#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace vpr {

// Deterministic draws on top of std::mt19937_64. The engine's output sequence
// is pinned by the standard; the std::*_distribution adaptors are not, so
// every distribution used for reproducible artifacts is spelled out here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform index in [0, n), rejection-sampled so every index is equally likely.
    std::size_t uniform_index(std::size_t n) {
        if (n == 0) return 0;
        const std::uint64_t span = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t draw;
        do {
            draw = engine_();
        } while (draw >= span);
        return static_cast<std::size_t>(draw % n);
    }

    // Standard normal via Box-Muller; pairs are cached.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace vpr

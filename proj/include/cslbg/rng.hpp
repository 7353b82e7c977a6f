#pragma once

// Deterministic random helpers. std::mt19937_64 has a portable, standardized
// output sequence, but the standard distributions do not, so the draws here
// are written out explicitly and produce identical streams on any conforming
// implementation.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>

namespace cslbg {

//! Wraps a seeded mt19937_64 and exposes fixed-algorithm draws. Consumption
//! per call: uniform() one engine step, exponential() one, normal() two
//! (Box-Muller pair, both values returned), poisson_count(mean) a variable
//! number of exponential draws (inter-arrival accumulation).
class PortableRng {
public:
    explicit PortableRng(std::uint64_t seed) : gen_(seed) {}

    //! Uniform in [0, 1): the top 53 bits of one engine output.
    double uniform()
    {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    //! Exponential with the given rate via inversion: -ln(1 - u) / rate.
    double exponential(double rate)
    {
        if (!(rate > 0))
            throw std::domain_error("exponential rate must be > 0");
        return -std::log1p(-uniform()) / rate;
    }

    struct NormalPair {
        double first;
        double second;
    };

    //! Standard normal pair by Box-Muller; consumes exactly two uniforms.
    //! u1 is nudged away from 0 so the log stays finite.
    NormalPair normal_pair()
    {
        double u1 = uniform();
        if (u1 <= 0) u1 = 0x1.0p-53;
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

    //! Number of events in a unit interval at the given mean, counted by
    //! accumulating exponential inter-arrival times until they exceed 1.
    std::uint64_t poisson_count(double mean)
    {
        if (!(mean >= 0))
            throw std::domain_error("poisson mean must be >= 0");
        if (mean == 0) return 0;
        std::uint64_t n = 0;
        double t = exponential(mean);
        while (t <= 1.0) {
            ++n;
            t += exponential(mean);
        }
        return n;
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

} // namespace cslbg

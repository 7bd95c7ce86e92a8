#pragma once
// Seeded random streams. Every chain and every simulation stage draws from
// its own stream derived from (seed, stream id), so results do not depend on
// how work is scheduled across threads.

#include <cstdint>
#include <random>

namespace bvsr {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      0x9e3779b9u};
    return Rng(seq);
}

// Uniform on the open interval (0, 1).
inline double uniform_open(Rng& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double v = 0.0;
    do {
        v = u(rng);
    } while (v <= 0.0);
    return v;
}

// Uniform integer in [lo, hi].
inline int uniform_int(Rng& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double standard_normal(Rng& rng)
{
    return std::normal_distribution<double>(0.0, 1.0)(rng);
}

inline double gamma_draw(Rng& rng, double shape, double scale)
{
    return std::gamma_distribution<double>(shape, scale)(rng);
}

inline double beta_draw(Rng& rng, double a, double b)
{
    const double x = gamma_draw(rng, a, 1.0);
    const double y = gamma_draw(rng, b, 1.0);
    return x / (x + y);
}

}  // namespace bvsr

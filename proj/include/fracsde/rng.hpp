#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace fracsde::rng {

// Philox 4x32-10 counter-based generator. A draw is a pure function of
// (seed, stream, counter), so ensembles are reproducible independently of
// thread scheduling and can be split freely across workers.

namespace detail {

struct Block {
    std::uint32_t x[4];
};

inline Block philox4x32(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    constexpr std::uint32_t kMul0 = 0xD2511F53u;
    constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
    std::uint32_t k0 = static_cast<std::uint32_t>(seed);
    std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
    Block b{{static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(counter >> 32),
             static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)}};
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * b.x[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * b.x[2];
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        b = Block{{hi1 ^ b.x[1] ^ k0, lo1, hi0 ^ b.x[3] ^ k1, lo0}};
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return b;
}

inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t u = (static_cast<std::uint64_t>(hi) << 32) | lo;
    // 53 significant bits, strictly inside (0, 1)
    return (static_cast<double>(u >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace detail

// Uniform draw in (0, 1).
inline double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    const auto b = detail::philox4x32(seed, stream, counter);
    return detail::to_unit(b.x[0], b.x[1]);
}

// One pair of independent standard normals (Box-Muller on a single block).
inline std::pair<double, double> gaussian_pair(std::uint64_t seed, std::uint64_t stream,
                                               std::uint64_t counter) {
    const auto b = detail::philox4x32(seed, stream, counter);
    const double u1 = detail::to_unit(b.x[0], b.x[1]);
    const double u2 = detail::to_unit(b.x[2], b.x[3]);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * 3.141592653589793238462643383279503 * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

inline double gaussian(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return gaussian_pair(seed, stream, counter).first;
}

}  // namespace fracsde::rng

#pragma once

#include <array>
#include <cstdint>

namespace formcount {

// Philox4x32-10 counter-based generator: the stream is a pure function of
// (seed, index), so sample batches can be split across threads in any order
// and replayed bit-for-bit on any platform.
namespace philox {

inline std::array<std::uint32_t, 4> block(std::uint64_t seed, std::uint64_t counter) {
    constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    std::uint32_t c0 = static_cast<std::uint32_t>(counter);
    std::uint32_t c1 = static_cast<std::uint32_t>(counter >> 32);
    std::uint32_t c2 = 0, c3 = 0;
    std::uint32_t k0 = static_cast<std::uint32_t>(seed);
    std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(M0) * c0;
        const std::uint64_t p1 = static_cast<std::uint64_t>(M1) * c2;
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        c0 = hi1 ^ c1 ^ k0;
        c1 = lo1;
        c2 = hi0 ^ c3 ^ k1;
        c3 = lo0;
        k0 += W0;
        k1 += W1;
    }
    return {c0, c1, c2, c3};
}

inline std::uint32_t word(std::uint64_t seed, std::uint64_t index) {
    return block(seed, index >> 2)[index & 3];
}

// Uniform on (-1, 1), never exactly hitting the endpoints.
inline double uniform_pm1(std::uint64_t seed, std::uint64_t index) {
    const double u = (static_cast<double>(word(seed, index)) + 0.5) * 0x1p-32;
    return 2.0 * u - 1.0;
}

}  // namespace philox
}  // namespace formcount

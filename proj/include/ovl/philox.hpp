#pragma once

// Philox-4x32-10 counter-based generator (Salmon et al.'s constants).
//
// Every (key, counter) pair maps to an independent 128-bit block, so matrix
// entries can be drawn as pure functions of (seed, stream, trial, cell) with
// no generator state to carry around.  Two matrices that share a cell of the
// underlying array automatically see the same value.

#include <array>
#include <cstdint>

namespace ovl {

namespace detail {

inline void philox_round(std::array<uint32_t, 4>& x, uint32_t k0, uint32_t k1) {
    constexpr uint64_t M0 = 0xD2511F53ull, M1 = 0xCD9E8D57ull;
    const uint64_t p0 = M0 * x[0];
    const uint64_t p1 = M1 * x[2];
    const uint32_t hi0 = static_cast<uint32_t>(p0 >> 32), lo0 = static_cast<uint32_t>(p0);
    const uint32_t hi1 = static_cast<uint32_t>(p1 >> 32), lo1 = static_cast<uint32_t>(p1);
    x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
}

}  // namespace detail

// 128-bit block keyed by a 64-bit key and 128-bit counter.
inline std::array<uint32_t, 4> philox_block(uint64_t key, uint64_t ctr_lo, uint64_t ctr_hi) {
    constexpr uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    std::array<uint32_t, 4> x = {static_cast<uint32_t>(ctr_lo), static_cast<uint32_t>(ctr_lo >> 32),
                                 static_cast<uint32_t>(ctr_hi), static_cast<uint32_t>(ctr_hi >> 32)};
    uint32_t k0 = static_cast<uint32_t>(key), k1 = static_cast<uint32_t>(key >> 32);
    for (int r = 0; r < 10; ++r) {
        detail::philox_round(x, k0, k1);
        k0 += W0;
        k1 += W1;
    }
    return x;
}

// Uniform double in (0,1) from 64 bits (strictly positive, safe under log).
inline double u01_open(uint32_t hi, uint32_t lo) {
    const uint64_t bits = (static_cast<uint64_t>(hi) << 32) | lo;
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Two independent uniforms in (0,1) from one block.
struct UniformPair {
    double u1, u2;
};

inline UniformPair uniform_pair(uint64_t key, uint64_t ctr_lo, uint64_t ctr_hi) {
    const auto b = philox_block(key, ctr_lo, ctr_hi);
    return {u01_open(b[0], b[1]), u01_open(b[2], b[3])};
}

}

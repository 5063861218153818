#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace ssqec {

// Philox-4x32, the counter-based generator of Salmon et al. (SC'11).  Purely
// functional: the caller owns the counter layout, which makes every draw
// reproducible under any parallel schedule.
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key,
                                               unsigned rounds = 10) {
    constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    for (unsigned r = 0; r < rounds; ++r) {
        std::uint64_t p0 = std::uint64_t(M0) * ctr[0];
        std::uint64_t p1 = std::uint64_t(M1) * ctr[2];
        std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
        std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += W0;
        key[1] += W1;
    }
    return ctr;
}

// Deterministic per-event randomness: every draw is addressed by
// (trial, round, slot) under a (seed, stream) key, so results are identical
// no matter how trials are split across workers.
class CounterRng {
public:
    static constexpr std::uint32_t max_slot = (1u << 24) - 1;
    static constexpr std::uint32_t max_stream = 255;

    CounterRng(std::uint64_t seed, std::uint32_t stream)
        : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)}, stream_(stream) {
        if (stream > max_stream)
            throw std::invalid_argument("[rng] stream id beyond capacity");
    }

    std::uint64_t raw64(std::uint64_t trial, std::uint32_t round, std::uint32_t slot) const {
        if (slot > max_slot) throw std::invalid_argument("[rng] slot id beyond capacity");
        std::array<std::uint32_t, 4> ctr = {std::uint32_t(trial), std::uint32_t(trial >> 32),
                                            round, (stream_ << 24) | slot};
        auto out = philox4x32(ctr, key_);
        return std::uint64_t(out[0]) | (std::uint64_t(out[1]) << 32);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform(std::uint64_t trial, std::uint32_t round, std::uint32_t slot) const {
        return double(raw64(trial, round, slot) >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p, std::uint64_t trial, std::uint32_t round,
                   std::uint32_t slot) const {
        return uniform(trial, round, slot) < p;
    }

    // Integer in [0, n) by the multiply-shift map; bias below n * 2^-64.
    std::uint64_t bounded(std::uint64_t n, std::uint64_t trial, std::uint32_t round,
                          std::uint32_t slot) const {
        if (n == 0) throw std::invalid_argument("[rng] bounded draw from empty range");
        return std::uint64_t((static_cast<unsigned __int128>(raw64(trial, round, slot)) * n) >>
                             64);
    }

    std::uint64_t seed() const {
        return std::uint64_t(key_[0]) | (std::uint64_t(key_[1]) << 32);
    }
    std::uint32_t stream() const { return stream_; }

private:
    std::array<std::uint32_t, 2> key_;
    std::uint32_t stream_;
};

} // namespace ssqec

#include <doctest.h>

#include <cmath>

#include "ssqec/rng.hpp"

using namespace ssqec;

TEST_CASE("philox4x32-10 matches the published known-answer vectors") {
    // Reference vectors from the Random123 distribution (kat_vectors).
    auto z = philox4x32({0u, 0u, 0u, 0u}, {0u, 0u});
    CHECK(z[0] == 0x6627e8d5u);
    CHECK(z[1] == 0xe169c58du);
    CHECK(z[2] == 0xbc57ac4cu);
    CHECK(z[3] == 0x9b00dbd8u);

    auto f = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                        {0xffffffffu, 0xffffffffu});
    CHECK(f[0] == 0x408f276du);
    CHECK(f[1] == 0x41c83b0eu);
    CHECK(f[2] == 0xa20bc7c6u);
    CHECK(f[3] == 0x6d5451fdu);

    auto pi = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                         {0xa4093822u, 0x299f31d0u});
    CHECK(pi[0] == 0xd16cfe09u);
    CHECK(pi[1] == 0x94fdccebu);
    CHECK(pi[2] == 0x5001e420u);
    CHECK(pi[3] == 0x24126ea1u);
}

TEST_CASE("counter rng is a pure function of its address") {
    CounterRng a(0x123456789abcdef0ull, 3);
    CounterRng b(0x123456789abcdef0ull, 3);
    CHECK(a.raw64(7, 11, 13) == b.raw64(7, 11, 13));
    CHECK(a.uniform(7, 11, 13) == b.uniform(7, 11, 13));

    // Any coordinate change decorrelates the draw.
    CHECK(a.raw64(7, 11, 13) != a.raw64(8, 11, 13));
    CHECK(a.raw64(7, 11, 13) != a.raw64(7, 12, 13));
    CHECK(a.raw64(7, 11, 13) != a.raw64(7, 11, 14));
    CounterRng c(0x123456789abcdef0ull, 4);
    CHECK(a.raw64(7, 11, 13) != c.raw64(7, 11, 13));
    CounterRng d(0x123456789abcdef1ull, 3);
    CHECK(a.raw64(7, 11, 13) != d.raw64(7, 11, 13));
}

TEST_CASE("counter rng rejects out-of-range addresses") {
    CHECK_THROWS_AS(CounterRng(1, 256), std::invalid_argument);
    CounterRng r(1, 0);
    CHECK_THROWS_AS(r.raw64(0, 0, 1u << 24), std::invalid_argument);
    CHECK_THROWS_AS(r.bounded(0, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("uniform draws behave like U[0,1)") {
    CounterRng r(42, 0);
    double sum = 0.0, sum2 = 0.0;
    const std::size_t N = 20000;
    for (std::size_t i = 0; i < N; ++i) {
        double u = r.uniform(i, 0, 0);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
        sum2 += u * u;
    }
    double mean = sum / N;
    double var = sum2 / N - mean * mean;
    CHECK(std::abs(mean - 0.5) < 0.01);
    CHECK(std::abs(var - 1.0 / 12.0) < 0.01);
}

TEST_CASE("bounded draws cover their range uniformly") {
    CounterRng r(7, 1);
    const std::uint64_t n = 6;
    std::array<std::size_t, 6> counts{};
    const std::size_t N = 30000;
    for (std::size_t i = 0; i < N; ++i) {
        std::uint64_t v = r.bounded(n, i, 2, 5);
        REQUIRE(v < n);
        ++counts[v];
    }
    for (std::size_t k = 0; k < n; ++k) {
        double freq = double(counts[k]) / double(N);
        CHECK(std::abs(freq - 1.0 / 6.0) < 0.015);
    }
}

TEST_CASE("bernoulli frequency tracks its parameter") {
    CounterRng r(99, 0);
    std::size_t hits = 0;
    const std::size_t N = 40000;
    for (std::size_t i = 0; i < N; ++i)
        if (r.bernoulli(0.3, i, 5, 2)) ++hits;
    CHECK(std::abs(double(hits) / N - 0.3) < 0.01);
}

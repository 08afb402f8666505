#include <doctest.h>

#include <cmath>
#include <set>

#include "graphon/rng.hpp"

using namespace graphon;

TEST_SUITE_BEGIN("rng");

// Known-answer vectors for Philox4x32-10 from the Random123 distribution.
TEST_CASE("philox4x32 known answers") {
    using A4 = std::array<std::uint32_t, 4>;
    using A2 = std::array<std::uint32_t, 2>;

    CHECK(rng::philox4x32(A4{0, 0, 0, 0}, A2{0, 0}) ==
          A4{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(rng::philox4x32(A4{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                          A2{0xffffffffu, 0xffffffffu}) ==
          A4{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(rng::philox4x32(A4{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                          A2{0xa4093822u, 0x299f31d0u}) ==
          A4{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("counter interface is deterministic and collision free in practice") {
    CHECK(rng::word_at(7, 1, 2) == rng::word_at(7, 1, 2));
    CHECK(rng::word_at(7, 1, 2) != rng::word_at(7, 2, 1));
    CHECK(rng::word_at(7, 1, 2) != rng::word_at(8, 1, 2));

    std::set<std::uint64_t> seen;
    for (std::uint64_t a = 0; a < 100; ++a)
        for (std::uint64_t b = 0; b < 100; ++b) seen.insert(rng::word_at(3, a, b));
    CHECK(seen.size() == 10000);

    const double u = rng::unit_at(3, 5, 6);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
}

TEST_CASE("derive produces distinct substreams") {
    const auto a = rng::derive(42, rng::kTagLatent);
    const auto b = rng::derive(42, rng::kTagEdge);
    const auto c = rng::derive(43, rng::kTagLatent);
    CHECK(a != b);
    CHECK(a != c);
    CHECK(rng::derive(42, rng::kTagReplicate, 0) != rng::derive(42, rng::kTagReplicate, 1));
}

TEST_CASE("sequential stream equals the block outputs") {
    rng::Philox gen(0, 0);
    // counter (0,0,0,0), key (0,0) is the first KAT block.
    CHECK(gen.next_u32() == 0x6627e8d5u);
    CHECK(gen.next_u32() == 0xe169c58du);
    CHECK(gen.next_u32() == 0xbc57ac4cu);
    CHECK(gen.next_u32() == 0x9b00dbd8u);
    // Next block: counter (1,0,0,0).
    const auto block1 = rng::philox4x32({1, 0, 0, 0}, {0, 0});
    CHECK(gen.next_u32() == block1[0]);

    rng::Philox g1(9, 1), g2(9, 2);
    CHECK(g1.next_u64() != g2.next_u64());

    rng::Philox g3(9, 1);
    CHECK(g3.next_u32() == rng::philox4x32({0, 0, 1, 0}, {9, 0})[0]);
}

TEST_CASE("uniformity smoke test") {
    rng::Philox gen(123, 0);
    double sum = 0.0;
    const int trials = 20000;
    for (int i = 0; i < trials; ++i) {
        const double u = gen.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
    }
    // 4 sigma band around 1/2, sigma = 1/sqrt(12 trials).
    CHECK(std::abs(sum / trials - 0.5) < 4.0 / std::sqrt(12.0 * trials));
}

TEST_CASE("hash_tag separates op names") {
    CHECK(rng::hash_tag("t") != rng::hash_tag("t_ind"));
    CHECK(rng::hash_tag("") == 0xcbf29ce484222325ull);
}

TEST_SUITE_END();

#pragma once

#include <array>
#include <cstdint>

namespace graphon::rng {

// Philox4x32-10 block function (Salmon, Moraes, Dror, Shaw; SC'11).
// A 128-bit counter is encrypted under a 64-bit key; distinct counters give
// independent 128-bit outputs, so streams keyed by (seed, structural
// coordinates) never overlap and are scheduling independent.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// One 64-bit word from the block at counter (a, b) under `seed`.
std::uint64_t word_at(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

// Uniform double in [0,1) with 53 random bits, from the block at (a, b).
// This is the counter-style interface used for latents (a = vertex) and
// edges (a = i, b = j): no sequential state, identical results under any
// thread schedule.
double unit_at(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

// Derives an independent 64-bit subseed for a tagged substream (replicate
// index, call-site tag, ...). Composes: derive(derive(s, a), b) and
// derive(s, a') collide only at the 64-bit birthday bound.
std::uint64_t derive(std::uint64_t seed, std::uint64_t tag, std::uint64_t index = 0);

// Fixed substream tags used across the library.
inline constexpr std::uint64_t kTagLatent = 1;
inline constexpr std::uint64_t kTagEdge = 2;
inline constexpr std::uint64_t kTagMonteCarlo = 3;
inline constexpr std::uint64_t kTagReplicate = 4;

// FNV-1a, for deriving stable call-site tags from short strings.
std::uint64_t hash_tag(const char* text);

// Sequential stream view: counter = (stream : index), key = seed. Used by
// Monte Carlo loops; each (seed, stream) pair is an independent generator.
class Philox {
public:
    explicit Philox(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream) {}

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    // Uniform in [0,1), 53 bits.
    double next_unit();

private:
    void refill();

    std::uint64_t seed_ = 0;
    std::uint64_t stream_ = 0;
    std::uint64_t index_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int have_ = 0;  // unread words remaining in buffer_
};

}  // namespace graphon::rng

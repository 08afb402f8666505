#include "graphon/rng.hpp"

namespace graphon::rng {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kBump0 = 0x9E3779B9u;  // golden ratio
constexpr std::uint32_t kBump1 = 0xBB67AE85u;  // sqrt(3) - 1

inline void round_once(std::array<std::uint32_t, 4>& c,
                       const std::array<std::uint32_t, 2>& k) {
    const std::uint64_t p0 = std::uint64_t{kMul0} * c[0];
    const std::uint64_t p1 = std::uint64_t{kMul1} * c[2];
    c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0],
         static_cast<std::uint32_t>(p1),
         static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1],
         static_cast<std::uint32_t>(p0)};
}

inline std::uint32_t lo32(std::uint64_t x) { return static_cast<std::uint32_t>(x); }
inline std::uint32_t hi32(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) {
    for (int r = 0; r < 9; ++r) {
        round_once(counter, key);
        key[0] += kBump0;
        key[1] += kBump1;
    }
    round_once(counter, key);
    return counter;
}

std::uint64_t word_at(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    const auto out = philox4x32({lo32(a), hi32(a), lo32(b), hi32(b)},
                                {lo32(seed), hi32(seed)});
    return (std::uint64_t{out[1]} << 32) | out[0];
}

double unit_at(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return static_cast<double>(word_at(seed, a, b) >> 11) * 0x1.0p-53;
}

std::uint64_t derive(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    return word_at(seed, tag, ~index);  // ~index keeps derive() off the unit_at counters
}

std::uint64_t hash_tag(const char* text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const char* p = text; *p; ++p) {
        h ^= static_cast<unsigned char>(*p);
        h *= 0x100000001b3ull;
    }
    return h;
}

void Philox::refill() {
    buffer_ = philox4x32({lo32(index_), hi32(index_), lo32(stream_), hi32(stream_)},
                         {lo32(seed_), hi32(seed_)});
    ++index_;
    have_ = 4;
}

std::uint32_t Philox::next_u32() {
    if (have_ == 0) refill();
    return buffer_[static_cast<std::size_t>(4 - have_--)];
}

std::uint64_t Philox::next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
}

double Philox::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace graphon::rng

#pragma once

#include <cstdint>
#include <string_view>

namespace pacer {

// Counter-free splitmix64 engine. Cheap enough to seed once per ad request,
// which keeps every random decision addressable by (master seed, stream
// name, ids) instead of by draw order. That is what makes paired A/B runs
// see identical traffic and competitor draws regardless of which requests a
// strategy chooses to bid on.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
}  // namespace detail

// Deterministic seed derivation: FNV-1a over the stream name, then mixing
// rounds over the id words. Independent of std::hash so output is stable
// across standard libraries.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view name,
                                 std::uint64_t a = 0, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char ch : name) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001B3ULL;
    }
    h = detail::mix64(h ^ master);
    h = detail::mix64(h ^ a);
    h = detail::mix64(h ^ b);
    h = detail::mix64(h ^ c);
    return h;
}

inline SplitMix64 named_stream(std::uint64_t master, std::string_view name,
                               std::uint64_t a = 0, std::uint64_t b = 0,
                               std::uint64_t c = 0) {
    return SplitMix64(derive_seed(master, name, a, b, c));
}

// Uniform in [0,1) from one engine draw.
inline double uniform01(SplitMix64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace pacer

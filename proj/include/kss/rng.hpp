#pragma once

#include <cstdint>
#include <string_view>

namespace kss {

// Deterministic 64-bit generator (splitmix64 finalizer).  Every randomized
// routine takes an explicit stream so runs are reproducible bit for bit from
// a single root seed; independent streams are derived by hashing a textual
// tag and integer coordinates into the state, never by sharing one stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Debiased bounded draw (Lemire); bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t x = next();
            unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
            if (static_cast<std::uint64_t>(m) >= threshold)
                return static_cast<std::uint64_t>(m >> 64);
        }
    }

    // Uniform in [lo, hi] inclusive.
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
        return lo + below(hi - lo + 1);
    }

    // Real in [0, 1) with 53 random bits.
    double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}
} // namespace detail

// Derive a child stream from (seed, tag, i, j).  The tag is FNV-1a hashed so
// distinct call sites get statistically independent streams and the mapping
// is stable across platforms.
inline Rng derive_stream(std::uint64_t seed, std::string_view tag,
                         std::uint64_t i = 0, std::uint64_t j = 0) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    std::uint64_t s = detail::mix64(seed ^ h);
    s = detail::mix64(s ^ (0x9e3779b97f4a7c15ull + i));
    s = detail::mix64(s ^ (0xc2b2ae3d27d4eb4full + j));
    return Rng(s);
}

} // namespace kss

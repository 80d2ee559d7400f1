#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace kss {

// Number-theoretic transform over Z_p with p = 998244353 = 119 * 2^23 + 1.
// Subset counts in this project stay far below p (cell budgets cap them at
// 2^28), so convolving 0/1 indicator arrays mod p recovers the exact support.
namespace ntt {

inline constexpr std::uint32_t kMod = 998244353;
inline constexpr std::uint32_t kRoot = 3;
inline constexpr std::uint32_t kMaxLogLen = 23;

std::uint32_t pow_mod(std::uint32_t base, std::uint64_t exp);
std::uint32_t inv_mod(std::uint32_t a);

// In-place radix-2 transform; len must be a power of two <= 2^23.
// The inverse applies the 1/len scaling itself.
void transform(std::uint32_t* data, std::uint32_t len, bool inverse);

// Apply the 1-D transform along every axis of a dense row-major array whose
// axis lengths are the (power-of-two) entries of `lengths`.
void transform_multi(std::vector<std::uint32_t>& data,
                     std::span<const std::uint32_t> lengths, bool inverse);

inline std::uint32_t next_pow2(std::uint64_t v) {
    std::uint32_t n = 1;
    while (n < v) n <<= 1;
    return n;
}

} // namespace ntt
} // namespace kss

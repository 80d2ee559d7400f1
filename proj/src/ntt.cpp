#include "kss/ntt.hpp"

#include <bit>
#include <cassert>

namespace kss::ntt {

std::uint32_t pow_mod(std::uint32_t base, std::uint64_t exp) {
    std::uint64_t r = 1, b = base % kMod;
    while (exp) {
        if (exp & 1) r = r * b % kMod;
        b = b * b % kMod;
        exp >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

std::uint32_t inv_mod(std::uint32_t a) { return pow_mod(a, kMod - 2); }

void transform(std::uint32_t* a, std::uint32_t len, bool inverse) {
    assert(std::has_single_bit(len) && len <= (1u << kMaxLogLen));
    if (len == 1) return;

    // Bit-reversal permutation.
    for (std::uint32_t i = 1, j = 0; i < len; ++i) {
        std::uint32_t bit = len >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::uint32_t half = 1; half < len; half <<= 1) {
        const std::uint32_t w_step =
            pow_mod(inverse ? inv_mod(kRoot) : kRoot, (kMod - 1) / (2 * half));
        for (std::uint32_t start = 0; start < len; start += 2 * half) {
            std::uint64_t w = 1;
            for (std::uint32_t i = 0; i < half; ++i) {
                const std::uint32_t u = a[start + i];
                const std::uint32_t v = static_cast<std::uint32_t>(w * a[start + half + i] % kMod);
                a[start + i] = u + v < kMod ? u + v : u + v - kMod;
                a[start + half + i] = u >= v ? u - v : u + kMod - v;
                w = w * w_step % kMod;
            }
        }
    }

    if (inverse) {
        const std::uint64_t scale = inv_mod(len);
        for (std::uint32_t i = 0; i < len; ++i)
            a[i] = static_cast<std::uint32_t>(a[i] * scale % kMod);
    }
}

void transform_multi(std::vector<std::uint32_t>& data,
                     std::span<const std::uint32_t> lengths, bool inverse) {
    std::uint64_t total = 1;
    for (std::uint32_t len : lengths) total *= len;
    assert(total == data.size());

    std::vector<std::uint32_t> line;
    std::uint64_t stride = 1; // elements between consecutive entries along the axis
    for (std::size_t ax = lengths.size(); ax-- > 0;) {
        const std::uint32_t len = lengths[ax];
        if (len > 1) {
            const std::uint64_t block = stride * len;
            if (stride == 1) {
                for (std::uint64_t base = 0; base < total; base += block)
                    transform(data.data() + base, len, inverse);
            } else {
                line.resize(len);
                for (std::uint64_t base = 0; base < total; base += block) {
                    for (std::uint64_t off = 0; off < stride; ++off) {
                        std::uint32_t* p = data.data() + base + off;
                        for (std::uint32_t i = 0; i < len; ++i) line[i] = p[i * stride];
                        transform(line.data(), len, inverse);
                        for (std::uint32_t i = 0; i < len; ++i) p[i * stride] = line[i];
                    }
                }
            }
        }
        stride *= len;
    }
}

} // namespace kss::ntt

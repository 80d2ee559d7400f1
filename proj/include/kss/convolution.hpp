#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kss/instance.hpp"
#include "kss/tensor.hpp"

namespace kss {

// How to realize one capped sumset.  Auto prices the exact strategies and
// picks the cheapest; the others force a specific one (mainly for tests and
// benchmarks).  Every strategy computes the exact support: sparse pair
// enumeration and shift-OR are exact by construction, and the transform path
// is exact because per-cell pair counts stay below the NTT modulus.
enum class SumsetStrategy { Auto, SparsePairs, ShiftOr, Ntt };

struct ConvStats {
    std::uint64_t convolutions = 0;  // capped sumsets performed
    std::uint64_t sparse_calls = 0;
    std::uint64_t shift_calls = 0;
    std::uint64_t ntt_calls = 0;
    std::uint64_t peak_cells = 0;    // largest tensor or transform buffer touched
};

struct SumsetOptions {
    SumsetStrategy strategy = SumsetStrategy::Auto;
    std::uint64_t max_cells = kDefaultMaxCells;
    ConvStats* stats = nullptr;
};

// Per-axis transform lengths for convolving tensors with caps a_caps and
// b_caps into a result truncated at out_caps.  Each length is the next power
// of two at or above len(a) + len(b) - 1 after truncating the inputs to
// out_caps, so cyclic wrap-around can never land inside the kept region.
struct ConvPlan {
    std::vector<std::uint32_t> lengths;

    std::uint64_t total() const {
        std::uint64_t n = 1;
        for (std::uint32_t len : lengths) n *= len;
        return n;
    }

    static ConvPlan make(std::span<const std::uint32_t> a_caps,
                         std::span<const std::uint32_t> b_caps,
                         std::span<const std::uint32_t> out_caps);
};

// The t-capped sumset A (+) B = { x + y : x in A u {0}, y in B u {0} } with
// every coordinate clamped to `caps` (cells beyond any cap are dropped).
// Both operands implicitly contain the origin, so the result always does.
// The output tensor has caps exactly `caps`.
SumTensor capped_sumset(const SumTensor& a, const SumTensor& b,
                        std::span<const std::uint32_t> caps,
                        const SumsetOptions& opts = {});

// Reference implementation: enumerate every pair of true cells (plus the
// implicit origins) and mark the in-range sums.  Used as the oracle the
// adaptive strategies are checked against.
SumTensor naive_sumset(const SumTensor& a, const SumTensor& b,
                       std::span<const std::uint32_t> caps);

} // namespace kss

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kss/convolution.hpp"
#include "kss/instance.hpp"
#include "kss/rng.hpp"
#include "kss/tensor.hpp"

namespace kss {

struct RandOptions {
    std::uint64_t max_cells = kDefaultMaxCells;
    SumsetStrategy strategy = SumsetStrategy::Auto;
    ConvStats* stats = nullptr;
};

// One random coloring: element e lands in bucket assignment[e], drawn
// i.i.d. uniform from [0, bucket_count).
struct PartitionScheme {
    std::uint32_t bucket_count = 0;
    std::vector<std::uint32_t> assignment;
    std::uint64_t seed = 0;

    static PartitionScheme draw(std::size_t n, std::uint32_t buckets, std::uint64_t seed);

    std::vector<std::vector<std::uint64_t>> group(std::span<const std::uint64_t> z) const;

    // True iff within every listed index set, no two members share a bucket.
    bool splits(std::span<const std::vector<std::uint32_t>> subsets) const;
};

// Dyadic bands of (0, t]: band i < last holds z with t/2^(i+1) < z <= t/2^i,
// the last band holds everything at or below its upper edge.  Any subset of
// band i summing to at most t has fewer than size_bound[i] = 2^(i+1) members.
struct LayerDecomposition {
    std::vector<std::vector<std::uint64_t>> layers;
    std::vector<std::uint64_t> size_bounds;

    static LayerDecomposition make(std::span<const std::uint64_t> z, std::uint64_t t);
};

// Rounds needed so that missing a 4^-k per-round split chance r times has
// probability at most delta: ceil(log_beta(1/delta)), beta = 4^k/(4^k - 1).
std::uint64_t color_coding_rounds(std::size_t k, double delta);

// Monte Carlo sum tensor for families of small subsets: r rounds of coloring
// Z into c^2 buckets, lifting each bucket to single placements on the k axes,
// and folding with capped sumsets.  Sound always; complete for families whose
// subsets have at most c elements each with probability >= 1 - delta.
SumTensor color_coding(std::span<const std::uint64_t> z, std::uint32_t t,
                       std::uint32_t c, std::size_t k, double delta,
                       std::uint64_t seed, const RandOptions& opts = {});

// Layer solver: pieces of Z are solved by color_coding under a tighter bound
// gamma and recombined in a binary tree of capped sumsets.  Complete with
// probability >= 1 - delta for l-layer inputs (subsets of interest have
// fewer than l members); delta must lie in (0, 1/2^(k+1)].
SumTensor color_coding_layer(std::span<const std::uint64_t> z, std::uint32_t t,
                             std::uint64_t l, std::size_t k, double delta,
                             std::uint64_t seed, const RandOptions& opts = {});

// Full randomized engine: dyadic layer decomposition, one color_coding_layer
// call per band, results folded with capped sumsets.
SumTensor k_subset_sum_rand(std::span<const std::uint64_t> z, std::uint32_t t,
                            std::size_t k, double delta, std::uint64_t seed,
                            const RandOptions& opts = {});

// Cardinality-aware color coding: placements carry a unit marker on the
// paired count axis, output cells are (sum vector, size vector) with sizes
// clamped at card_cap.
SumTensor card_color_coding(std::span<const std::uint64_t> z, std::uint32_t t,
                            std::uint32_t c, std::uint32_t card_cap, std::size_t k,
                            double delta, std::uint64_t seed, const RandOptions& opts = {});

// Cardinality-aware layer solver with the size bound c playing the layer
// parameter; no dyadic decomposition is needed because c already bounds the
// subsets of interest.  This is the randomized engine for constrained runs.
SumTensor card_color_coding_layer(std::span<const std::uint64_t> z, std::uint32_t t,
                                  std::uint32_t c, std::size_t k, double delta,
                                  std::uint64_t seed, const RandOptions& opts = {});

// Engine entry point mirroring solve_deterministic: uniform cap t = max
// target; cardinality axes iff constrained (card cap = max requested size).
SumTensor solve_randomized(const ValidatedInstance& v, double delta,
                           std::uint64_t seed, const RandOptions& opts = {});

} // namespace kss

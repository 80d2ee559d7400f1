#include "kss/randomized.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace kss {

namespace {

constexpr const char* kPartTag = "bucket-partition";
constexpr const char* kPieceTag = "layer-piece";
constexpr const char* kLayerTag = "dyadic-layer";

std::uint64_t ceil_log2(std::uint64_t n) {
    return n <= 1 ? 0 : std::bit_width(n - 1);
}

std::uint64_t pow2_at_least(long double v) {
    std::uint64_t m = 1;
    while (static_cast<long double>(m) < v) m <<= 1;
    return m;
}

SumsetOptions conv_opts(const RandOptions& opts) {
    return SumsetOptions{opts.strategy, opts.max_cells, opts.stats};
}

// Failure bound for the layer solvers and the full algorithm.
void check_delta(std::size_t k, double delta) {
    const double limit =
        1.0 / std::pow(2.0, static_cast<double>(std::min<std::size_t>(k, 62)) + 1);
    if (!(delta > 0.0) || delta > limit)
        fail(ErrorCode::DeltaOutOfRange, "delta must lie in (0, 1/2^(k+1)]");
}

// Lift one bucket to single placements: z on sum axis i (and, when counting,
// a 1 on the paired count axis).  The implicit origin of the sumset covers
// "take nothing from this bucket".
void lift_bucket(SumTensor& out, std::span<const std::uint64_t> bucket, std::size_t k,
                 bool with_cards) {
    const std::size_t rank = out.rank();
    std::vector<std::uint32_t> idx(rank, 0);
    for (std::uint64_t z : bucket) {
        for (std::size_t i = 0; i < k; ++i) {
            if (z > out.caps()[i]) continue;
            if (with_cards && out.caps()[k + i] < 1) continue;
            std::fill(idx.begin(), idx.end(), 0);
            idx[i] = static_cast<std::uint32_t>(z);
            if (with_cards) idx[k + i] = 1;
            out.set(std::span<const std::uint32_t>(idx.data(), rank));
        }
    }
}

// Shared body of color_coding and card_color_coding.
SumTensor color_coding_impl(std::span<const std::uint64_t> z, std::uint32_t t,
                            std::uint32_t c, std::size_t k, double delta,
                            std::uint64_t seed, bool with_cards, std::uint32_t card_cap,
                            const RandOptions& opts) {
    if (k == 0) fail(ErrorCode::BadArgument, "need at least one subset");
    if (!(delta > 0.0 && delta < 1.0))
        fail(ErrorCode::DeltaOutOfRange, "delta must lie in (0, 1)");

    std::vector<std::uint32_t> caps(k, t);
    if (with_cards) caps.insert(caps.end(), k, card_cap);
    checked_cell_count(caps, opts.max_cells);
    const auto fresh = [&] {
        return with_cards
                   ? SumTensor::with_cards(std::vector<std::uint32_t>(k, t),
                                           std::vector<std::uint32_t>(k, card_cap))
                   : SumTensor::sums(std::vector<std::uint32_t>(caps));
    };

    SumTensor result = fresh();
    result.set_origin();
    // c == 0 admits only empty subsets, i.e. just the all-zero family.
    if (z.empty() || c == 0) return result;

    const std::uint64_t rounds = color_coding_rounds(k, delta);
    const std::uint32_t buckets = c * c;
    SumTensor lifted = fresh();
    for (std::uint64_t round = 0; round < rounds; ++round) {
        const auto scheme = PartitionScheme::draw(
            z.size(), buckets, derive_stream(seed, kPartTag, round).state());
        SumTensor folded = fresh();
        folded.set_origin();
        for (const auto& bucket : scheme.group(z)) {
            if (bucket.empty()) continue;
            lifted.clear();
            lift_bucket(lifted, bucket, k, with_cards);
            folded = capped_sumset(folded, lifted, caps, conv_opts(opts));
        }
        result.or_with(folded);
    }
    return result;
}

// Shared body of the two layer solvers.  `l` bounds the subset sizes of
// interest, `card_cap` is zero for the plain variant.
SumTensor layer_impl(std::span<const std::uint64_t> z, std::uint32_t t, std::uint64_t l,
                     std::size_t k, double delta, std::uint64_t seed, bool with_cards,
                     std::uint32_t card_cap, const RandOptions& opts) {
    if (k == 0) fail(ErrorCode::BadArgument, "need at least one subset");
    check_delta(k, delta);
    if (l == 0) l = 1;

    const long double log_ratio = std::log2(static_cast<long double>(l) / delta);
    const auto direct = [&](std::uint32_t size_bound, double d, std::uint64_t s) {
        return with_cards ? card_color_coding(z, t, size_bound, card_cap, k, d, s, opts)
                          : color_coding(z, t, size_bound, k, d, s, opts);
    };
    if (static_cast<long double>(l) < log_ratio)
        return direct(static_cast<std::uint32_t>(l), delta, seed);

    const std::uint64_t m = pow2_at_least(static_cast<long double>(l) / log_ratio);
    const std::uint32_t gamma = static_cast<std::uint32_t>(std::ceil(6.0L * log_ratio));
    const std::uint64_t t_inner64 =
        (2ull * gamma * t + l - 1) / l; // ceil(2*gamma*t / l)
    // sums only grow, so piece sums beyond t can never land inside the final
    // box; the inner bound matters only when it is tighter than t
    const std::uint32_t t_inner =
        static_cast<std::uint32_t>(std::min<std::uint64_t>(t_inner64, t));
    const double inner_delta = delta / static_cast<double>(l);

    const auto scheme = PartitionScheme::draw(
        z.size(), static_cast<std::uint32_t>(m), derive_stream(seed, kPartTag).state());
    auto pieces_elems = scheme.group(z);

    std::vector<SumTensor> pieces;
    pieces.reserve(m);
    for (std::uint64_t j = 0; j < m; ++j) {
        const std::uint64_t piece_seed = derive_stream(seed, kPieceTag, j).state();
        if (with_cards)
            pieces.push_back(card_color_coding(pieces_elems[j], t_inner,
                                               gamma, std::min(gamma, card_cap), k,
                                               inner_delta, piece_seed, opts));
        else
            pieces.push_back(color_coding(pieces_elems[j], t_inner, gamma, k,
                                          inner_delta, piece_seed, opts));
    }

    for (std::uint64_t width = 2; width <= m; width <<= 1) {
        // a node spanning `width` pieces holds sums up to width * t_inner,
        // though capping at t early never discards a sum we could keep
        const std::uint64_t lvl =
            std::min<std::uint64_t>(t, width * static_cast<std::uint64_t>(t_inner));
        std::vector<std::uint32_t> caps(k, static_cast<std::uint32_t>(lvl));
        if (with_cards) caps.insert(caps.end(), k, card_cap);
        for (std::uint64_t j = 0; 2 * j + 1 < pieces.size(); ++j)
            pieces[j] = capped_sumset(pieces[2 * j], pieces[2 * j + 1], caps, conv_opts(opts));
        pieces.resize(pieces.size() / 2);
    }

    std::vector<std::uint32_t> final_caps(k, t);
    if (with_cards) final_caps.insert(final_caps.end(), k, card_cap);
    return pieces.front().resized(final_caps);
}

} // namespace

PartitionScheme PartitionScheme::draw(std::size_t n, std::uint32_t buckets,
                                      std::uint64_t seed) {
    if (buckets == 0) fail(ErrorCode::BadArgument, "need at least one bucket");
    PartitionScheme scheme;
    scheme.bucket_count = buckets;
    scheme.seed = seed;
    scheme.assignment.resize(n);
    Rng rng(seed);
    for (std::size_t e = 0; e < n; ++e)
        scheme.assignment[e] = static_cast<std::uint32_t>(rng.below(buckets));
    return scheme;
}

std::vector<std::vector<std::uint64_t>> PartitionScheme::group(
    std::span<const std::uint64_t> z) const {
    std::vector<std::vector<std::uint64_t>> buckets(bucket_count);
    for (std::size_t e = 0; e < z.size(); ++e) buckets[assignment[e]].push_back(z[e]);
    return buckets;
}

bool PartitionScheme::splits(std::span<const std::vector<std::uint32_t>> subsets) const {
    std::vector<bool> used(bucket_count);
    for (const auto& subset : subsets) {
        std::fill(used.begin(), used.end(), false);
        for (std::uint32_t e : subset) {
            if (used[assignment[e]]) return false;
            used[assignment[e]] = true;
        }
    }
    return true;
}

LayerDecomposition LayerDecomposition::make(std::span<const std::uint64_t> z,
                                            std::uint64_t t) {
    LayerDecomposition out;
    const std::uint64_t bands = std::max<std::uint64_t>(1, ceil_log2(z.size()));
    out.layers.resize(bands);
    out.size_bounds.resize(bands);
    for (std::uint64_t i = 0; i < bands; ++i) out.size_bounds[i] = 2ull << i;
    for (std::uint64_t v : z) {
        if (v > t) continue; // unusable under cap t
        // band i (0-based): t/2^(i+1) < v <= t/2^i; the last band keeps the
        // lower comparison only.  Exact integer forms avoid any division.
        for (std::uint64_t i = 0; i < bands; ++i) {
            const bool above_floor =
                i + 1 == bands ||
                static_cast<unsigned __int128>(v) << (i + 1) > t;
            const bool below_ceil = static_cast<unsigned __int128>(v) << i <= t;
            if (above_floor && below_ceil) {
                out.layers[i].push_back(v);
                break;
            }
        }
    }
    return out;
}

std::uint64_t color_coding_rounds(std::size_t k, double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        fail(ErrorCode::DeltaOutOfRange, "delta must lie in (0, 1)");
    const long double four_k = std::pow(4.0L, static_cast<long double>(std::min<std::size_t>(k, 30)));
    const long double beta = four_k / (four_k - 1.0L);
    const long double r = std::log(1.0L / static_cast<long double>(delta)) / std::log(beta);
    return static_cast<std::uint64_t>(std::ceil(r));
}

SumTensor color_coding(std::span<const std::uint64_t> z, std::uint32_t t,
                       std::uint32_t c, std::size_t k, double delta,
                       std::uint64_t seed, const RandOptions& opts) {
    return color_coding_impl(z, t, c, k, delta, seed, false, 0, opts);
}

SumTensor card_color_coding(std::span<const std::uint64_t> z, std::uint32_t t,
                            std::uint32_t c, std::uint32_t card_cap, std::size_t k,
                            double delta, std::uint64_t seed, const RandOptions& opts) {
    return color_coding_impl(z, t, c, k, delta, seed, true, card_cap, opts);
}

SumTensor color_coding_layer(std::span<const std::uint64_t> z, std::uint32_t t,
                             std::uint64_t l, std::size_t k, double delta,
                             std::uint64_t seed, const RandOptions& opts) {
    return layer_impl(z, t, l, k, delta, seed, false, 0, opts);
}

SumTensor card_color_coding_layer(std::span<const std::uint64_t> z, std::uint32_t t,
                                  std::uint32_t c, std::size_t k, double delta,
                                  std::uint64_t seed, const RandOptions& opts) {
    if (c == 0) {
        // Only empty subsets are allowed; the origin answers every question.
        if (k == 0) fail(ErrorCode::BadArgument, "need at least one subset");
        check_delta(k, delta);
        SumTensor out = SumTensor::with_cards(std::vector<std::uint32_t>(k, t),
                                              std::vector<std::uint32_t>(k, 0));
        out.set_origin();
        return out;
    }
    return layer_impl(z, t, c, k, delta, seed, true, c, opts);
}

SumTensor k_subset_sum_rand(std::span<const std::uint64_t> z, std::uint32_t t,
                            std::size_t k, double delta, std::uint64_t seed,
                            const RandOptions& opts) {
    if (k == 0) fail(ErrorCode::BadArgument, "need at least one subset");
    check_delta(k, delta);
    const std::vector<std::uint32_t> caps(k, t);
    checked_cell_count(caps, opts.max_cells);
    SumTensor acc = SumTensor::sums(std::vector<std::uint32_t>(caps));
    acc.set_origin();
    if (z.empty()) return acc;

    const LayerDecomposition bands = LayerDecomposition::make(z, t);
    const double band_delta = delta / static_cast<double>(bands.layers.size());
    for (std::size_t i = 0; i < bands.layers.size(); ++i) {
        if (bands.layers[i].empty()) continue;
        const SumTensor si =
            color_coding_layer(bands.layers[i], t, bands.size_bounds[i], k, band_delta,
                               derive_stream(seed, kLayerTag, i).state(), opts);
        acc = capped_sumset(acc, si, caps, conv_opts(opts));
    }
    return acc;
}

SumTensor solve_randomized(const ValidatedInstance& v, double delta,
                           std::uint64_t seed, const RandOptions& opts) {
    const Instance& inst = v.instance;
    const std::uint32_t t = static_cast<std::uint32_t>(inst.max_target());
    if (!inst.constrained())
        return k_subset_sum_rand(inst.elements, t, inst.k(), delta, seed, opts);
    std::uint32_t c = 0;
    for (std::uint64_t ci : *inst.cardinalities)
        c = std::max(c, static_cast<std::uint32_t>(ci));
    return card_color_coding_layer(inst.elements, t, c, inst.k(), delta, seed, opts);
}

} // namespace kss

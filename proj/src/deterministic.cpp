#include "kss/deterministic.hpp"

#include <algorithm>
#include <cmath>

namespace kss {

namespace {

std::uint32_t clamp_b(long double raw, std::size_t n) {
    if (!(raw >= 1.0L)) return 1;
    const long double upper = static_cast<long double>(n);
    const long double value = std::min(raw, upper);
    return static_cast<std::uint32_t>(std::max(1.0L, std::floor(value)));
}

// Caps for one disjoint_sc node: sums can reach at most the subtree total,
// counts at most the subtree size.
std::vector<std::uint32_t> node_caps(std::span<const std::uint64_t> q,
                                     std::uint32_t sum_cap, std::size_t k,
                                     std::uint32_t card_cap) {
    unsigned __int128 total = 0;
    for (std::uint64_t v : q) total += v;
    const std::uint32_t s =
        static_cast<std::uint32_t>(std::min<unsigned __int128>(sum_cap, total));
    const std::uint32_t c =
        static_cast<std::uint32_t>(std::min<std::uint64_t>(card_cap, q.size()));
    std::vector<std::uint32_t> caps(k, s);
    caps.insert(caps.end(), k, c);
    return caps;
}

SumTensor disjoint_sc_rec(std::span<const std::uint64_t> q, std::uint32_t sum_cap,
                          std::size_t k, std::uint32_t card_cap, const DetOptions& opts) {
    const std::vector<std::uint32_t> caps = node_caps(q, sum_cap, k, card_cap);
    if (q.size() <= 1) {
        SumTensor leaf =
            SumTensor::with_cards(std::vector<std::uint32_t>(caps.begin(), caps.begin() + k),
                                  std::vector<std::uint32_t>(caps.begin() + k, caps.end()));
        leaf.set_origin();
        if (q.size() == 1) {
            const std::uint64_t z = q[0];
            std::vector<std::uint32_t> idx(2 * k, 0);
            for (std::size_t i = 0; i < k; ++i) {
                if (z > caps[i] || caps[k + i] < 1) continue;
                std::fill(idx.begin(), idx.end(), 0);
                idx[i] = static_cast<std::uint32_t>(z);
                idx[k + i] = 1;
                leaf.set(std::span<const std::uint32_t>(idx.data(), idx.size()));
            }
        }
        return leaf;
    }
    const std::size_t half = q.size() / 2;
    const SumTensor left = disjoint_sc_rec(q.first(half), sum_cap, k, card_cap, opts);
    const SumTensor right = disjoint_sc_rec(q.subspan(half), sum_cap, k, card_cap, opts);
    SumsetOptions sopts{opts.strategy, opts.max_cells, opts.stats};
    return capped_sumset(left, right, caps, sopts);
}

// Shared frame for both plain and cardinality-constrained decompositions:
// bucket z by residue mod b, solve each class over quotients, re-expand and
// fold.  expand(cell, l, out) maps one (quotient vector, count vector) cell
// of a class solution back to real sums.
template <typename Expand>
SumTensor classes_fold(std::span<const std::uint64_t> z, std::uint32_t b,
                       std::uint32_t t, std::size_t k, std::uint32_t card_cap,
                       const SumTensor& seed, std::span<const std::uint32_t> fold_caps,
                       const DetOptions& opts, Expand&& expand) {
    std::vector<std::vector<std::uint64_t>> classes(b);
    for (std::uint64_t v : z) classes[v % b].push_back(v);

    SumsetOptions sopts{opts.strategy, opts.max_cells, opts.stats};
    SumTensor acc = seed;
    for (std::uint32_t l = 0; l < b; ++l) {
        if (classes[l].empty()) continue;
        std::vector<std::uint64_t> quotients;
        quotients.reserve(classes[l].size());
        for (std::uint64_t v : classes[l]) quotients.push_back(v / b);
        const std::uint32_t class_cards =
            std::min<std::uint32_t>(card_cap, static_cast<std::uint32_t>(quotients.size()));
        const SumTensor solved = disjoint_sc_rec(quotients, t / b, k, class_cards, opts);

        SumTensor expanded(std::vector<std::uint32_t>(fold_caps.begin(), fold_caps.end()),
                           seed.roles());
        solved.for_each_true([&](std::span<const std::uint32_t> cell) {
            expand(cell, l, expanded);
        });
        expanded.set_origin();
        acc = capped_sumset(acc, expanded, fold_caps, sopts);
    }
    return acc;
}

} // namespace

std::uint32_t choose_b(std::size_t n, std::size_t k) {
    if (n <= 1) return 1;
    const long double nn = static_cast<long double>(n);
    const long double raw =
        std::pow(std::pow(nn, static_cast<long double>(k)) * std::log2(nn),
                 1.0L / static_cast<long double>(k + 1));
    return clamp_b(raw, n);
}

std::uint32_t choose_b_card(std::size_t n, std::size_t k, std::uint32_t c) {
    if (n <= 1 || c == 0) return 1;
    const long double nn = static_cast<long double>(n);
    const long double raw = std::pow(
        std::pow(nn, static_cast<long double>(k)) * std::log2(nn) /
            std::pow(static_cast<long double>(c), static_cast<long double>(k)),
        1.0L / static_cast<long double>(k + 1));
    return clamp_b(raw, n);
}

SumTensor disjoint_sc(std::span<const std::uint64_t> q, std::uint32_t sum_cap,
                      std::size_t k, std::uint32_t card_cap, const DetOptions& opts) {
    if (k == 0) fail(ErrorCode::BadArgument, "need at least one subset");
    // The recursion works over caps shrunk to the subtree totals; widen the
    // root back to the box the caller asked for.
    std::vector<std::uint32_t> caps(k, sum_cap);
    caps.insert(caps.end(), k, card_cap);
    return disjoint_sc_rec(q, sum_cap, k, card_cap, opts).resized(caps);
}

SumTensor disjoint_ss(std::span<const std::uint64_t> z, std::uint32_t t,
                      std::size_t k, const DetOptions& opts) {
    if (k == 0) fail(ErrorCode::BadArgument, "need at least one subset");
    const std::vector<std::uint32_t> caps(k, t);
    checked_cell_count(caps, opts.max_cells);
    SumTensor seed = SumTensor::sums(caps);
    seed.set_origin();
    if (z.empty()) return seed;

    const std::uint32_t b =
        opts.force_b ? std::clamp<std::uint32_t>(*opts.force_b, 1,
                                                 static_cast<std::uint32_t>(z.size()))
                     : choose_b(z.size(), k);
    const std::uint32_t n_cap = static_cast<std::uint32_t>(z.size());
    std::vector<std::uint32_t> sums(k);
    return classes_fold(
        z, b, t, k, n_cap, seed, caps, opts,
        [&](std::span<const std::uint32_t> cell, std::uint32_t l, SumTensor& out) {
            for (std::size_t i = 0; i < k; ++i) {
                const std::uint64_t s = static_cast<std::uint64_t>(cell[i]) * b +
                                        static_cast<std::uint64_t>(cell[k + i]) * l;
                if (s > t) return;
                sums[i] = static_cast<std::uint32_t>(s);
            }
            out.set(std::span<const std::uint32_t>(sums.data(), k));
        });
}

SumTensor card_disjoint_ss(std::span<const std::uint64_t> z, std::uint32_t t,
                           std::uint32_t c, std::size_t k, const DetOptions& opts) {
    if (k == 0) fail(ErrorCode::BadArgument, "need at least one subset");
    std::vector<std::uint32_t> caps(k, t);
    caps.insert(caps.end(), k, c);
    checked_cell_count(caps, opts.max_cells);
    SumTensor seed = SumTensor::with_cards(std::vector<std::uint32_t>(k, t),
                                           std::vector<std::uint32_t>(k, c));
    seed.set_origin();
    if (z.empty() || c == 0) return seed;

    const std::uint32_t b =
        opts.force_b ? std::clamp<std::uint32_t>(*opts.force_b, 1,
                                                 static_cast<std::uint32_t>(z.size()))
                     : choose_b_card(z.size(), k, c);
    std::vector<std::uint32_t> idx(2 * k);
    return classes_fold(
        z, b, t, k, c, seed, caps, opts,
        [&](std::span<const std::uint32_t> cell, std::uint32_t l, SumTensor& out) {
            for (std::size_t i = 0; i < k; ++i) {
                const std::uint64_t s = static_cast<std::uint64_t>(cell[i]) * b +
                                        static_cast<std::uint64_t>(cell[k + i]) * l;
                if (s > t) return;
                idx[i] = static_cast<std::uint32_t>(s);
                idx[k + i] = cell[k + i];
            }
            out.set(std::span<const std::uint32_t>(idx.data(), idx.size()));
        });
}

SumTensor solve_deterministic(const ValidatedInstance& v, const DetOptions& opts) {
    const Instance& inst = v.instance;
    const std::uint32_t t = static_cast<std::uint32_t>(inst.max_target());
    if (!inst.constrained())
        return disjoint_ss(inst.elements, t, inst.k(), opts);
    std::uint32_t c = 0;
    for (std::uint64_t ci : *inst.cardinalities)
        c = std::max(c, static_cast<std::uint32_t>(ci));
    return card_disjoint_ss(inst.elements, t, c, inst.k(), opts);
}

} // namespace kss

#pragma once

#include <optional>
#include <span>

#include "kss/convolution.hpp"
#include "kss/instance.hpp"
#include "kss/tensor.hpp"

namespace kss {

struct DetOptions {
    std::uint64_t max_cells = kDefaultMaxCells;
    SumsetStrategy strategy = SumsetStrategy::Auto;
    ConvStats* stats = nullptr;
    // Override the congruence class count (testing and benchmarking knob).
    std::optional<std::uint32_t> force_b;
};

// Class count b = floor((n^k * log2 n)^(1/(k+1))), clamped to [1, n]: the
// balance point between the number of classes folded and the shrunken
// quotient caps inside each class.
std::uint32_t choose_b(std::size_t n, std::size_t k);

// Cardinality-constrained variant: b = floor((n^k * log2 n / c^k)^(1/(k+1))),
// clamped to [1, n].
std::uint32_t choose_b_card(std::size_t n, std::size_t k, std::uint32_t c);

// All (sum vector, count vector) pairs realizable by k disjoint subsets of q,
// with sums clamped at sum_cap and per-subset counts clamped at card_cap.
// Recursive halving in input order: singletons lift to one placement per
// axis, halves combine with a capped sumset (disjointness holds because the
// halves partition q).
SumTensor disjoint_sc(std::span<const std::uint64_t> q, std::uint32_t sum_cap,
                      std::size_t k, std::uint32_t card_cap, const DetOptions& opts = {});

// All sum vectors in [0,t]^k realizable by k pairwise disjoint subsets of z.
// Splits z into congruence classes mod b, solves each class over quotients
// with disjoint_sc, re-expands (quotient, count) pairs into true sums, and
// folds the classes with capped sumsets.
SumTensor disjoint_ss(std::span<const std::uint64_t> z, std::uint32_t t,
                      std::size_t k, const DetOptions& opts = {});

// Cardinality-aware form: cells are (sum vector, size vector) with sums in
// [0,t]^k and sizes in [0,c]^k.
SumTensor card_disjoint_ss(std::span<const std::uint64_t> z, std::uint32_t t,
                           std::uint32_t c, std::size_t k, const DetOptions& opts = {});

// Engine entry point: uniform sum cap t = max target, cardinality axes iff
// the instance is constrained (card cap = max requested size).
SumTensor solve_deterministic(const ValidatedInstance& v, const DetOptions& opts = {});

} // namespace kss

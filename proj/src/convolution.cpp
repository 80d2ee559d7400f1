#include "kss/convolution.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "kss/ntt.hpp"

namespace kss {

namespace {

void check_shapes(const SumTensor& a, const SumTensor& b,
                  std::span<const std::uint32_t> caps) {
    if (a.rank() != b.rank() || a.roles() != b.roles())
        fail(ErrorCode::AxisMismatch, "sumset operands need identical rank and roles");
    if (caps.size() != a.rank())
        fail(ErrorCode::AxisMismatch, "sumset caps must cover every axis");
}

// Invoke f for each true cell of t plus the implicit origin.
template <typename F>
void for_each_with_origin(const SumTensor& t, F&& f) {
    if (!t.origin()) {
        std::vector<std::uint32_t> zero(t.rank(), 0);
        f(std::span<const std::uint32_t>(zero.data(), zero.size()));
    }
    t.for_each_true(f);
}

// Flattened true cells of t plus the implicit origin.
std::vector<std::uint32_t> support_with_origin(const SumTensor& t) {
    std::vector<std::uint32_t> cells;
    for_each_with_origin(t, [&](std::span<const std::uint32_t> idx) {
        cells.insert(cells.end(), idx.begin(), idx.end());
    });
    return cells;
}

void sumset_sparse(SumTensor& out, const SumTensor& a, const SumTensor& b,
                   std::span<const std::uint32_t> caps) {
    const std::size_t rank = a.rank();
    const std::vector<std::uint32_t> bc = support_with_origin(b);
    std::vector<std::uint32_t> sum(rank);
    for_each_with_origin(a, [&](std::span<const std::uint32_t> x) {
        for (std::size_t off = 0; off < bc.size(); off += rank) {
            bool ok = true;
            for (std::size_t i = 0; i < rank; ++i) {
                const std::uint64_t s = static_cast<std::uint64_t>(x[i]) + bc[off + i];
                if (s > caps[i]) { ok = false; break; }
                sum[i] = static_cast<std::uint32_t>(s);
            }
            if (ok) out.set(std::span<const std::uint32_t>(sum.data(), rank));
        }
    });
}

// out |= union over cells d of B' of (A shifted by d), plus B' itself
// (the origin of A' shifted by d).  Truncation past caps is implicit in
// or_shifted.
void sumset_shift(SumTensor& out, const SumTensor& shifted, const SumTensor& by,
                  std::span<const std::uint32_t> caps) {
    const std::size_t rank = shifted.rank();
    for_each_with_origin(by, [&](std::span<const std::uint32_t> d) {
        out.or_shifted(shifted, d);
        bool in_range = true;
        for (std::size_t i = 0; i < rank; ++i)
            if (d[i] > caps[i]) { in_range = false; break; }
        if (in_range) out.set(d);
    });
}

void sumset_ntt(SumTensor& out, const SumTensor& a, const SumTensor& b,
                std::span<const std::uint32_t> caps, const ConvPlan& plan,
                ConvStats* stats) {
    const std::size_t rank = a.rank();
    const std::uint64_t total = plan.total();
    if (stats) stats->peak_cells = std::max(stats->peak_cells, total);

    const auto flat = [&](std::span<const std::uint32_t> idx) {
        std::uint64_t pos = 0;
        for (std::size_t i = 0; i < rank; ++i)
            pos = pos * plan.lengths[i] + idx[i];
        return pos;
    };
    const auto load = [&](const SumTensor& t) {
        std::vector<std::uint32_t> buf(total, 0);
        buf[0] = 1; // implicit origin
        t.for_each_true([&](std::span<const std::uint32_t> idx) {
            for (std::size_t i = 0; i < rank; ++i)
                if (idx[i] > caps[i]) return; // cannot contribute below the caps
            buf[flat(idx)] = 1;
        });
        return buf;
    };

    std::vector<std::uint32_t> fa = load(a);
    {
        std::vector<std::uint32_t> fb = load(b);
        ntt::transform_multi(fa, plan.lengths, false);
        ntt::transform_multi(fb, plan.lengths, false);
        for (std::uint64_t i = 0; i < total; ++i)
            fa[i] = static_cast<std::uint32_t>(
                static_cast<std::uint64_t>(fa[i]) * fb[i] % ntt::kMod);
    }
    ntt::transform_multi(fa, plan.lengths, true);

    // Only cells reachable below the caps can be nonzero; walk that box.
    std::vector<std::uint32_t> reach(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        const std::uint64_t top = std::min<std::uint64_t>(a.caps()[i], caps[i]) +
                                  std::min<std::uint64_t>(b.caps()[i], caps[i]);
        reach[i] = static_cast<std::uint32_t>(std::min<std::uint64_t>(caps[i], top));
    }
    std::vector<std::uint32_t> idx(rank, 0);
    for (;;) {
        if (fa[flat(idx)] != 0) out.set(std::span<const std::uint32_t>(idx.data(), rank));
        std::size_t ax = rank;
        while (ax-- > 0) {
            if (++idx[ax] <= reach[ax]) break;
            idx[ax] = 0;
            if (ax == 0) return;
        }
        if (ax == std::size_t(-1)) return;
    }
}

} // namespace

ConvPlan ConvPlan::make(std::span<const std::uint32_t> a_caps,
                        std::span<const std::uint32_t> b_caps,
                        std::span<const std::uint32_t> out_caps) {
    ConvPlan plan;
    plan.lengths.reserve(out_caps.size());
    for (std::size_t i = 0; i < out_caps.size(); ++i) {
        const std::uint64_t la = std::min<std::uint64_t>(a_caps[i], out_caps[i]) + 1;
        const std::uint64_t lb = std::min<std::uint64_t>(b_caps[i], out_caps[i]) + 1;
        plan.lengths.push_back(ntt::next_pow2(la + lb - 1));
    }
    return plan;
}

SumTensor naive_sumset(const SumTensor& a, const SumTensor& b,
                       std::span<const std::uint32_t> caps) {
    check_shapes(a, b, caps);
    SumTensor out(std::vector<std::uint32_t>(caps.begin(), caps.end()), a.roles());
    const std::size_t rank = a.rank();
    const std::vector<std::uint32_t> ac = support_with_origin(a);
    const std::vector<std::uint32_t> bc = support_with_origin(b);
    std::vector<std::uint32_t> sum(rank);
    for (std::size_t i = 0; i < ac.size(); i += rank) {
        for (std::size_t j = 0; j < bc.size(); j += rank) {
            bool ok = true;
            for (std::size_t ax = 0; ax < rank; ++ax) {
                const std::uint64_t s =
                    static_cast<std::uint64_t>(ac[i + ax]) + bc[j + ax];
                if (s > caps[ax]) { ok = false; break; }
                sum[ax] = static_cast<std::uint32_t>(s);
            }
            if (ok) out.set(std::span<const std::uint32_t>(sum.data(), rank));
        }
    }
    return out;
}

SumTensor capped_sumset(const SumTensor& a, const SumTensor& b,
                        std::span<const std::uint32_t> caps,
                        const SumsetOptions& opts) {
    check_shapes(a, b, caps);
    const std::uint64_t out_cells = checked_cell_count(caps, opts.max_cells);

    SumTensor out(std::vector<std::uint32_t>(caps.begin(), caps.end()), a.roles());
    if (opts.stats) {
        ++opts.stats->convolutions;
        opts.stats->peak_cells = std::max(opts.stats->peak_cells, out_cells);
    }

    const std::uint64_t sa = a.popcount() + (a.origin() ? 0 : 1);
    const std::uint64_t sb = b.popcount() + (b.origin() ? 0 : 1);
    const std::size_t rank = a.rank();

    // A fixed output cell is hit by at most min(sa, sb) pairs (the cell and
    // one operand coordinate determine the other), so counts stay below the
    // modulus whenever the smaller support does.
    const ConvPlan plan = ConvPlan::make(a.caps(), b.caps(), caps);
    bool ntt_ok = plan.total() <= opts.max_cells && std::min(sa, sb) < ntt::kMod;
    for (std::uint32_t len : plan.lengths)
        if (len > (1u << ntt::kMaxLogLen)) ntt_ok = false;

    SumsetStrategy strategy = opts.strategy;
    if (strategy == SumsetStrategy::Ntt && !ntt_ok)
        fail(ErrorCode::CapOverflowsMemory,
             "transform of " + std::to_string(plan.total()) + " cells exceeds the budget");
    if (strategy == SumsetStrategy::Auto) {
        // Rough per-strategy work in word-operation units: a sparse pair
        // costs a strided set (~4 ops per axis), a shift streams the whole
        // output once per support cell, a transform touches every transform
        // cell ~log times with modular multiplies.
        const std::uint64_t out_words = std::max<std::uint64_t>(out.word_count(), 1);
        const double cost_sparse =
            4.0 * static_cast<double>(sa) * static_cast<double>(sb) * rank;
        const double cost_shift =
            static_cast<double>(std::min(sa, sb)) * static_cast<double>(out_words);
        double cost_ntt = 1e30;
        if (ntt_ok) {
            const double n = static_cast<double>(plan.total());
            cost_ntt = 18.0 * n * (std::max(1.0, std::log2(n)));
        }
        if (cost_sparse <= cost_shift && cost_sparse <= cost_ntt)
            strategy = SumsetStrategy::SparsePairs;
        else if (cost_shift <= cost_ntt)
            strategy = SumsetStrategy::ShiftOr;
        else
            strategy = SumsetStrategy::Ntt;
    }

    switch (strategy) {
        case SumsetStrategy::SparsePairs:
            if (opts.stats) ++opts.stats->sparse_calls;
            if (sa <= sb) sumset_sparse(out, b, a, caps);
            else sumset_sparse(out, a, b, caps);
            break;
        case SumsetStrategy::ShiftOr:
            if (opts.stats) ++opts.stats->shift_calls;
            if (sb <= sa) sumset_shift(out, a, b, caps);
            else sumset_shift(out, b, a, caps);
            break;
        case SumsetStrategy::Ntt:
            if (opts.stats) ++opts.stats->ntt_calls;
            sumset_ntt(out, a, b, caps, plan, opts.stats);
            break;
        case SumsetStrategy::Auto:
            break; // unreachable
    }
    return out;
}

} // namespace kss

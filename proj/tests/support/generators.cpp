#include "support/generators.hpp"

#include <algorithm>

namespace kss::testing {

Instance random_instance(Rng& rng, const CorpusParams& params) {
    Instance inst;
    const std::size_t n = params.min_n + rng.below(params.max_n - params.min_n + 1);
    for (std::size_t i = 0; i < n; ++i)
        inst.elements.push_back(rng.range(1, params.max_value));
    const std::size_t k = params.ks[rng.below(params.ks.size())];
    for (std::size_t i = 0; i < k; ++i)
        inst.targets.push_back(rng.below(params.max_target + 1));
    if (params.constrained) {
        std::vector<std::uint64_t> cards;
        std::uint64_t budget = n;
        for (std::size_t i = 0; i < k; ++i) {
            const std::uint64_t hi = std::min<std::uint64_t>(params.max_card, budget);
            const std::uint64_t c = hi == 0 ? 0 : rng.range(1, hi);
            cards.push_back(c);
            budget -= c;
        }
        inst.cardinalities = std::move(cards);
    }
    return inst;
}

Planted planted_instance(Rng& rng, std::size_t n, std::uint64_t min_value,
                         std::uint64_t max_value, std::size_t k, std::size_t max_size,
                         bool constrained) {
    Planted out;
    for (std::size_t i = 0; i < n; ++i)
        out.instance.elements.push_back(rng.range(min_value, max_value));

    std::vector<std::uint32_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint32_t>(i);
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);

    std::size_t cursor = 0;
    std::vector<std::uint64_t> cards;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t want = 1 + static_cast<std::size_t>(rng.below(max_size));
        want = std::min(want, n - cursor);
        std::vector<std::uint32_t> subset(perm.begin() + cursor, perm.begin() + cursor + want);
        cursor += want;
        std::sort(subset.begin(), subset.end());
        std::uint64_t sum = 0;
        for (std::uint32_t e : subset) sum += out.instance.elements[e];
        out.instance.targets.push_back(sum);
        cards.push_back(subset.size());
        out.subsets.push_back(std::move(subset));
    }
    if (constrained) out.instance.cardinalities = std::move(cards);
    return out;
}

SumTensor random_tensor(Rng& rng, std::size_t rank, std::uint32_t cap_max,
                        std::size_t cells, bool with_cards) {
    std::vector<std::uint32_t> caps(rank);
    for (auto& c : caps) c = static_cast<std::uint32_t>(rng.below(cap_max + 1));
    SumTensor t = with_cards
                      ? SumTensor::with_cards(
                            std::vector<std::uint32_t>(caps.begin(), caps.begin() + rank / 2),
                            std::vector<std::uint32_t>(caps.begin() + rank / 2, caps.end()))
                      : SumTensor::sums(caps);
    std::vector<std::uint32_t> idx(rank);
    for (std::size_t i = 0; i < cells; ++i) {
        for (std::size_t a = 0; a < rank; ++a)
            idx[a] = static_cast<std::uint32_t>(rng.below(caps[a] + 1));
        t.set(std::span<const std::uint32_t>(idx.data(), rank));
    }
    return t;
}

namespace {

// Enumerate every assignment of elements to {unused, subset 1..k} and hand
// the resulting sums to f.  No pruning: this is the trusted reference.
template <typename F>
void for_each_family(const std::vector<std::uint64_t>& elements, std::size_t k, F&& f,
                     bool allow_unused) {
    std::vector<std::uint64_t> sums(k, 0);
    const auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == elements.size()) {
            f(sums);
            return;
        }
        if (allow_unused) self(self, pos + 1);
        for (std::size_t i = 0; i < k; ++i) {
            sums[i] += elements[pos];
            self(self, pos + 1);
            sums[i] -= elements[pos];
        }
    };
    rec(rec, 0);
}

bool ratio_less(const Ratio& a, const Ratio& b) {
    if (a.infinite() || b.infinite()) return b.infinite() && !a.infinite();
    return static_cast<unsigned __int128>(a.num) * b.den <
           static_cast<unsigned __int128>(b.num) * a.den;
}

Ratio make_ratio(std::uint64_t mx, std::uint64_t mn) {
    if (mx == 0) return Ratio{1, 1};
    if (mn == 0) return Ratio{mx, 0};
    return Ratio{mx, mn};
}

} // namespace

bool ratio_equal(const Ratio& a, const Ratio& b) {
    return !ratio_less(a, b) && !ratio_less(b, a);
}

std::optional<Ratio> bf_subset_sum_ratio(const std::vector<std::uint64_t>& elements,
                                         std::uint64_t t) {
    return bf_k_subset_sum_ratio(elements, {t, t});
}

std::optional<Ratio> bf_k_subset_sum_ratio(const std::vector<std::uint64_t>& elements,
                                           const std::vector<std::uint64_t>& targets) {
    const std::size_t k = targets.size();
    std::optional<Ratio> best;
    for_each_family(
        elements, k,
        [&](const std::vector<std::uint64_t>& sums) {
            std::uint64_t mx = 0, mn = UINT64_MAX;
            for (std::size_t i = 0; i < k; ++i) {
                if (sums[i] == 0 || sums[i] > targets[i]) return;
                mx = std::max(mx, sums[i]);
                mn = std::min(mn, sums[i]);
            }
            const Ratio r{mx, mn};
            if (!best || ratio_less(r, *best)) best = r;
        },
        true);
    return best;
}

BfPartition bf_partition(const std::vector<std::uint64_t>& elements, std::size_t k) {
    BfPartition best;
    bool first = true;
    for_each_family(
        elements, k,
        [&](const std::vector<std::uint64_t>& sums) {
            const std::uint64_t mx = *std::max_element(sums.begin(), sums.end());
            const std::uint64_t mn = *std::min_element(sums.begin(), sums.end());
            const Ratio r = make_ratio(mx, mn);
            if (first) {
                best = BfPartition{mx - mn, r, mn, mx};
                first = false;
                return;
            }
            best.diff = std::min(best.diff, mx - mn);
            if (ratio_less(r, best.ratio)) best.ratio = r;
            best.maxmin = std::max(best.maxmin, mn);
            best.minmax = std::min(best.minmax, mx);
        },
        false);
    return best;
}

std::uint64_t bf_multiple_subset_sum(const std::vector<std::uint64_t>& elements,
                                     const std::vector<std::uint64_t>& targets) {
    const std::size_t k = targets.size();
    std::uint64_t best = 0;
    for_each_family(
        elements, k,
        [&](const std::vector<std::uint64_t>& sums) {
            std::uint64_t total = 0;
            for (std::size_t i = 0; i < k; ++i) {
                if (sums[i] > targets[i]) return;
                total += sums[i];
            }
            best = std::max(best, total);
        },
        true);
    return best;
}

} // namespace kss::testing

#include "kss/oracle.hpp"

#include <algorithm>

namespace kss {

namespace {

std::vector<std::uint32_t> target_caps(const Instance& inst) {
    std::vector<std::uint32_t> caps;
    caps.reserve(inst.k());
    for (std::uint64_t t : inst.targets) caps.push_back(static_cast<std::uint32_t>(t));
    return caps;
}

} // namespace

SumTensor bellman_k(const ValidatedInstance& v, const OracleOptions& opts) {
    const Instance& inst = v.instance;
    const std::size_t k = inst.k();
    const std::vector<std::uint32_t> scaps = target_caps(inst);

    SumTensor cur;
    if (inst.constrained()) {
        std::vector<std::uint32_t> ccaps;
        for (std::uint64_t c : *inst.cardinalities) ccaps.push_back(static_cast<std::uint32_t>(c));
        std::vector<std::uint32_t> all(scaps);
        all.insert(all.end(), ccaps.begin(), ccaps.end());
        checked_cell_count(all, opts.max_cells);
        cur = SumTensor::with_cards(scaps, ccaps);
    } else {
        checked_cell_count(scaps, opts.max_cells);
        cur = SumTensor::sums(scaps);
    }
    cur.set_origin();

    SumTensor next;
    std::vector<std::uint32_t> off(cur.rank(), 0);
    for (std::uint64_t z : inst.elements) {
        next = cur;
        for (std::size_t i = 0; i < k; ++i) {
            std::fill(off.begin(), off.end(), 0);
            off[i] = static_cast<std::uint32_t>(z);
            if (inst.constrained()) off[k + i] = 1;
            // shifts past an axis cap drop out inside or_shifted
            next.or_shifted(cur, off);
        }
        std::swap(cur, next);
    }
    return cur;
}

SumTensor brute_force(const ValidatedInstance& v, const OracleOptions& opts) {
    const Instance& inst = v.instance;
    const std::size_t n = inst.elements.size();
    const std::size_t k = inst.k();
    if (n > opts.brute_force_limit)
        fail(ErrorCode::InstanceTooLarge,
             "brute force enumerates (k+1)^n assignments; n = " + std::to_string(n) +
                 " exceeds the limit of " + std::to_string(opts.brute_force_limit));

    const std::vector<std::uint32_t> scaps = target_caps(inst);
    std::vector<std::uint32_t> ccaps;
    if (inst.constrained())
        for (std::uint64_t c : *inst.cardinalities) ccaps.push_back(static_cast<std::uint32_t>(c));
    else
        ccaps.assign(k, static_cast<std::uint32_t>(n));

    std::vector<std::uint32_t> all(scaps);
    all.insert(all.end(), ccaps.begin(), ccaps.end());
    checked_cell_count(all, opts.max_cells);
    SumTensor out = SumTensor::with_cards(scaps, ccaps);

    std::vector<std::uint32_t> idx(2 * k, 0);
    const auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == n) {
            out.set(std::span<const std::uint32_t>(idx.data(), idx.size()));
            return;
        }
        self(self, pos + 1); // element unused
        const std::uint64_t z = inst.elements[pos];
        for (std::size_t i = 0; i < k; ++i) {
            if (idx[i] + z > scaps[i] || idx[k + i] + 1 > ccaps[i]) continue;
            idx[i] += static_cast<std::uint32_t>(z);
            idx[k + i] += 1;
            self(self, pos + 1);
            idx[i] -= static_cast<std::uint32_t>(z);
            idx[k + i] -= 1;
        }
    };
    rec(rec, 0);
    return out;
}

bool tensor_verdict(const SumTensor& tensor, const ValidatedInstance& v) {
    if (v.trivially_false) return false;
    const Instance& inst = v.instance;
    const std::size_t k = inst.k();
    std::vector<std::uint32_t> idx;
    idx.reserve(tensor.rank());
    for (std::uint64_t t : inst.targets) idx.push_back(static_cast<std::uint32_t>(t));

    if (tensor.rank() == 2 * k && !inst.constrained()) {
        // Cardinality axes present but the question ignores sizes: any size
        // combination at the target sums answers yes.
        for (std::size_t i = 0; i < k; ++i)
            if (idx[i] > tensor.caps()[i]) return false;
        idx.resize(2 * k, 0);
        for (;;) {
            if (tensor.get(std::span<const std::uint32_t>(idx.data(), idx.size()))) return true;
            std::size_t ax = 2 * k;
            while (ax-- > k) {
                if (++idx[ax] <= tensor.caps()[ax]) break;
                idx[ax] = 0;
                if (ax == k) return false;
            }
        }
    }

    if (tensor.rank() == 2 * k) {
        for (std::uint64_t c : *inst.cardinalities) idx.push_back(static_cast<std::uint32_t>(c));
    } else if (tensor.rank() != k || inst.constrained()) {
        fail(ErrorCode::AxisMismatch, "tensor rank does not match the instance");
    }
    for (std::size_t i = 0; i < idx.size(); ++i)
        if (idx[i] > tensor.caps()[i]) return false;
    return tensor.get(std::span<const std::uint32_t>(idx.data(), idx.size()));
}

} // namespace kss

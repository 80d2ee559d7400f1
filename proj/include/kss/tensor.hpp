#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

#include "kss/error.hpp"

namespace kss {

enum class AxisRole : std::uint8_t { Sum, Card };

// Dense boolean tensor over capped integer axes.  A cell marks that some
// family of disjoint subsets realizes that coordinate vector; cells are
// existence bits, never counts.  Axis i ranges over 0..cap[i] inclusive.
// One axis is bit-packed, 64 cells per word: the last sum axis, since sum
// ranges dwarf cardinality ranges and word-level shifts ride that axis.
// Padding bits past the packed cap are kept zero so word-level
// OR/compare/popcount stay exact.
class SumTensor {
public:
    SumTensor() = default;

    SumTensor(std::vector<std::uint32_t> caps, std::vector<AxisRole> roles);

    // k sum axes with the given caps.
    static SumTensor sums(std::vector<std::uint32_t> caps);

    // k sum axes followed by k cardinality axes (axis i pairs with axis k+i).
    static SumTensor with_cards(const std::vector<std::uint32_t>& sum_caps,
                                const std::vector<std::uint32_t>& card_caps);

    std::size_t rank() const { return caps_.size(); }
    const std::vector<std::uint32_t>& caps() const { return caps_; }
    const std::vector<AxisRole>& roles() const { return roles_; }
    std::uint64_t cell_count() const;
    std::size_t word_count() const { return words_.size(); }

    bool get(std::span<const std::uint32_t> idx) const;
    void set(std::span<const std::uint32_t> idx);
    bool get(std::initializer_list<std::uint32_t> idx) const {
        return get(std::span<const std::uint32_t>(idx.begin(), idx.size()));
    }
    void set(std::initializer_list<std::uint32_t> idx) {
        set(std::span<const std::uint32_t>(idx.begin(), idx.size()));
    }

    void set_origin();
    bool origin() const;

    void clear();
    bool any() const;
    std::uint64_t popcount() const;

    // this |= other, shapes must match exactly.
    void or_with(const SumTensor& other);

    // this &= other, shapes must match exactly.
    void and_with(const SumTensor& other);

    // this |= (src shifted by offset); source cells whose shifted coordinate
    // exceeds a cap are dropped.  Ranks and roles must match, caps may differ.
    void or_shifted(const SumTensor& src, std::span<const std::uint32_t> offset);

    // Copy into a tensor with the given caps: cells beyond smaller caps are
    // dropped, larger caps zero-fill.  Roles are preserved.
    SumTensor resized(std::vector<std::uint32_t> new_caps) const;

    // OR away all cardinality axes, keeping the leading sum axes.
    SumTensor projected_sums() const;

    // Reorder axes: out[i...] = in[perm[i]...].
    SumTensor permuted(std::span<const std::uint32_t> perm) const;

    bool operator==(const SumTensor& other) const {
        return caps_ == other.caps_ && roles_ == other.roles_ && words_ == other.words_;
    }

    // Invoke f(std::span<const uint32_t>) for every true cell.  The visit
    // order follows the internal layout and is deterministic for a given
    // shape, but callers must not rely on any particular order.
    template <typename F>
    void for_each_true(F&& f) const {
        if (words_.empty()) return;
        std::vector<std::uint32_t> idx(rank(), 0);
        for (std::uint64_t row = 0; row < rows_; ++row) {
            const std::uint64_t* w = words_.data() + row * row_words_;
            for (std::uint64_t j = 0; j < row_words_; ++j) {
                std::uint64_t word = w[j];
                while (word) {
                    unsigned bit = static_cast<unsigned>(std::countr_zero(word));
                    word &= word - 1;
                    idx[pack_] = static_cast<std::uint32_t>(j * 64 + bit);
                    f(std::span<const std::uint32_t>(idx.data(), rank()));
                }
            }
            // advance the row odometer
            for (std::size_t s = lead_axes_.size(); s-- > 0;) {
                const std::uint32_t a = lead_axes_[s];
                if (++idx[a] <= caps_[a]) break;
                idx[a] = 0;
            }
        }
    }

private:
    std::vector<std::uint32_t> caps_;
    std::vector<AxisRole> roles_;
    std::vector<std::uint64_t> words_;
    std::uint64_t rows_ = 0;                // product of row-axis lengths
    std::uint64_t row_words_ = 0;           // 64-bit words per packed row
    std::uint32_t last_bits_ = 0;           // cells along the packed axis
    std::uint32_t pack_ = 0;                // logical index of the packed axis
    std::vector<std::uint32_t> lead_axes_;  // logical axis of each row slot
    std::vector<std::uint64_t> strides_;    // row stride of each row slot

    std::uint64_t row_of(std::span<const std::uint32_t> idx) const;
};

// Product of (cap+1) with an overflow check against the given cell budget.
std::uint64_t checked_cell_count(std::span<const std::uint32_t> caps, std::uint64_t budget);

inline std::vector<std::uint32_t> origin_index(std::size_t rank) {
    return std::vector<std::uint32_t>(rank, 0);
}

} // namespace kss

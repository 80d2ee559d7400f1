#include "kss/tensor.hpp"

#include <algorithm>

namespace kss {

namespace {

constexpr std::uint64_t kHardCellLimit = 1ull << 40;

// dst |= src << shift, where rows are little-endian bit vectors.  Bits
// shifted past dst_bits are discarded; src bits past src_bits are zero by
// the class invariant, so no masking of the source is needed.
void or_shift_row(std::uint64_t* dst, std::uint32_t dst_bits,
                  const std::uint64_t* src, std::uint64_t src_words, std::uint32_t src_bits,
                  std::uint32_t shift) {
    if (shift >= dst_bits) return;
    const std::uint64_t out_bits =
        std::min<std::uint64_t>(dst_bits, static_cast<std::uint64_t>(src_bits) + shift);
    const std::uint64_t out_words = (out_bits + 63) / 64;
    const std::uint64_t q = shift / 64;
    const unsigned r = shift % 64;
    if (r == 0) {
        for (std::uint64_t j = q; j < out_words; ++j)
            dst[j] |= (j - q < src_words) ? src[j - q] : 0;
    } else {
        for (std::uint64_t j = q; j < out_words; ++j) {
            std::uint64_t v = (j - q < src_words) ? (src[j - q] << r) : 0;
            if (j > q) v |= src[j - q - 1] >> (64 - r);
            dst[j] |= v;
        }
    }
    const unsigned keep = dst_bits % 64;
    if (keep != 0 && out_words * 64 > dst_bits)
        dst[out_words - 1] &= (1ull << keep) - 1;
}

} // namespace

std::uint64_t checked_cell_count(std::span<const std::uint32_t> caps, std::uint64_t budget) {
    unsigned __int128 cells = 1;
    for (std::uint32_t c : caps) {
        cells *= static_cast<std::uint64_t>(c) + 1;
        if (cells > budget)
            fail(ErrorCode::CapOverflowsMemory,
                 "tensor would need more than " + std::to_string(budget) + " cells");
    }
    return static_cast<std::uint64_t>(cells);
}

SumTensor::SumTensor(std::vector<std::uint32_t> caps, std::vector<AxisRole> roles)
    : caps_(std::move(caps)), roles_(std::move(roles)) {
    if (caps_.empty() || caps_.size() != roles_.size())
        fail(ErrorCode::AxisMismatch, "tensor needs matching, nonempty caps and roles");
    checked_cell_count(caps_, kHardCellLimit);
    // Pack along the last sum axis (sum ranges dwarf cardinality ranges);
    // the layout depends only on the roles, so tensors with equal roles can
    // walk each other's rows in lockstep whatever their caps.
    pack_ = static_cast<std::uint32_t>(rank() - 1);
    for (std::size_t i = rank(); i-- > 0;)
        if (roles_[i] == AxisRole::Sum) {
            pack_ = static_cast<std::uint32_t>(i);
            break;
        }
    lead_axes_.reserve(rank() - 1);
    for (std::uint32_t a = 0; a < rank(); ++a)
        if (a != pack_) lead_axes_.push_back(a);
    last_bits_ = caps_[pack_] + 1;
    row_words_ = (static_cast<std::uint64_t>(last_bits_) + 63) / 64;
    strides_.resize(lead_axes_.size());
    rows_ = 1;
    for (std::size_t s = lead_axes_.size(); s-- > 0;) {
        strides_[s] = rows_;
        rows_ *= static_cast<std::uint64_t>(caps_[lead_axes_[s]]) + 1;
    }
    words_.assign(rows_ * row_words_, 0);
}

SumTensor SumTensor::sums(std::vector<std::uint32_t> caps) {
    std::vector<AxisRole> roles(caps.size(), AxisRole::Sum);
    return SumTensor(std::move(caps), std::move(roles));
}

SumTensor SumTensor::with_cards(const std::vector<std::uint32_t>& sum_caps,
                                const std::vector<std::uint32_t>& card_caps) {
    if (sum_caps.size() != card_caps.size())
        fail(ErrorCode::AxisMismatch, "need one cardinality axis per sum axis");
    std::vector<std::uint32_t> caps(sum_caps);
    caps.insert(caps.end(), card_caps.begin(), card_caps.end());
    std::vector<AxisRole> roles(sum_caps.size(), AxisRole::Sum);
    roles.insert(roles.end(), card_caps.size(), AxisRole::Card);
    return SumTensor(std::move(caps), std::move(roles));
}

std::uint64_t SumTensor::cell_count() const {
    std::uint64_t cells = 1;
    for (std::uint32_t c : caps_) cells *= static_cast<std::uint64_t>(c) + 1;
    return cells;
}

std::uint64_t SumTensor::row_of(std::span<const std::uint32_t> idx) const {
    std::uint64_t row = 0;
    for (std::size_t s = 0; s < lead_axes_.size(); ++s) {
        assert(idx[lead_axes_[s]] <= caps_[lead_axes_[s]]);
        row += static_cast<std::uint64_t>(idx[lead_axes_[s]]) * strides_[s];
    }
    return row;
}

bool SumTensor::get(std::span<const std::uint32_t> idx) const {
    assert(idx.size() == rank());
    assert(idx[pack_] <= caps_[pack_]);
    const std::uint32_t bit = idx[pack_];
    const std::uint64_t* w = words_.data() + row_of(idx) * row_words_;
    return (w[bit / 64] >> (bit % 64)) & 1;
}

void SumTensor::set(std::span<const std::uint32_t> idx) {
    assert(idx.size() == rank());
    assert(idx[pack_] <= caps_[pack_]);
    const std::uint32_t bit = idx[pack_];
    std::uint64_t* w = words_.data() + row_of(idx) * row_words_;
    w[bit / 64] |= 1ull << (bit % 64);
}

void SumTensor::set_origin() { words_[0] |= 1; }

bool SumTensor::origin() const { return words_[0] & 1; }

void SumTensor::clear() { std::fill(words_.begin(), words_.end(), 0); }

bool SumTensor::any() const {
    for (std::uint64_t w : words_)
        if (w) return true;
    return false;
}

std::uint64_t SumTensor::popcount() const {
    std::uint64_t n = 0;
    for (std::uint64_t w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
    return n;
}

void SumTensor::or_with(const SumTensor& other) {
    if (caps_ != other.caps_ || roles_ != other.roles_)
        fail(ErrorCode::AxisMismatch, "or_with requires identical shapes");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
}

void SumTensor::and_with(const SumTensor& other) {
    if (caps_ != other.caps_ || roles_ != other.roles_)
        fail(ErrorCode::AxisMismatch, "and_with requires identical shapes");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
}

void SumTensor::or_shifted(const SumTensor& src, std::span<const std::uint32_t> offset) {
    if (src.rank() != rank() || src.roles_ != roles_ || offset.size() != rank())
        fail(ErrorCode::AxisMismatch, "or_shifted requires matching rank and roles");
    assert(&src != this);
    // equal roles imply the same packed axis and row-slot order
    const std::size_t lead = lead_axes_.size();

    // Rows advance in lockstep over the maximal suffix of row slots that have
    // no offset and equal lengths, so whole runs stream contiguously.
    std::size_t outer = lead;
    std::uint64_t run = 1;
    while (outer > 0) {
        const std::uint32_t a = lead_axes_[outer - 1];
        if (offset[a] != 0 || src.caps_[a] != caps_[a]) break;
        --outer;
        run *= static_cast<std::uint64_t>(caps_[a]) + 1;
    }

    const std::uint32_t bit_shift = offset[pack_];
    if (bit_shift >= last_bits_) return;
    std::vector<std::uint32_t> sc(outer, 0);
    const std::uint64_t blocks = src.rows_ / run;
    for (std::uint64_t block = 0; block < blocks; ++block) {
        bool in_range = true;
        std::uint64_t dr = 0;
        for (std::size_t s = 0; s < outer; ++s) {
            const std::uint32_t a = lead_axes_[s];
            const std::uint64_t d = static_cast<std::uint64_t>(sc[s]) + offset[a];
            if (d > caps_[a]) { in_range = false; break; }
            dr += d * strides_[s];
        }
        if (in_range) {
            std::uint64_t* dw = words_.data() + dr * row_words_;
            const std::uint64_t* sw = src.words_.data() + block * run * src.row_words_;
            for (std::uint64_t r = 0; r < run; ++r) {
                or_shift_row(dw, last_bits_, sw, src.row_words_, src.last_bits_, bit_shift);
                dw += row_words_;
                sw += src.row_words_;
            }
        }
        for (std::size_t s = outer; s-- > 0;) {
            if (++sc[s] <= src.caps_[lead_axes_[s]]) break;
            sc[s] = 0;
        }
    }
}

SumTensor SumTensor::resized(std::vector<std::uint32_t> new_caps) const {
    if (new_caps.size() != rank())
        fail(ErrorCode::AxisMismatch, "resized cannot change rank");
    SumTensor out(std::move(new_caps), roles_);
    const std::size_t lead = lead_axes_.size();
    const std::uint32_t out_bits = std::min(out.last_bits_, last_bits_);
    const std::uint64_t copy_words = (static_cast<std::uint64_t>(out_bits) + 63) / 64;
    std::vector<std::uint32_t> sc(lead, 0);
    for (std::uint64_t sr = 0; sr < rows_; ++sr) {
        bool in_range = true;
        std::uint64_t dr = 0;
        for (std::size_t s = 0; s < lead; ++s) {
            if (sc[s] > out.caps_[lead_axes_[s]]) { in_range = false; break; }
            dr += static_cast<std::uint64_t>(sc[s]) * out.strides_[s];
        }
        if (in_range) {
            const std::uint64_t* sw = words_.data() + sr * row_words_;
            std::uint64_t* dw = out.words_.data() + dr * out.row_words_;
            for (std::uint64_t j = 0; j < copy_words; ++j) dw[j] = sw[j];
            const unsigned keep = out_bits % 64;
            if (keep != 0) dw[copy_words - 1] &= (1ull << keep) - 1;
        }
        for (std::size_t s = lead; s-- > 0;) {
            if (++sc[s] <= caps_[lead_axes_[s]]) break;
            sc[s] = 0;
        }
    }
    return out;
}

SumTensor SumTensor::projected_sums() const {
    std::size_t k = 0;
    while (k < rank() && roles_[k] == AxisRole::Sum) ++k;
    for (std::size_t i = k; i < rank(); ++i)
        if (roles_[i] != AxisRole::Card)
            fail(ErrorCode::AxisMismatch, "sum axes must precede cardinality axes");
    if (k == rank()) return *this;
    if (k == 0) fail(ErrorCode::AxisMismatch, "tensor has no sum axes");

    SumTensor out = SumTensor::sums(std::vector<std::uint32_t>(caps_.begin(), caps_.begin() + k));
    // Cardinality axes occupy the innermost row slots and both tensors pack
    // along sum axis k-1, so each output row is the word-wise OR of one
    // contiguous block of source rows.
    std::uint64_t card_block = 1;
    for (std::size_t i = k; i < rank(); ++i)
        card_block *= static_cast<std::uint64_t>(caps_[i]) + 1;
    const std::uint64_t* sw = words_.data();
    std::uint64_t* dw = out.words_.data();
    for (std::uint64_t orow = 0; orow < out.rows_; ++orow) {
        for (std::uint64_t b = 0; b < card_block; ++b)
            for (std::uint64_t j = 0; j < row_words_; ++j) dw[j] |= sw[b * row_words_ + j];
        sw += card_block * row_words_;
        dw += out.row_words_;
    }
    return out;
}

SumTensor SumTensor::permuted(std::span<const std::uint32_t> perm) const {
    if (perm.size() != rank())
        fail(ErrorCode::AxisMismatch, "permutation size must equal rank");
    std::vector<std::uint32_t> caps(rank());
    std::vector<AxisRole> roles(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
        caps[i] = caps_[perm[i]];
        roles[i] = roles_[perm[i]];
    }
    SumTensor out(std::move(caps), std::move(roles));
    std::vector<std::uint32_t> mapped(rank());
    for_each_true([&](std::span<const std::uint32_t> idx) {
        for (std::size_t i = 0; i < idx.size(); ++i) mapped[i] = idx[perm[i]];
        out.set(std::span<const std::uint32_t>(mapped.data(), mapped.size()));
    });
    return out;
}

} // namespace kss

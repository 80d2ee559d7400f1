#include "kss/instance.hpp"

#include <algorithm>
#include <limits>

namespace kss {

std::uint64_t Instance::max_target() const {
    std::uint64_t t = 0;
    for (std::uint64_t v : targets) t = std::max(t, v);
    return t;
}

ValidatedInstance validate(const Instance& raw, ValidationMode mode, std::uint64_t /*max_cells*/) {
    if (raw.targets.empty())
        fail(ErrorCode::BadArgument, "at least one target is required");
    const std::size_t k = raw.targets.size();

    for (std::uint64_t t : raw.targets)
        if (t > std::numeric_limits<std::uint32_t>::max())
            fail(ErrorCode::TargetOverflow, "target " + std::to_string(t) + " exceeds 2^32-1");

    for (std::uint64_t z : raw.elements)
        if (z == 0)
            fail(ErrorCode::NonPositiveElement, "elements must be positive integers");

    if (raw.cardinalities) {
        if (raw.cardinalities->size() != k)
            fail(ErrorCode::AxisMismatch, "need exactly one cardinality per target");
        std::uint64_t total = 0;
        for (std::uint64_t c : *raw.cardinalities) {
            if (c > raw.elements.size())
                fail(ErrorCode::CardinalityOverflow,
                     "cardinality " + std::to_string(c) + " exceeds element count");
            total += c;
        }
        if (total > raw.elements.size())
            fail(ErrorCode::CardinalityOverflow,
                 "cardinalities sum to " + std::to_string(total) + " but only " +
                     std::to_string(raw.elements.size()) + " elements exist");
    }

    if (raw.delta) {
        const double d = *raw.delta;
        if (mode == ValidationMode::Randomized) {
            // Failure bound must leave room for the per-round split probability.
            const double limit = 1.0 / static_cast<double>(1ull << (std::min(k, std::size_t{62}) + 1));
            if (!(d > 0.0) || d > limit)
                fail(ErrorCode::DeltaOutOfRange,
                     "delta must lie in (0, 1/2^(k+1)] for randomized runs");
        } else if (!(d > 0.0 && d < 1.0)) {
            fail(ErrorCode::DeltaOutOfRange, "delta must lie in (0, 1)");
        }
    }

    ValidatedInstance out;
    out.original_n = raw.elements.size();
    out.instance.targets = raw.targets;
    out.instance.cardinalities = raw.cardinalities;
    out.instance.delta = raw.delta;

    // Elements above every target cannot appear in any exact-sum subset.
    const std::uint64_t t_max = out.instance.max_target();
    out.instance.elements.reserve(raw.elements.size());
    for (std::uint64_t z : raw.elements) {
        if (z > t_max)
            ++out.removed_elements;
        else
            out.instance.elements.push_back(z);
    }

    if (raw.cardinalities) {
        std::uint64_t total = 0;
        for (std::uint64_t c : *raw.cardinalities) total += c;
        if (total > out.instance.elements.size()) out.trivially_false = true;
    }
    return out;
}

} // namespace kss

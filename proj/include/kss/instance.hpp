#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kss/error.hpp"

namespace kss {

// Default ceiling on dense tensor cells (2^28).  Engines refuse to allocate
// past it instead of thrashing; callers may raise or lower it per run.
inline constexpr std::uint64_t kDefaultMaxCells = 1ull << 28;

// A k-Subset-Sum question: do k pairwise disjoint subsets of `elements`
// hit `targets` exactly (optionally with exact sizes `cardinalities`)?
// Inputs are multisets; duplicate element values are distinct items.
struct Instance {
    std::vector<std::uint64_t> elements;
    std::vector<std::uint64_t> targets;                     // size k
    std::optional<std::vector<std::uint64_t>> cardinalities; // size k when present
    std::optional<double> delta;                             // randomized failure bound

    std::size_t k() const { return targets.size(); }
    std::uint64_t max_target() const;
    bool constrained() const { return cardinalities.has_value(); }
};

// Validation context: randomized engines bound delta by 1/2^(k+1), the
// deterministic and DP engines only need delta in (0, 1) when present.
enum class ValidationMode { Deterministic, Randomized };

struct ValidatedInstance {
    Instance instance;                 // normalized: oversize elements removed
    std::size_t original_n = 0;        // element count before filtering
    std::uint64_t removed_elements = 0; // elements dropped because z > max target
    bool trivially_false = false;      // e.g. requested sizes exceed remaining n
};

// Checks element positivity, target/cardinality ranges and delta, then drops
// elements larger than every target (they can never be used).  Targets equal
// to zero stay legal: the empty subset realizes them.
ValidatedInstance validate(const Instance& raw, ValidationMode mode,
                           std::uint64_t max_cells = kDefaultMaxCells);

} // namespace kss

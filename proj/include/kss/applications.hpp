#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kss/convolution.hpp"
#include "kss/instance.hpp"
#include "kss/tensor.hpp"

namespace kss {

enum class Engine { Dp, Deterministic, Randomized };

enum class Objective { MinDiff, MinRatio, MaxMin, MinMax };

struct EngineOptions {
    Engine engine = Engine::Deterministic;
    std::optional<double> delta;  // randomized failure bound, default 1/2^(k+1)
    std::uint64_t seed = 0;
    std::uint64_t max_cells = kDefaultMaxCells;
    SumsetStrategy strategy = SumsetStrategy::Auto;
    std::optional<std::uint32_t> force_b;
    bool collect_timing = true;   // false pins elapsed_ms to 0 for bit-stable reports
};

// Exact nonnegative rational.  den == 0 encodes an infinite ratio (a zero
// minimum against a positive maximum).
struct Ratio {
    std::uint64_t num = 0;
    std::uint64_t den = 1;
    double value() const;
    bool infinite() const { return den == 0; }
};

struct SolveStats {
    std::string algorithm;
    std::optional<std::uint64_t> seed;   // randomized runs only
    std::optional<double> delta;         // randomized runs only
    std::uint64_t elapsed_ms = 0;
    std::uint64_t convolutions = 0;
    std::uint64_t tensor_cells = 0;      // peak cells across tensors and transforms
    std::uint64_t removed_elements = 0;  // dropped by validation (z > max target)
};

struct SolveReport {
    bool verdict = false;
    std::optional<std::uint64_t> optimum;       // integer objectives
    std::optional<Ratio> optimum_ratio;         // ratio objectives
    std::optional<std::vector<std::uint64_t>> witness; // realized sums
    SolveStats stats;
};

struct EngineRun {
    SumTensor tensor;
    SolveStats stats;
};

// Run the selected engine on a validated instance and return the
// realizability tensor plus collected statistics.
EngineRun run_engine(const ValidatedInstance& v, const EngineOptions& opts);

// Plain decision: do disjoint subsets hitting every target (and size) exist?
SolveReport decide(const Instance& instance, const EngineOptions& opts = {});

// Smallest max/min sum ratio over two disjoint nonempty subsets with sums at
// most t.  Throws NoFeasiblePair when no such pair exists.
// Witness: [larger sum, smaller sum].
SolveReport subset_sum_ratio(const std::vector<std::uint64_t>& elements,
                             std::uint64_t t, const EngineOptions& opts = {});

// Smallest max/min sum ratio over k disjoint nonempty subsets with sums
// bounded per target.  Throws NoFeasibleTuple when no tuple exists.
// Witness sums are sorted descending; ties prefer the lexicographically
// smallest witness.
SolveReport k_subset_sum_ratio(const std::vector<std::uint64_t>& elements,
                               const std::vector<std::uint64_t>& targets,
                               const EngineOptions& opts = {});

// Partition all elements into k subsets optimizing the objective.  Witness
// sums are sorted descending; ties prefer the lexicographically smallest
// witness.  A perfectly empty partition has ratio 1.
SolveReport k_way_partition(const std::vector<std::uint64_t>& elements, std::size_t k,
                            Objective objective, const EngineOptions& opts = {});

// Largest combined sum of k disjoint subsets with per-target bounds; the
// empty family always qualifies, so the verdict is always true.  Witness
// keeps axis order (axis i obeys target i); ties prefer the
// lexicographically smallest witness.
SolveReport multiple_subset_sum(const std::vector<std::uint64_t>& elements,
                                const std::vector<std::uint64_t>& targets,
                                const EngineOptions& opts = {});

const char* to_string(Engine engine);
const char* to_string(Objective objective);

} // namespace kss

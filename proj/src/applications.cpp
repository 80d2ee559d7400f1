#include "kss/applications.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "kss/deterministic.hpp"
#include "kss/oracle.hpp"
#include "kss/randomized.hpp"

namespace kss {

namespace {

double default_delta(std::size_t k) {
    return 1.0 / std::pow(2.0, static_cast<double>(std::min<std::size_t>(k, 62)) + 1);
}

ValidationMode mode_for(Engine engine) {
    return engine == Engine::Randomized ? ValidationMode::Randomized
                                        : ValidationMode::Deterministic;
}

// ratio comparison without rounding: a < b as fractions; infinite (den 0)
// compares greater than everything finite.
bool ratio_less(const Ratio& a, const Ratio& b) {
    if (a.infinite() || b.infinite()) return b.infinite() && !a.infinite();
    return static_cast<unsigned __int128>(a.num) * b.den <
           static_cast<unsigned __int128>(b.num) * a.den;
}

std::vector<std::uint64_t> sorted_desc(std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

struct RatioCandidate {
    Ratio ratio;
    std::vector<std::uint64_t> witness; // sorted descending
};

bool ratio_candidate_better(const RatioCandidate& a, const RatioCandidate& b) {
    if (ratio_less(a.ratio, b.ratio)) return true;
    if (ratio_less(b.ratio, a.ratio)) return false;
    return a.witness < b.witness;
}

Ratio cell_ratio(const std::vector<std::uint64_t>& sums) {
    const std::uint64_t mx = *std::max_element(sums.begin(), sums.end());
    const std::uint64_t mn = *std::min_element(sums.begin(), sums.end());
    if (mx == 0) return Ratio{1, 1}; // all-empty family: perfectly balanced
    if (mn == 0) return Ratio{mx, 0};
    return Ratio{mx, mn};
}

} // namespace

double Ratio::value() const {
    if (infinite()) return std::numeric_limits<double>::infinity();
    return static_cast<double>(num) / static_cast<double>(den);
}

const char* to_string(Engine engine) {
    switch (engine) {
        case Engine::Dp:            return "dp";
        case Engine::Deterministic: return "det";
        case Engine::Randomized:    return "rand";
    }
    return "unknown";
}

const char* to_string(Objective objective) {
    switch (objective) {
        case Objective::MinDiff:  return "diff";
        case Objective::MinRatio: return "ratio";
        case Objective::MaxMin:   return "maxmin";
        case Objective::MinMax:   return "minmax";
    }
    return "unknown";
}

EngineRun run_engine(const ValidatedInstance& v, const EngineOptions& opts) {
    ConvStats conv;
    EngineRun run;
    run.stats.removed_elements = v.removed_elements;

    const auto started = std::chrono::steady_clock::now();
    switch (opts.engine) {
        case Engine::Dp: {
            run.stats.algorithm = "bellman";
            OracleOptions oopts;
            oopts.max_cells = opts.max_cells;
            run.tensor = bellman_k(v, oopts);
            break;
        }
        case Engine::Deterministic: {
            run.stats.algorithm =
                v.instance.constrained() ? "card-disjoint-ss" : "disjoint-ss";
            DetOptions dopts;
            dopts.max_cells = opts.max_cells;
            dopts.strategy = opts.strategy;
            dopts.stats = &conv;
            dopts.force_b = opts.force_b;
            run.tensor = solve_deterministic(v, dopts);
            break;
        }
        case Engine::Randomized: {
            run.stats.algorithm =
                v.instance.constrained() ? "card-color-coding-layer" : "k-subset-sum-rand";
            const double delta = opts.delta.value_or(default_delta(v.instance.k()));
            RandOptions ropts;
            ropts.max_cells = opts.max_cells;
            ropts.strategy = opts.strategy;
            ropts.stats = &conv;
            run.tensor = solve_randomized(v, delta, opts.seed, ropts);
            run.stats.seed = opts.seed;
            run.stats.delta = delta;
            break;
        }
    }
    if (opts.collect_timing) {
        const auto elapsed = std::chrono::steady_clock::now() - started;
        run.stats.elapsed_ms = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count());
    }
    run.stats.convolutions = conv.convolutions;
    run.stats.tensor_cells = std::max(conv.peak_cells, run.tensor.cell_count());
    return run;
}

SolveReport decide(const Instance& instance, const EngineOptions& opts) {
    const ValidatedInstance v = validate(instance, mode_for(opts.engine), opts.max_cells);
    EngineRun run = run_engine(v, opts);
    SolveReport report;
    report.verdict = tensor_verdict(run.tensor, v);
    report.stats = std::move(run.stats);
    return report;
}

SolveReport subset_sum_ratio(const std::vector<std::uint64_t>& elements, std::uint64_t t,
                             const EngineOptions& opts) {
    Instance instance;
    instance.elements = elements;
    instance.targets = {t, t};
    instance.delta = opts.delta;
    const ValidatedInstance v = validate(instance, mode_for(opts.engine), opts.max_cells);
    EngineRun run = run_engine(v, opts);

    std::optional<RatioCandidate> best;
    run.tensor.for_each_true([&](std::span<const std::uint32_t> idx) {
        if (idx[0] == 0 || idx[1] == 0) return; // both subsets must be nonempty
        RatioCandidate cand;
        cand.witness = sorted_desc({idx[0], idx[1]});
        cand.ratio = Ratio{cand.witness[0], cand.witness[1]};
        if (!best || ratio_candidate_better(cand, *best)) best = std::move(cand);
    });
    if (!best)
        fail(ErrorCode::NoFeasiblePair,
             "no two disjoint nonempty subsets have sums at most " + std::to_string(t));

    SolveReport report;
    report.verdict = true;
    report.optimum_ratio = best->ratio;
    report.witness = best->witness;
    report.stats = std::move(run.stats);
    return report;
}

SolveReport k_subset_sum_ratio(const std::vector<std::uint64_t>& elements,
                               const std::vector<std::uint64_t>& targets,
                               const EngineOptions& opts) {
    Instance instance;
    instance.elements = elements;
    instance.targets = targets;
    instance.delta = opts.delta;
    const ValidatedInstance v = validate(instance, mode_for(opts.engine), opts.max_cells);
    EngineRun run = run_engine(v, opts);
    const std::size_t k = targets.size();

    std::optional<RatioCandidate> best;
    std::vector<std::uint64_t> sums;
    run.tensor.for_each_true([&](std::span<const std::uint32_t> idx) {
        sums.assign(idx.begin(), idx.end());
        for (std::size_t i = 0; i < k; ++i)
            if (sums[i] == 0 || sums[i] > targets[i]) return;
        RatioCandidate cand;
        cand.witness = sorted_desc(sums);
        cand.ratio = Ratio{cand.witness.front(), cand.witness.back()};
        if (!best || ratio_candidate_better(cand, *best)) best = std::move(cand);
    });
    if (!best)
        fail(ErrorCode::NoFeasibleTuple,
             "no " + std::to_string(k) + " disjoint nonempty subsets fit the targets");

    SolveReport report;
    report.verdict = true;
    report.optimum_ratio = best->ratio;
    report.witness = best->witness;
    report.stats = std::move(run.stats);
    return report;
}

SolveReport k_way_partition(const std::vector<std::uint64_t>& elements, std::size_t k,
                            Objective objective, const EngineOptions& opts) {
    if (k == 0) fail(ErrorCode::BadArgument, "need at least one part");
    unsigned __int128 total128 = 0;
    std::uint64_t max_z = 0;
    for (std::uint64_t z : elements) {
        total128 += z;
        max_z = std::max(max_z, z);
    }
    // every objective has an optimal solution whose parts stay at or below
    // max(Z) + ceil(total/k): a larger part implies another below average,
    // and moving any element between them cannot hurt
    const unsigned __int128 cap128 = max_z + (total128 + k - 1) / k;
    if (cap128 > std::numeric_limits<std::uint32_t>::max())
        fail(ErrorCode::TargetOverflow, "partition cap exceeds 2^32-1");
    const std::uint64_t cap = static_cast<std::uint64_t>(cap128);
    const std::uint64_t total = static_cast<std::uint64_t>(total128);

    Instance instance;
    instance.elements = elements;
    instance.targets.assign(k, cap);
    instance.delta = opts.delta;
    const ValidatedInstance v = validate(instance, mode_for(opts.engine), opts.max_cells);
    EngineRun run = run_engine(v, opts);

    const auto covers = [&](const std::vector<std::uint64_t>& sums) {
        std::uint64_t s = 0;
        for (std::uint64_t x : sums) s += x;
        return s == total;
    };

    std::optional<std::vector<std::uint64_t>> best_cell;
    std::optional<Ratio> best_ratio;
    std::optional<std::uint64_t> best_value;
    std::vector<std::uint64_t> sums;
    run.tensor.for_each_true([&](std::span<const std::uint32_t> idx) {
        sums.assign(idx.begin(), idx.end());
        if (!covers(sums)) return;
        std::vector<std::uint64_t> witness = sorted_desc(sums);
        const std::uint64_t mx = witness.front();
        const std::uint64_t mn = witness.back();
        switch (objective) {
            case Objective::MinRatio: {
                const Ratio r = cell_ratio(witness);
                const bool take = !best_cell || ratio_less(r, *best_ratio) ||
                                  (!ratio_less(*best_ratio, r) && witness < *best_cell);
                if (take) { best_ratio = r; best_cell = std::move(witness); }
                return;
            }
            case Objective::MinDiff: {
                const std::uint64_t value = mx - mn;
                const bool take = !best_cell || value < *best_value ||
                                  (value == *best_value && witness < *best_cell);
                if (take) { best_value = value; best_cell = std::move(witness); }
                return;
            }
            case Objective::MaxMin: {
                const bool take = !best_cell || mn > *best_value ||
                                  (mn == *best_value && witness < *best_cell);
                if (take) { best_value = mn; best_cell = std::move(witness); }
                return;
            }
            case Objective::MinMax: {
                const bool take = !best_cell || mx < *best_value ||
                                  (mx == *best_value && witness < *best_cell);
                if (take) { best_value = mx; best_cell = std::move(witness); }
                return;
            }
        }
    });
    if (!best_cell)
        fail(ErrorCode::NoFeasibleTuple, "no covering partition found within the cap");

    SolveReport report;
    report.verdict = true;
    if (objective == Objective::MinRatio) report.optimum_ratio = best_ratio;
    else report.optimum = best_value;
    report.witness = std::move(best_cell);
    report.stats = std::move(run.stats);
    return report;
}

SolveReport multiple_subset_sum(const std::vector<std::uint64_t>& elements,
                                const std::vector<std::uint64_t>& targets,
                                const EngineOptions& opts) {
    Instance instance;
    instance.elements = elements;
    instance.targets = targets;
    instance.delta = opts.delta;
    const ValidatedInstance v = validate(instance, mode_for(opts.engine), opts.max_cells);
    EngineRun run = run_engine(v, opts);
    const std::size_t k = targets.size();

    std::vector<std::uint64_t> best_cell;
    std::uint64_t best_sum = 0;
    bool found = false;
    std::vector<std::uint64_t> sums;
    run.tensor.for_each_true([&](std::span<const std::uint32_t> idx) {
        sums.assign(idx.begin(), idx.end());
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (sums[i] > targets[i]) return;
            s += sums[i];
        }
        if (!found || s > best_sum || (s == best_sum && sums < best_cell)) {
            found = true;
            best_sum = s;
            best_cell = sums;
        }
    });
    // the all-empty family is always present, so `found` cannot be false for
    // engines that include the origin; guard anyway
    SolveReport report;
    report.verdict = true;
    report.optimum = found ? best_sum : 0;
    report.witness = found ? best_cell : std::vector<std::uint64_t>(k, 0);
    report.stats = std::move(run.stats);
    return report;
}

} // namespace kss

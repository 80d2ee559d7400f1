#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kss/applications.hpp"
#include "kss/instance.hpp"
#include "kss/oracle.hpp"

namespace py = pybind11;

namespace {

using kss::Engine;
using kss::EngineOptions;
using kss::Instance;
using kss::Objective;
using kss::SolveReport;
using kss::SumsetStrategy;

Engine parse_engine(const std::string& s) {
    if (s == "dp") return Engine::Dp;
    if (s == "det") return Engine::Deterministic;
    if (s == "rand") return Engine::Randomized;
    kss::fail(kss::ErrorCode::BadArgument,
              "unknown engine '" + s + "' (expected dp, det or rand)");
}

SumsetStrategy parse_strategy(const std::string& s) {
    if (s == "auto") return SumsetStrategy::Auto;
    if (s == "sparse") return SumsetStrategy::SparsePairs;
    if (s == "shift") return SumsetStrategy::ShiftOr;
    if (s == "ntt") return SumsetStrategy::Ntt;
    kss::fail(kss::ErrorCode::BadArgument,
              "unknown strategy '" + s + "' (expected auto, sparse, shift or ntt)");
}

Objective parse_objective(const std::string& s) {
    if (s == "diff") return Objective::MinDiff;
    if (s == "ratio") return Objective::MinRatio;
    if (s == "maxmin") return Objective::MaxMin;
    if (s == "minmax") return Objective::MinMax;
    kss::fail(kss::ErrorCode::BadArgument,
              "unknown objective '" + s + "' (expected diff, ratio, maxmin or minmax)");
}

EngineOptions make_options(const std::string& engine, std::optional<double> delta,
                           std::uint64_t seed, std::uint64_t max_cells,
                           const std::string& strategy, bool collect_timing) {
    EngineOptions opts;
    opts.engine = parse_engine(engine);
    opts.delta = delta;
    opts.seed = seed;
    opts.max_cells = max_cells;
    opts.strategy = parse_strategy(strategy);
    opts.collect_timing = collect_timing;
    return opts;
}

py::object ratio_to_py(const kss::Ratio& r) {
    py::dict d;
    d["num"] = r.num;
    d["den"] = r.den;
    d["value"] = r.value();
    return d;
}

py::dict report_to_py(const SolveReport& report) {
    py::dict d;
    d["verdict"] = report.verdict;
    if (report.optimum_ratio)
        d["optimum"] = ratio_to_py(*report.optimum_ratio);
    else if (report.optimum)
        d["optimum"] = *report.optimum;
    else
        d["optimum"] = py::none();
    d["witness"] = report.witness ? py::cast(*report.witness) : py::object(py::none());

    py::dict stats;
    stats["algorithm"] = report.stats.algorithm;
    stats["seed"] = report.stats.seed ? py::cast(*report.stats.seed) : py::object(py::none());
    stats["delta"] = report.stats.delta ? py::cast(*report.stats.delta) : py::object(py::none());
    stats["elapsed_ms"] = report.stats.elapsed_ms;
    stats["convolutions"] = report.stats.convolutions;
    stats["tensor_cells"] = report.stats.tensor_cells;
    stats["removed_elements"] = report.stats.removed_elements;
    d["stats"] = stats;
    return d;
}

Instance make_instance(const std::vector<std::uint64_t>& elements,
                       const std::vector<std::uint64_t>& targets,
                       const std::optional<std::vector<std::uint64_t>>& cardinalities,
                       std::optional<double> delta) {
    Instance inst;
    inst.elements = elements;
    inst.targets = targets;
    inst.cardinalities = cardinalities;
    inst.delta = delta;
    return inst;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact and randomized solvers for k disjoint subset-sum questions";
    m.attr("__version__") = "0.1.0";

    py::register_exception<kss::Error>(m, "Error");

    m.def(
        "decide",
        [](const std::vector<std::uint64_t>& elements,
           const std::vector<std::uint64_t>& targets,
           const std::optional<std::vector<std::uint64_t>>& cardinalities,
           const std::string& engine, std::optional<double> delta, std::uint64_t seed,
           std::uint64_t max_cells, const std::string& strategy, bool collect_timing) {
            const Instance inst = make_instance(elements, targets, cardinalities, delta);
            return report_to_py(kss::decide(
                inst, make_options(engine, delta, seed, max_cells, strategy, collect_timing)));
        },
        py::arg("elements"), py::arg("targets"), py::arg("cardinalities") = py::none(),
        py::kw_only(), py::arg("engine") = "det", py::arg("delta") = py::none(),
        py::arg("seed") = 0, py::arg("max_cells") = kss::kDefaultMaxCells,
        py::arg("strategy") = "auto", py::arg("collect_timing") = true,
        "Decide whether k pairwise disjoint subsets hit the targets exactly.");

    m.def(
        "subset_sum_ratio",
        [](const std::vector<std::uint64_t>& elements, std::uint64_t t,
           const std::string& engine, std::optional<double> delta, std::uint64_t seed,
           std::uint64_t max_cells, const std::string& strategy, bool collect_timing) {
            return report_to_py(kss::subset_sum_ratio(
                elements, t,
                make_options(engine, delta, seed, max_cells, strategy, collect_timing)));
        },
        py::arg("elements"), py::arg("t"), py::kw_only(), py::arg("engine") = "det",
        py::arg("delta") = py::none(), py::arg("seed") = 0,
        py::arg("max_cells") = kss::kDefaultMaxCells, py::arg("strategy") = "auto",
        py::arg("collect_timing") = true,
        "Smallest max/min sum ratio over two disjoint nonempty subsets with sums <= t.");

    m.def(
        "k_subset_sum_ratio",
        [](const std::vector<std::uint64_t>& elements,
           const std::vector<std::uint64_t>& targets, const std::string& engine,
           std::optional<double> delta, std::uint64_t seed, std::uint64_t max_cells,
           const std::string& strategy, bool collect_timing) {
            return report_to_py(kss::k_subset_sum_ratio(
                elements, targets,
                make_options(engine, delta, seed, max_cells, strategy, collect_timing)));
        },
        py::arg("elements"), py::arg("targets"), py::kw_only(), py::arg("engine") = "det",
        py::arg("delta") = py::none(), py::arg("seed") = 0,
        py::arg("max_cells") = kss::kDefaultMaxCells, py::arg("strategy") = "auto",
        py::arg("collect_timing") = true,
        "Smallest max/min sum ratio over k disjoint nonempty subsets bounded per target.");

    m.def(
        "k_way_partition",
        [](const std::vector<std::uint64_t>& elements, std::size_t k,
           const std::string& objective, const std::string& engine,
           std::optional<double> delta, std::uint64_t seed, std::uint64_t max_cells,
           const std::string& strategy, bool collect_timing) {
            return report_to_py(kss::k_way_partition(
                elements, k, parse_objective(objective),
                make_options(engine, delta, seed, max_cells, strategy, collect_timing)));
        },
        py::arg("elements"), py::arg("k"), py::arg("objective") = "diff", py::kw_only(),
        py::arg("engine") = "det", py::arg("delta") = py::none(), py::arg("seed") = 0,
        py::arg("max_cells") = kss::kDefaultMaxCells, py::arg("strategy") = "auto",
        py::arg("collect_timing") = true,
        "Partition all elements into k subsets optimizing diff, ratio, maxmin or minmax.");

    m.def(
        "multiple_subset_sum",
        [](const std::vector<std::uint64_t>& elements,
           const std::vector<std::uint64_t>& targets, const std::string& engine,
           std::optional<double> delta, std::uint64_t seed, std::uint64_t max_cells,
           const std::string& strategy, bool collect_timing) {
            return report_to_py(kss::multiple_subset_sum(
                elements, targets,
                make_options(engine, delta, seed, max_cells, strategy, collect_timing)));
        },
        py::arg("elements"), py::arg("targets"), py::kw_only(), py::arg("engine") = "det",
        py::arg("delta") = py::none(), py::arg("seed") = 0,
        py::arg("max_cells") = kss::kDefaultMaxCells, py::arg("strategy") = "auto",
        py::arg("collect_timing") = true,
        "Largest combined sum of k disjoint subsets with per-target bounds.");

    m.def(
        "realizable_tuples",
        [](const std::vector<std::uint64_t>& elements,
           const std::vector<std::uint64_t>& targets,
           const std::optional<std::vector<std::uint64_t>>& cardinalities,
           const std::string& engine, std::optional<double> delta, std::uint64_t seed,
           std::uint64_t max_cells, const std::string& strategy) {
            const Instance inst = make_instance(elements, targets, cardinalities, delta);
            const kss::ValidatedInstance v = kss::validate(
                inst,
                engine == "rand" ? kss::ValidationMode::Randomized
                                 : kss::ValidationMode::Deterministic,
                max_cells);
            kss::EngineRun run = kss::run_engine(
                v, make_options(engine, delta, seed, max_cells, strategy, false));
            py::list out;
            run.tensor.for_each_true([&](std::span<const std::uint32_t> idx) {
                py::tuple cell(idx.size());
                for (std::size_t i = 0; i < idx.size(); ++i) cell[i] = idx[i];
                out.append(cell);
            });
            return out;
        },
        py::arg("elements"), py::arg("targets"), py::arg("cardinalities") = py::none(),
        py::kw_only(), py::arg("engine") = "det", py::arg("delta") = py::none(),
        py::arg("seed") = 0, py::arg("max_cells") = kss::kDefaultMaxCells,
        py::arg("strategy") = "auto",
        "All realizable sum tuples (plus size tuples when constrained).");

    m.def(
        "validate_instance",
        [](const std::vector<std::uint64_t>& elements,
           const std::vector<std::uint64_t>& targets,
           const std::optional<std::vector<std::uint64_t>>& cardinalities,
           std::optional<double> delta, const std::string& engine) {
            const Instance inst = make_instance(elements, targets, cardinalities, delta);
            const kss::ValidatedInstance v = kss::validate(
                inst, engine == "rand" ? kss::ValidationMode::Randomized
                                       : kss::ValidationMode::Deterministic);
            py::dict d;
            d["elements"] = v.instance.elements;
            d["targets"] = v.instance.targets;
            d["cardinalities"] = v.instance.cardinalities
                                     ? py::cast(*v.instance.cardinalities)
                                     : py::object(py::none());
            d["original_n"] = v.original_n;
            d["removed_elements"] = v.removed_elements;
            d["trivially_false"] = v.trivially_false;
            return d;
        },
        py::arg("elements"), py::arg("targets"), py::arg("cardinalities") = py::none(),
        py::arg("delta") = py::none(), py::arg("engine") = "det",
        "Normalize and range-check an instance, dropping oversize elements.");
}

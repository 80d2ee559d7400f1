#include <ostream>

#include <nlohmann/json.hpp>

#include "kss/cli.hpp"
#include "kss/tensor.hpp"

namespace kss::cli {

using ordered_json = nlohmann::ordered_json;

std::string report_to_json(const SolveReport& report, const CliInstance& ci) {
    ordered_json j;
    j["verdict"] = report.verdict;
    if (report.optimum_ratio) {
        ordered_json r;
        r["num"] = report.optimum_ratio->num;
        r["den"] = report.optimum_ratio->den;
        r["value"] = report.optimum_ratio->value();
        j["optimum"] = std::move(r);
    } else if (report.optimum) {
        j["optimum"] = *report.optimum;
    } else {
        j["optimum"] = nullptr;
    }
    j["witness"] = report.witness ? ordered_json(*report.witness) : ordered_json(nullptr);

    ordered_json stats;
    stats["algorithm"] = report.stats.algorithm;
    stats["seed"] = report.stats.seed ? ordered_json(*report.stats.seed) : ordered_json(nullptr);
    stats["delta"] = report.stats.delta ? ordered_json(*report.stats.delta) : ordered_json(nullptr);
    stats["elapsed_ms"] = report.stats.elapsed_ms;
    stats["convolutions"] = report.stats.convolutions;
    stats["tensor_cells"] = report.stats.tensor_cells;
    stats["removed_elements"] = report.stats.removed_elements;
    j["stats"] = std::move(stats);

    ordered_json inst;
    inst["problem"] = ci.problem;
    inst["elements"] = ci.instance.elements;
    inst["k"] = ci.k ? ci.k : ci.instance.targets.size();
    inst["targets"] = ci.instance.targets;
    inst["cardinalities"] = ci.instance.cardinalities ? ordered_json(*ci.instance.cardinalities)
                                                      : ordered_json(nullptr);
    inst["objective"] = ci.objective ? ordered_json(*ci.objective) : ordered_json(nullptr);
    j["instance"] = std::move(inst);
    return j.dump(2) + "\n";
}

void write_tuples_csv(std::ostream& out, const SumTensor& tensor, std::size_t k) {
    const bool cards = tensor.rank() == 2 * k;
    for (std::size_t i = 0; i < k; ++i) out << (i ? "," : "") << 's' << (i + 1);
    if (cards)
        for (std::size_t i = 0; i < k; ++i) out << ",c" << (i + 1);
    out << '\n';
    tensor.for_each_true([&](std::span<const std::uint32_t> idx) {
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (i) out << ',';
            out << idx[i];
        }
        out << '\n';
    });
}

std::string bench_row_csv(const BenchRow& row) {
    std::string line;
    line += row.engine;
    line += ',';
    line += std::to_string(row.n);
    line += ',';
    line += std::to_string(row.t);
    line += ',';
    line += std::to_string(row.k);
    line += ',';
    line += std::to_string(row.seed);
    line += ',';
    line += std::to_string(row.elapsed_ms);
    line += ',';
    line += std::to_string(row.cells);
    line += ',';
    line += row.verdict ? "true" : "false";
    line += ',';
    line += row.status;
    return line;
}

} // namespace kss::cli

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kss/applications.hpp"
#include "kss/instance.hpp"

namespace kss::cli {

// One problem instance as exchanged through files: the decision instance
// plus the problem selector and optional generator provenance.
struct CliInstance {
    std::string problem = "kss"; // kss | ssr | kssr | partition | mss
    Instance instance;           // targets empty for partition (k alone applies)
    std::size_t k = 0;           // part count for partition
    std::optional<std::string> objective;  // partition only
    std::optional<std::uint64_t> gen_seed; // present when generated
    // planted certificate: element index lists and their sums
    std::optional<std::vector<std::vector<std::uint32_t>>> planted_subsets;
    std::optional<std::vector<std::uint64_t>> planted_sums;
};

CliInstance instance_from_json(const std::string& text);
std::string instance_to_json(const CliInstance& ci);

// Report serialization with a frozen field order; identical inputs and
// options yield byte-identical text (disable timing for bit-stable output).
std::string report_to_json(const SolveReport& report, const CliInstance& ci);

// True cells of a realizability tensor as CSV with header s1..sk[,c1..ck].
void write_tuples_csv(std::ostream& out, const SumTensor& tensor, std::size_t k);

struct GenerateSpec {
    std::size_t n = 8;
    std::size_t k = 2;
    std::uint64_t max_value = 50;
    std::uint64_t seed = 1;
    bool planted = true;
    bool constrained = false;
    std::string problem = "kss";
};

// Deterministic instance generator.  Planted mode embeds k disjoint subsets
// and uses their sums as targets (sizes as cardinalities when constrained),
// recording the certificate; otherwise targets are drawn uniformly below
// roughly half the average subset mass.
CliInstance generate_instance(const GenerateSpec& spec);

struct BenchRow {
    std::string engine;
    std::size_t n = 0;
    std::uint64_t t = 0;
    std::size_t k = 0;
    std::uint64_t seed = 0;
    std::uint64_t elapsed_ms = 0;
    std::uint64_t cells = 0;
    bool verdict = false;
    std::string status = "ok"; // ok | guard
};

inline constexpr const char* kBenchHeader = "engine,n,t,k,seed,elapsed_ms,cells,verdict,status";
std::string bench_row_csv(const BenchRow& row);

// Entry point used by the kss binary and the tests; args exclude argv[0].
// Exit codes: 0 solved, 2 invalid input, 3 resource guard tripped.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace kss::cli

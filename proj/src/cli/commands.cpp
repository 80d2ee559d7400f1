#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kss/cli.hpp"
#include "kss/oracle.hpp"
#include "kss/rng.hpp"

namespace kss::cli {

namespace {

Engine parse_engine(const std::string& s) {
    if (s == "dp") return Engine::Dp;
    if (s == "det") return Engine::Deterministic;
    if (s == "rand") return Engine::Randomized;
    fail(ErrorCode::BadArgument, "unknown engine '" + s + "' (expected dp, det or rand)");
}

SumsetStrategy parse_strategy(const std::string& s) {
    if (s == "auto") return SumsetStrategy::Auto;
    if (s == "sparse") return SumsetStrategy::SparsePairs;
    if (s == "shift") return SumsetStrategy::ShiftOr;
    if (s == "ntt") return SumsetStrategy::Ntt;
    fail(ErrorCode::BadArgument,
         "unknown strategy '" + s + "' (expected auto, sparse, shift or ntt)");
}

Objective parse_objective(const std::string& s) {
    if (s == "diff") return Objective::MinDiff;
    if (s == "ratio") return Objective::MinRatio;
    if (s == "maxmin") return Objective::MaxMin;
    if (s == "minmax") return Objective::MinMax;
    fail(ErrorCode::BadArgument,
         "unknown objective '" + s + "' (expected diff, ratio, maxmin or minmax)");
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(ErrorCode::BadArgument, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorCode::BadArgument, "cannot write '" + path + "'");
    f << text;
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::CapOverflowsMemory:
        case ErrorCode::InstanceTooLarge:
            return 3;
        default:
            return 2;
    }
}

struct RunArgs {
    std::string input_path;
    std::string output_path;
    std::string tuples_path;
    std::string problem;
    std::string engine = "det";
    std::string strategy = "auto";
    std::string objective;
    std::vector<std::uint64_t> elements;
    std::vector<std::uint64_t> targets;
    std::vector<std::uint64_t> cardinalities;
    std::optional<std::uint64_t> t;
    std::optional<std::size_t> k;
    std::optional<double> delta;
    std::optional<std::uint32_t> force_b;
    std::uint64_t seed = 0;
    std::uint64_t max_cells = kDefaultMaxCells;
    bool no_timing = false;
    bool elements_set = false;
};

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err) {
    CliInstance ci;
    if (!args.input_path.empty()) ci = instance_from_json(slurp(args.input_path));
    if (!args.problem.empty()) ci.problem = args.problem;
    if (args.elements_set) ci.instance.elements = args.elements;
    if (!args.targets.empty()) ci.instance.targets = args.targets;
    if (args.t) ci.instance.targets = {*args.t};
    if (!args.cardinalities.empty()) ci.instance.cardinalities = args.cardinalities;
    if (args.k) ci.k = *args.k;
    if (args.objective.size()) ci.objective = args.objective;
    if (args.delta) ci.instance.delta = args.delta;

    EngineOptions opts;
    opts.engine = parse_engine(args.engine);
    opts.strategy = parse_strategy(args.strategy);
    opts.delta = ci.instance.delta;
    opts.seed = args.seed;
    opts.max_cells = args.max_cells;
    opts.force_b = args.force_b;
    opts.collect_timing = !args.no_timing;

    if (!args.tuples_path.empty() && ci.problem != "kss")
        fail(ErrorCode::BadArgument, "--emit-tuples needs the plain decision problem");

    SolveReport report;
    try {
        if (ci.problem == "kss") {
            if (ci.instance.targets.empty())
                fail(ErrorCode::BadArgument, "the decision problem needs targets");
            ci.k = ci.instance.targets.size();
            const ValidatedInstance v =
                validate(ci.instance, opts.engine == Engine::Randomized
                                          ? ValidationMode::Randomized
                                          : ValidationMode::Deterministic,
                         opts.max_cells);
            EngineRun run = run_engine(v, opts);
            report.verdict = tensor_verdict(run.tensor, v);
            report.stats = std::move(run.stats);
            if (!args.tuples_path.empty()) {
                std::ofstream f(args.tuples_path, std::ios::binary);
                if (!f) fail(ErrorCode::BadArgument, "cannot write '" + args.tuples_path + "'");
                write_tuples_csv(f, run.tensor, v.instance.k());
            }
        } else if (ci.problem == "ssr") {
            if (ci.instance.targets.size() != 1)
                fail(ErrorCode::BadArgument, "subset sum ratio needs exactly one bound t");
            ci.k = 2;
            report = subset_sum_ratio(ci.instance.elements, ci.instance.targets[0], opts);
        } else if (ci.problem == "kssr") {
            if (ci.instance.targets.empty())
                fail(ErrorCode::BadArgument, "k-subset sum ratio needs targets");
            ci.k = ci.instance.targets.size();
            report = k_subset_sum_ratio(ci.instance.elements, ci.instance.targets, opts);
        } else if (ci.problem == "partition") {
            if (ci.k == 0)
                fail(ErrorCode::BadArgument, "partition needs a positive part count k");
            if (!ci.objective) ci.objective = "diff";
            report = k_way_partition(ci.instance.elements, ci.k,
                                     parse_objective(*ci.objective), opts);
        } else if (ci.problem == "mss") {
            if (ci.instance.targets.empty())
                fail(ErrorCode::BadArgument, "multiple subset sum needs targets");
            ci.k = ci.instance.targets.size();
            report = multiple_subset_sum(ci.instance.elements, ci.instance.targets, opts);
        } else {
            fail(ErrorCode::BadArgument, "unknown problem '" + ci.problem + "'");
        }
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoFeasiblePair && e.code() != ErrorCode::NoFeasibleTuple)
            throw;
        // an infeasible optimization question is a solved "no", not a failure
        err << e.what() << '\n';
        report = SolveReport{};
        report.verdict = false;
    }
    emit(report_to_json(report, ci), args.output_path, out);
    return 0;
}

struct GenerateArgs {
    GenerateSpec spec;
    std::string mode = "planted";
    std::string output_path;
};

int cmd_generate(GenerateArgs& args, std::ostream& out) {
    if (args.mode == "planted") args.spec.planted = true;
    else if (args.mode == "random") args.spec.planted = false;
    else fail(ErrorCode::BadArgument, "unknown mode '" + args.mode + "'");
    const CliInstance ci = generate_instance(args.spec);
    emit(instance_to_json(ci), args.output_path, out);
    return 0;
}

struct BenchArgs {
    std::vector<std::size_t> n_list{100};
    std::vector<std::uint64_t> t_list{1000};
    std::vector<std::size_t> k_list{2};
    std::vector<std::string> engines{"det"};
    std::vector<std::uint64_t> seeds{1};
    std::uint64_t max_cells = kDefaultMaxCells;
    std::string output_path;
};

int cmd_bench(const BenchArgs& args, std::ostream& out) {
    std::string text = std::string(kBenchHeader) + "\n";
    std::uint64_t combo = 0;
    for (std::size_t n : args.n_list)
        for (std::uint64_t t : args.t_list)
            for (std::size_t k : args.k_list)
                for (const std::string& engine_name : args.engines)
                    for (std::uint64_t seed : args.seeds) {
                        if (t == 0) fail(ErrorCode::BadArgument, "bench needs t >= 1");
                        ++combo;
                        Instance inst;
                        Rng rng = derive_stream(seed, "bench", combo);
                        const std::uint64_t lo = std::max<std::uint64_t>(1, t / 2);
                        for (std::size_t i = 0; i < n; ++i)
                            inst.elements.push_back(rng.range(1, lo));
                        for (std::size_t i = 0; i < k; ++i)
                            inst.targets.push_back(rng.range(lo, t));

                        EngineOptions opts;
                        opts.engine = parse_engine(engine_name);
                        opts.seed = seed;
                        opts.max_cells = args.max_cells;

                        BenchRow row;
                        row.engine = engine_name;
                        row.n = n;
                        row.t = t;
                        row.k = k;
                        row.seed = seed;
                        try {
                            const SolveReport report = decide(inst, opts);
                            row.elapsed_ms = report.stats.elapsed_ms;
                            row.cells = report.stats.tensor_cells;
                            row.verdict = report.verdict;
                        } catch (const Error& e) {
                            if (exit_code_for(e) != 3) throw;
                            row.status = "guard";
                        }
                        text += bench_row_csv(row) + "\n";
                    }
    emit(text, args.output_path, out);
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact and randomized solvers for k disjoint subset-sum questions"};
    app.require_subcommand(1);

    RunArgs ra;
    CLI::App* runc = app.add_subcommand("run", "solve one instance and print a JSON report");
    runc->add_option("--input", ra.input_path, "instance JSON file");
    runc->add_option("--output", ra.output_path, "write the report here instead of stdout");
    runc->add_option("--emit-tuples", ra.tuples_path, "write realizable tuples CSV here");
    runc->add_option("--problem", ra.problem, "kss | ssr | kssr | partition | mss");
    runc->add_option("--engine", ra.engine, "dp | det | rand (default det)");
    runc->add_option("--strategy", ra.strategy, "sumset strategy: auto | sparse | shift | ntt");
    runc->add_option("--objective", ra.objective, "partition objective: diff | ratio | maxmin | minmax");
    runc->add_option("--elements", ra.elements, "comma separated element values")
        ->delimiter(',')
        ->each([&ra](const std::string&) { ra.elements_set = true; });
    runc->add_option("--targets", ra.targets, "comma separated target sums")->delimiter(',');
    runc->add_option("--cardinalities", ra.cardinalities, "comma separated subset sizes")
        ->delimiter(',');
    runc->add_option("--t", ra.t, "single bound (subset sum ratio)");
    runc->add_option("--k", ra.k, "part count (partition)");
    runc->add_option("--delta", ra.delta, "randomized failure bound");
    runc->add_option("--seed", ra.seed, "randomized engine seed");
    runc->add_option("--max-cells", ra.max_cells, "tensor cell budget");
    runc->add_option("--force-b", ra.force_b, "override the congruence class count");
    runc->add_flag("--no-timing", ra.no_timing, "report elapsed_ms as 0 for bit-stable output");

    GenerateArgs ga;
    CLI::App* genc = app.add_subcommand("generate", "emit a random instance as JSON");
    genc->add_option("--n", ga.spec.n, "element count");
    genc->add_option("--k", ga.spec.k, "subset count");
    genc->add_option("--max-value", ga.spec.max_value, "elements drawn from [1, max-value]");
    genc->add_option("--seed", ga.spec.seed, "generator seed");
    genc->add_option("--mode", ga.mode, "planted | random (default planted)");
    genc->add_flag("--constrained", ga.spec.constrained, "attach cardinality constraints");
    genc->add_option("--problem", ga.spec.problem, "kss | ssr | kssr | partition | mss");
    genc->add_option("--output", ga.output_path, "write the instance here instead of stdout");

    BenchArgs ba;
    CLI::App* benchc = app.add_subcommand("bench", "sweep engines over generated instances");
    benchc->add_option("--n-list", ba.n_list, "element counts")->delimiter(',');
    benchc->add_option("--t-list", ba.t_list, "target scales")->delimiter(',');
    benchc->add_option("--k-list", ba.k_list, "subset counts")->delimiter(',');
    benchc->add_option("--engines", ba.engines, "engines to run")->delimiter(',');
    benchc->add_option("--seeds", ba.seeds, "seeds per point")->delimiter(',');
    benchc->add_option("--max-cells", ba.max_cells, "tensor cell budget");
    benchc->add_option("--output", ba.output_path, "write the CSV here instead of stdout");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("kss");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (app.got_subcommand(runc)) return cmd_run(ra, out, err);
        if (app.got_subcommand(genc)) return cmd_generate(ga, out);
        if (app.got_subcommand(benchc)) return cmd_bench(ba, out);
        err << "no subcommand selected\n";
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << e.what() << '\n';
        return 2;
    }
}

} // namespace kss::cli

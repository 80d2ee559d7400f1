#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "kss/cli.hpp"
#include "kss/rng.hpp"

namespace kss::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

const std::set<std::string> kProblems = {"kss", "ssr", "kssr", "partition", "mss"};

std::vector<std::uint64_t> u64_array(const ordered_json& j, const char* field) {
    if (!j.is_array())
        fail(ErrorCode::BadArgument, std::string(field) + " must be an array of integers");
    std::vector<std::uint64_t> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number_unsigned())
            fail(ErrorCode::BadArgument,
                 std::string(field) + " must contain nonnegative integers");
        out.push_back(v.get<std::uint64_t>());
    }
    return out;
}

} // namespace

CliInstance instance_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::BadArgument, std::string("instance is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) fail(ErrorCode::BadArgument, "instance must be a JSON object");

    CliInstance ci;
    if (j.contains("problem")) {
        if (!j["problem"].is_string())
            fail(ErrorCode::BadArgument, "problem must be a string");
        ci.problem = j["problem"].get<std::string>();
    }
    if (!kProblems.count(ci.problem))
        fail(ErrorCode::BadArgument, "unknown problem '" + ci.problem + "'");

    if (!j.contains("elements"))
        fail(ErrorCode::BadArgument, "instance needs an elements array");
    ci.instance.elements = u64_array(j["elements"], "elements");

    if (j.contains("targets") && !j["targets"].is_null())
        ci.instance.targets = u64_array(j["targets"], "targets");
    if (j.contains("t") && !j["t"].is_null()) {
        if (!j["t"].is_number_unsigned())
            fail(ErrorCode::BadArgument, "t must be a nonnegative integer");
        if (ci.instance.targets.empty())
            ci.instance.targets = {j["t"].get<std::uint64_t>()};
    }
    if (j.contains("cardinalities") && !j["cardinalities"].is_null())
        ci.instance.cardinalities = u64_array(j["cardinalities"], "cardinalities");
    if (j.contains("delta") && !j["delta"].is_null()) {
        if (!j["delta"].is_number())
            fail(ErrorCode::BadArgument, "delta must be a number");
        ci.instance.delta = j["delta"].get<double>();
    }
    if (j.contains("k") && !j["k"].is_null()) {
        if (!j["k"].is_number_unsigned())
            fail(ErrorCode::BadArgument, "k must be a nonnegative integer");
        ci.k = j["k"].get<std::size_t>();
    } else {
        ci.k = ci.instance.targets.size();
    }
    if (j.contains("objective") && !j["objective"].is_null()) {
        if (!j["objective"].is_string())
            fail(ErrorCode::BadArgument, "objective must be a string");
        ci.objective = j["objective"].get<std::string>();
    }
    if (j.contains("seed") && j["seed"].is_number_unsigned())
        ci.gen_seed = j["seed"].get<std::uint64_t>();
    if (j.contains("certificate") && j["certificate"].is_object()) {
        const auto& cert = j["certificate"];
        if (cert.contains("subsets") && cert["subsets"].is_array()) {
            std::vector<std::vector<std::uint32_t>> subsets;
            for (const auto& s : cert["subsets"]) {
                std::vector<std::uint32_t> one;
                for (const auto& v : s) one.push_back(v.get<std::uint32_t>());
                subsets.push_back(std::move(one));
            }
            ci.planted_subsets = std::move(subsets);
        }
        if (cert.contains("sums") && cert["sums"].is_array())
            ci.planted_sums = u64_array(cert["sums"], "certificate.sums");
    }
    return ci;
}

std::string instance_to_json(const CliInstance& ci) {
    ordered_json j;
    j["problem"] = ci.problem;
    j["elements"] = ci.instance.elements;
    j["k"] = ci.k ? ci.k : ci.instance.targets.size();
    j["targets"] = ci.instance.targets;
    if (ci.instance.cardinalities)
        j["cardinalities"] = *ci.instance.cardinalities;
    else
        j["cardinalities"] = nullptr;
    if (ci.instance.delta)
        j["delta"] = *ci.instance.delta;
    else
        j["delta"] = nullptr;
    if (ci.objective)
        j["objective"] = *ci.objective;
    else
        j["objective"] = nullptr;
    if (ci.gen_seed)
        j["seed"] = *ci.gen_seed;
    else
        j["seed"] = nullptr;
    if (ci.planted_subsets) {
        ordered_json cert;
        cert["subsets"] = *ci.planted_subsets;
        cert["sums"] = ci.planted_sums ? ordered_json(*ci.planted_sums) : ordered_json(nullptr);
        j["certificate"] = std::move(cert);
    } else {
        j["certificate"] = nullptr;
    }
    return j.dump(2) + "\n";
}

CliInstance generate_instance(const GenerateSpec& spec) {
    if (spec.max_value == 0)
        fail(ErrorCode::BadArgument, "max-value must be positive");
    if (spec.k == 0)
        fail(ErrorCode::BadArgument, "k must be positive");
    if (!kProblems.count(spec.problem))
        fail(ErrorCode::BadArgument, "unknown problem '" + spec.problem + "'");

    Rng rng = derive_stream(spec.seed, "generate");
    CliInstance ci;
    ci.problem = spec.problem;
    ci.k = spec.k;
    ci.gen_seed = spec.seed;
    ci.instance.elements.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i)
        ci.instance.elements.push_back(rng.range(1, spec.max_value));

    if (spec.problem == "partition") return ci; // elements and k suffice

    if (spec.planted) {
        std::vector<std::uint32_t> perm(spec.n);
        for (std::size_t i = 0; i < spec.n; ++i) perm[i] = static_cast<std::uint32_t>(i);
        for (std::size_t i = spec.n; i > 1; --i)
            std::swap(perm[i - 1], perm[rng.below(i)]);

        const std::uint64_t size_cap =
            std::max<std::uint64_t>(1, spec.n / (2 * spec.k));
        std::size_t cursor = 0;
        std::vector<std::vector<std::uint32_t>> subsets;
        std::vector<std::uint64_t> sums;
        std::vector<std::uint64_t> sizes;
        for (std::size_t i = 0; i < spec.k; ++i) {
            std::uint64_t want = 1 + rng.below(size_cap);
            want = std::min<std::uint64_t>(want, spec.n - cursor);
            std::vector<std::uint32_t> subset(perm.begin() + cursor,
                                              perm.begin() + cursor + want);
            cursor += static_cast<std::size_t>(want);
            std::sort(subset.begin(), subset.end());
            std::uint64_t sum = 0;
            for (std::uint32_t e : subset) sum += ci.instance.elements[e];
            sums.push_back(sum);
            sizes.push_back(subset.size());
            subsets.push_back(std::move(subset));
        }
        ci.instance.targets = sums;
        if (spec.constrained) ci.instance.cardinalities = sizes;
        ci.planted_subsets = std::move(subsets);
        ci.planted_sums = std::move(sums);
    } else {
        std::uint64_t total = 0;
        for (std::uint64_t z : ci.instance.elements) total += z;
        const std::uint64_t hi = std::max<std::uint64_t>(1, total / (2 * spec.k));
        for (std::size_t i = 0; i < spec.k; ++i)
            ci.instance.targets.push_back(rng.below(hi + 1));
        if (spec.constrained) {
            const std::uint64_t ck = std::max<std::uint64_t>(1, spec.n / spec.k);
            std::vector<std::uint64_t> cards;
            for (std::size_t i = 0; i < spec.k; ++i) cards.push_back(rng.below(ck + 1));
            ci.instance.cardinalities = std::move(cards);
        }
    }
    if (spec.problem == "ssr" && ci.instance.targets.size() > 1) {
        // the ratio bound must admit every planted sum
        const std::uint64_t t =
            *std::max_element(ci.instance.targets.begin(), ci.instance.targets.end());
        ci.instance.targets = {t};
    }
    return ci;
}

} // namespace kss::cli

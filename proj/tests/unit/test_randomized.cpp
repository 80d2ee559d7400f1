#include <algorithm>
#include <optional>
#include <vector>

#include <doctest.h>

#include "kss/oracle.hpp"
#include "kss/randomized.hpp"
#include "kss/rng.hpp"
#include "support/generators.hpp"

using namespace kss;

namespace {

// Assignment-enumeration reference over a uniform box: sums capped at t per
// axis, subsets larger than card_cap dropped (matching capped truncation).
SumTensor family_tensor(const std::vector<std::uint64_t>& z, std::size_t k,
                        std::uint32_t t, std::optional<std::uint32_t> card_cap) {
    SumTensor out = card_cap
        ? SumTensor::with_cards(std::vector<std::uint32_t>(k, t),
                                std::vector<std::uint32_t>(k, *card_cap))
        : SumTensor::sums(std::vector<std::uint32_t>(k, t));
    std::uint64_t families = 1;
    for (std::size_t i = 0; i < z.size(); ++i) families *= (k + 1);
    std::vector<std::uint32_t> cell(out.rank());
    for (std::uint64_t code = 0; code < families; ++code) {
        std::vector<std::uint64_t> sums(k, 0), cards(k, 0);
        std::uint64_t c = code;
        for (std::size_t i = 0; i < z.size(); ++i) {
            const std::uint64_t a = c % (k + 1);
            c /= (k + 1);
            if (a > 0) {
                sums[a - 1] += z[i];
                cards[a - 1] += 1;
            }
        }
        bool fits = true;
        for (std::size_t i = 0; i < k; ++i) {
            if (sums[i] > t) fits = false;
            if (card_cap && cards[i] > *card_cap) fits = false;
        }
        if (!fits) continue;
        for (std::size_t i = 0; i < k; ++i) {
            cell[i] = static_cast<std::uint32_t>(sums[i]);
            if (card_cap) cell[k + i] = static_cast<std::uint32_t>(cards[i]);
        }
        out.set(std::span<const std::uint32_t>(cell.data(), cell.size()));
    }
    return out;
}

bool subset_of(const SumTensor& small, const SumTensor& big) {
    bool ok = true;
    small.for_each_true([&](std::span<const std::uint32_t> idx) {
        if (!big.get(idx)) ok = false;
    });
    return ok;
}

} // namespace

TEST_SUITE("randomized") {

TEST_CASE("round count formula, pinned values") {
    CHECK(color_coding_rounds(2, 0.05) == 47);
    CHECK(color_coding_rounds(2, 0.125) == 33);
    CHECK(color_coding_rounds(1, 0.25) == 5); // ceil(log_{4/3} 4) = ceil(4.82)
    // each extra subset must also land split, so more rounds are needed
    CHECK(color_coding_rounds(4, 0.05) >= color_coding_rounds(3, 0.05));
    // and a stricter failure bound never costs fewer rounds
    CHECK(color_coding_rounds(2, 0.01) >= color_coding_rounds(2, 0.05));
}

TEST_CASE("partition draws are deterministic and in range") {
    PartitionScheme a = PartitionScheme::draw(50, 9, 1234);
    PartitionScheme b = PartitionScheme::draw(50, 9, 1234);
    CHECK(a.assignment == b.assignment);
    CHECK(a.assignment.size() == 50);
    CHECK(a.bucket_count == 9);
    for (std::uint32_t v : a.assignment) CHECK(v < 9);

    PartitionScheme c = PartitionScheme::draw(50, 9, 1235);
    CHECK(a.assignment != c.assignment);
}

TEST_CASE("grouping follows the assignment") {
    PartitionScheme s;
    s.bucket_count = 3;
    s.assignment = {2, 0, 2, 1};
    const std::vector<std::uint64_t> z = {10, 20, 30, 40};
    auto groups = s.group(z);
    REQUIRE(groups.size() == 3);
    CHECK(groups[0] == std::vector<std::uint64_t>{20});
    CHECK(groups[1] == std::vector<std::uint64_t>{40});
    CHECK(groups[2] == std::vector<std::uint64_t>{10, 30});
}

TEST_CASE("split detection checks bucket-distinctness inside each subset") {
    PartitionScheme s;
    s.bucket_count = 4;
    s.assignment = {0, 1, 2, 0};
    const std::vector<std::vector<std::uint32_t>> good = {{0, 1, 2}};
    const std::vector<std::vector<std::uint32_t>> bad = {{0, 3}};
    const std::vector<std::vector<std::uint32_t>> pair = {{0, 1}, {2, 3}};
    CHECK(s.splits(good));
    CHECK_FALSE(s.splits(bad));
    CHECK(s.splits(pair)); // cross-subset collisions are allowed
}

TEST_CASE("dyadic bands, pinned example") {
    const std::vector<std::uint64_t> z = {1, 10, 25, 26, 50, 51, 99, 100, 101};
    LayerDecomposition d = LayerDecomposition::make(z, 100);
    REQUIRE(d.layers.size() == 4); // ceil(log2 9) = 4 bands
    CHECK(d.size_bounds == std::vector<std::uint64_t>{2, 4, 8, 16});
    CHECK(d.layers[0] == std::vector<std::uint64_t>{51, 99, 100}); // (50, 100]
    CHECK(d.layers[1] == std::vector<std::uint64_t>{26, 50});      // (25, 50]
    CHECK(d.layers[2] == std::vector<std::uint64_t>{25});          // (12.5, 25]
    CHECK(d.layers[3] == std::vector<std::uint64_t>{1, 10});       // the rest
}

TEST_CASE("single-element color coding is exact") {
    const std::vector<std::uint64_t> z = {3};
    SumTensor t = color_coding(z, 10, 1, 2, 0.125, 42);
    CHECK(t.get({0, 0}));
    CHECK(t.get({3, 0}));
    CHECK(t.get({0, 3}));
    CHECK_FALSE(t.get({3, 3}));
    CHECK(t.popcount() == 3);
}

TEST_CASE("zero subset size yields the origin only") {
    const std::vector<std::uint64_t> z = {3, 4};
    SumTensor t = color_coding(z, 10, 0, 2, 0.125, 42);
    CHECK(t.origin());
    CHECK(t.popcount() == 1);
}

TEST_CASE("color coding is sound: no phantom cells") {
    Rng rng(6060);
    for (int round = 0; round < 25; ++round) {
        const std::size_t n = 1 + rng.below(8);
        const std::size_t k = 2 + rng.below(2);
        std::vector<std::uint64_t> z(n);
        for (auto& v : z) v = 1 + rng.below(20);
        const std::uint32_t t = static_cast<std::uint32_t>(10 + rng.below(30));
        SumTensor ref = family_tensor(z, k, t, std::nullopt);
        SumTensor got = color_coding(z, t, 3, k, 0.05, rng.next());
        CHECK(subset_of(got, ref));
    }
}

TEST_CASE("layer solver and full engine are sound") {
    Rng rng(6061);
    for (int round = 0; round < 20; ++round) {
        const std::size_t n = 1 + rng.below(8);
        const std::size_t k = 2;
        std::vector<std::uint64_t> z(n);
        for (auto& v : z) v = 1 + rng.below(25);
        const std::uint32_t t = static_cast<std::uint32_t>(10 + rng.below(40));
        SumTensor ref = family_tensor(z, k, t, std::nullopt);
        SumTensor layered = color_coding_layer(z, t, n + 1, k, 0.125, rng.next());
        CHECK(subset_of(layered, ref));
        SumTensor full = k_subset_sum_rand(z, t, k, 0.125, rng.next());
        CHECK(subset_of(full, ref));
    }
}

TEST_CASE("cardinality-aware solvers are sound and track sizes") {
    Rng rng(6062);
    for (int round = 0; round < 15; ++round) {
        const std::size_t n = 1 + rng.below(7);
        const std::size_t k = 2;
        const std::uint32_t cap = static_cast<std::uint32_t>(1 + rng.below(3));
        std::vector<std::uint64_t> z(n);
        for (auto& v : z) v = 1 + rng.below(20);
        const std::uint32_t t = static_cast<std::uint32_t>(10 + rng.below(30));
        SumTensor ref = family_tensor(z, k, t, cap);
        SumTensor got = card_color_coding_layer(z, t, cap, k, 0.125, rng.next());
        REQUIRE(got.rank() == 2 * k);
        CHECK(subset_of(got, ref));
    }
}

TEST_CASE("planted instances are found at the promised rate") {
    Rng rng(6063);
    int hits = 0, trials = 0;
    for (int i = 0; i < 25; ++i) {
        testing::Planted p = testing::planted_instance(rng, 8 + rng.below(4), 1, 20, 2, 3, false);
        const std::uint32_t t = static_cast<std::uint32_t>(p.instance.max_target());
        std::vector<std::uint32_t> cell(2);
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            SumTensor got = k_subset_sum_rand(p.instance.elements, t, 2, 0.125, seed * 977 + i);
            for (std::size_t a = 0; a < 2; ++a)
                cell[a] = static_cast<std::uint32_t>(p.instance.targets[a]);
            hits += got.get(std::span<const std::uint32_t>(cell.data(), 2));
            ++trials;
        }
    }
    // per-trial failure is at most 1/8; this corpus is fixed, so the check
    // is reproducible, and 75% leaves room well below the expected 87.5%
    CHECK(hits >= trials * 3 / 4);
}

TEST_CASE("constrained planted instances are found too") {
    Rng rng(6064);
    int hits = 0, trials = 0;
    for (int i = 0; i < 20; ++i) {
        testing::Planted p = testing::planted_instance(rng, 8 + rng.below(3), 1, 15, 2, 3, true);
        Instance inst = p.instance;
        inst.delta = 0.125;
        ValidatedInstance v = validate(inst, ValidationMode::Randomized);
        SumTensor got = solve_randomized(v, 0.125, 31 * i + 5);
        REQUIRE(got.rank() == 4);
        std::vector<std::uint32_t> cell(4);
        for (std::size_t a = 0; a < 2; ++a) {
            cell[a] = static_cast<std::uint32_t>(inst.targets[a]);
            cell[2 + a] = static_cast<std::uint32_t>((*inst.cardinalities)[a]);
        }
        hits += got.get(std::span<const std::uint32_t>(cell.data(), 4));
        ++trials;
    }
    CHECK(hits >= trials * 3 / 4);
}

TEST_CASE("failure bound is range-checked") {
    const std::vector<std::uint64_t> z = {1, 2, 3};
    CHECK_THROWS_AS(color_coding_layer(z, 10, 4, 2, 0.3, 1), Error);
    CHECK_THROWS_AS(k_subset_sum_rand(z, 10, 2, 0.0, 1), Error);
    CHECK_THROWS_AS(k_subset_sum_rand(z, 10, 2, 0.126, 1), Error);
    try {
        k_subset_sum_rand(z, 10, 2, 0.5, 1);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DeltaOutOfRange);
    }
}

TEST_CASE("same seed, same tensor") {
    const std::vector<std::uint64_t> z = {4, 7, 9, 12, 15, 18};
    SumTensor a = k_subset_sum_rand(z, 40, 2, 0.125, 9001);
    SumTensor b = k_subset_sum_rand(z, 40, 2, 0.125, 9001);
    CHECK(a == b);
    SumTensor c = card_color_coding_layer(z, 40, 2, 2, 0.125, 777);
    SumTensor d = card_color_coding_layer(z, 40, 2, 2, 0.125, 777);
    CHECK(c == d);
}

TEST_CASE("engine dispatch shapes the tensor by constraint") {
    Instance inst;
    inst.elements = {2, 3, 5, 8};
    inst.targets = {10, 7};
    ValidatedInstance v = validate(inst, ValidationMode::Randomized);
    SumTensor flat = solve_randomized(v, 0.125, 3);
    CHECK(flat.rank() == 2);
    CHECK(flat.caps() == std::vector<std::uint32_t>{10, 10});

    inst.cardinalities = std::vector<std::uint64_t>{2, 1};
    ValidatedInstance c = validate(inst, ValidationMode::Randomized);
    SumTensor sized = solve_randomized(c, 0.125, 3);
    CHECK(sized.rank() == 4);
    CHECK(sized.caps() == std::vector<std::uint32_t>{10, 10, 2, 2});
}

} // TEST_SUITE

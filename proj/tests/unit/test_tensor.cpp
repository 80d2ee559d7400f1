#include <algorithm>
#include <set>
#include <vector>

#include <doctest.h>

#include "kss/rng.hpp"
#include "kss/tensor.hpp"

using namespace kss;

namespace {

using Cell = std::vector<std::uint32_t>;

std::set<Cell> cells_of(const SumTensor& t) {
    std::set<Cell> out;
    t.for_each_true([&](std::span<const std::uint32_t> idx) {
        out.insert(Cell(idx.begin(), idx.end()));
    });
    return out;
}

SumTensor random_bits(Rng& rng, const std::vector<std::uint32_t>& caps, std::size_t cells) {
    SumTensor t = SumTensor::sums(caps);
    Cell idx(caps.size());
    for (std::size_t i = 0; i < cells; ++i) {
        for (std::size_t a = 0; a < caps.size(); ++a)
            idx[a] = static_cast<std::uint32_t>(rng.below(caps[a] + 1));
        t.set(std::span<const std::uint32_t>(idx.data(), idx.size()));
    }
    return t;
}

} // namespace

TEST_SUITE("tensor") {

TEST_CASE("set and get agree across word boundaries") {
    // caps straddling the 64-bit packing of the last axis
    for (std::uint32_t cap : {1u, 63u, 64u, 65u, 130u}) {
        SumTensor t = SumTensor::sums({2, cap});
        CHECK_FALSE(t.any());
        t.set({0, 0});
        t.set({2, cap});
        t.set({1, cap / 2});
        CHECK(t.get({0, 0}));
        CHECK(t.get({2, cap}));
        CHECK(t.get({1, cap / 2}));
        CHECK_FALSE(t.get({2, 0}));
        CHECK(t.popcount() == 3);
        CHECK(t.origin());
    }
}

TEST_CASE("for_each_true visits exactly the set cells") {
    Rng rng(2024);
    for (int round = 0; round < 20; ++round) {
        const std::vector<std::uint32_t> caps = {
            static_cast<std::uint32_t>(rng.below(6)),
            static_cast<std::uint32_t>(rng.below(70)),
        };
        std::set<Cell> expected;
        SumTensor t = SumTensor::sums(caps);
        for (int i = 0; i < 25; ++i) {
            Cell idx = {static_cast<std::uint32_t>(rng.below(caps[0] + 1)),
                        static_cast<std::uint32_t>(rng.below(caps[1] + 1))};
            expected.insert(idx);
            t.set(std::span<const std::uint32_t>(idx.data(), idx.size()));
        }
        CHECK(cells_of(t) == expected);
        CHECK(t.popcount() == expected.size());
    }
}

TEST_CASE("or_shifted matches a per-cell reference") {
    Rng rng(77);
    for (int round = 0; round < 60; ++round) {
        const std::size_t rank = 1 + rng.below(3);
        std::vector<std::uint32_t> src_caps(rank), dst_caps(rank), off(rank);
        for (std::size_t a = 0; a < rank; ++a) {
            src_caps[a] = static_cast<std::uint32_t>(rng.below(90));
            dst_caps[a] = static_cast<std::uint32_t>(rng.below(90));
            off[a] = static_cast<std::uint32_t>(rng.below(40));
        }
        SumTensor src = random_bits(rng, src_caps, 30);
        SumTensor dst = random_bits(rng, dst_caps, 10);

        std::set<Cell> expected = cells_of(dst);
        src.for_each_true([&](std::span<const std::uint32_t> idx) {
            Cell moved(rank);
            for (std::size_t a = 0; a < rank; ++a) {
                const std::uint64_t v = static_cast<std::uint64_t>(idx[a]) + off[a];
                if (v > dst_caps[a]) return;
                moved[a] = static_cast<std::uint32_t>(v);
            }
            expected.insert(moved);
        });

        dst.or_shifted(src, off);
        CHECK(cells_of(dst) == expected);
    }
}

TEST_CASE("or_shifted requires matching rank and roles") {
    SumTensor a = SumTensor::sums({4, 4});
    SumTensor b = SumTensor::sums({4});
    std::vector<std::uint32_t> off = {0, 0};
    CHECK_THROWS_AS(a.or_shifted(b, off), Error);
    SumTensor c = SumTensor::with_cards({4}, {2});
    CHECK_THROWS_AS(a.or_shifted(c, off), Error);
}

TEST_CASE("resized embeds and truncates") {
    Rng rng(5);
    SumTensor t = random_bits(rng, {7, 70}, 40);
    const std::set<Cell> original = cells_of(t);

    SumTensor grown = t.resized({9, 100});
    CHECK(cells_of(grown) == original);

    SumTensor back = grown.resized({7, 70});
    CHECK(back == t);

    SumTensor cut = t.resized({3, 20});
    std::set<Cell> kept;
    for (const Cell& c : original)
        if (c[0] <= 3 && c[1] <= 20) kept.insert(c);
    CHECK(cells_of(cut) == kept);
}

TEST_CASE("projected_sums ors away cardinality axes") {
    SumTensor t = SumTensor::with_cards({5, 5}, {2, 2});
    t.set({1, 2, 1, 1});
    t.set({1, 2, 2, 1});
    t.set({4, 0, 1, 0});
    SumTensor p = t.projected_sums();
    REQUIRE(p.rank() == 2);
    CHECK(p.get({1, 2}));
    CHECK(p.get({4, 0}));
    CHECK(p.popcount() == 2);
}

TEST_CASE("permuted reorders axes") {
    SumTensor t = SumTensor::sums({4, 6});
    t.set({1, 5});
    t.set({3, 2});
    std::vector<std::uint32_t> perm = {1, 0};
    SumTensor p = t.permuted(perm);
    CHECK(p.caps() == std::vector<std::uint32_t>{6, 4});
    CHECK(p.get({5, 1}));
    CHECK(p.get({2, 3}));
    CHECK(p.popcount() == 2);
    CHECK(p.permuted(perm) == t);
}

TEST_CASE("or_with and and_with need identical shapes") {
    SumTensor a = SumTensor::sums({4, 4});
    SumTensor b = SumTensor::sums({4, 5});
    CHECK_THROWS_AS(a.or_with(b), Error);

    SumTensor c = SumTensor::sums({4, 4});
    a.set({1, 1});
    c.set({2, 2});
    a.or_with(c);
    CHECK(a.get({1, 1}));
    CHECK(a.get({2, 2}));
    a.and_with(c);
    CHECK_FALSE(a.get({1, 1}));
    CHECK(a.get({2, 2}));
}

TEST_CASE("cell budget guard") {
    const std::vector<std::uint32_t> big = {1000, 1000, 1000};
    CHECK_THROWS_AS(checked_cell_count(big, 1 << 20), Error);
    const std::vector<std::uint32_t> small = {10, 10};
    CHECK(checked_cell_count(small, 1 << 20) == 121);
}

TEST_CASE("with_cards pairs axes and keeps roles") {
    SumTensor t = SumTensor::with_cards({9, 9}, {3, 3});
    REQUIRE(t.rank() == 4);
    CHECK(t.roles()[0] == AxisRole::Sum);
    CHECK(t.roles()[1] == AxisRole::Sum);
    CHECK(t.roles()[2] == AxisRole::Card);
    CHECK(t.roles()[3] == AxisRole::Card);
    CHECK(t.cell_count() == 100ull * 16);
}

} // TEST_SUITE

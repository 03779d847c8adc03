// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace imtest;

namespace {

EiTable table_of(std::vector<double> totals, EntityId receiver) {
    EiTable t;
    t.receiver = receiver;
    t.totals = std::move(totals);
    return t;
}

// independent row-max scan used as the oracle
EntityId brute_force_focus(const EiTable& t, EntityId previous) {
    double best = -1.0;
    for (double v : t.totals) best = std::max(best, v);
    if (t.totals[previous.value] == best) return previous;
    for (std::uint32_t i = 0; i < t.totals.size(); ++i)
        if (t.totals[i] == best) return EntityId{i};
    return previous;
}

}  // namespace

TEST_CASE("aggregate_ei sums channels per sender", "[focus]") {
    World w = empty_world();
    w.add_entity(agent("r", {0, 0}));
    w.add_entity(agent("s", {1, 0}));
    std::vector<ChannelEi> eis;
    eis.push_back({EntityId{0}, EntityId{1}, Channel::Body, 0.2, {}});
    eis.push_back({EntityId{0}, EntityId{1}, Channel::Gaze, 0.3, {}});
    eis.push_back({EntityId{1}, EntityId{0}, Channel::Body, 9.0, {}});  // other receiver

    EiTable t = aggregate_ei(EntityId{0}, eis, 0.1, w);
    REQUIRE(t.total(EntityId{1}) == Catch::Approx(0.5));
    REQUIRE(t.total(EntityId{0}) == 0.1);  // idle baseline
}

TEST_CASE("aggregate_ei with no emissions leaves only the baseline", "[focus]") {
    World w = empty_world();
    w.add_entity(agent("r", {0, 0}));
    w.add_entity(agent("s", {1, 0}));
    EiTable t = aggregate_ei(EntityId{0}, {}, 0.1, w);
    REQUIRE(t.totals == std::vector<double>{0.1, 0.0});
}

TEST_CASE("worked example: three channels beat two at equal values", "[focus]") {
    World w = fig4_world();
    auto eis = compute_all_ei(w, AlignmentModel{});
    EiTable carla = aggregate_ei(EntityId{2}, eis, 0.05, w);
    REQUIRE(carla.total(EntityId{1}) > carla.total(EntityId{0}));
    REQUIRE(compute_focus(carla, w.entity(EntityId{2}).focus) == EntityId{1});
}

TEST_CASE("all totals below baseline keep the focus inward", "[focus]") {
    EiTable t = table_of({0.002, 0.05, 0.003}, EntityId{1});
    REQUIRE(compute_focus(t, EntityId{1}) == EntityId{1});
}

TEST_CASE("exact tie goes to the previous focus, else lowest id", "[focus]") {
    EiTable t = table_of({0.4, 0.05, 0.4}, EntityId{1});
    REQUIRE(compute_focus(t, EntityId{2}) == EntityId{2});  // hysteresis
    REQUIRE(compute_focus(t, EntityId{1}) == EntityId{0});  // previous not maximal
}

TEST_CASE("compute_all_focus pins objects to themselves", "[focus]") {
    World w = empty_world();
    w.add_entity(object("rock", {0, 0}));
    w.add_entity(object("tree", {1, 0}));
    auto eis = compute_all_ei(w, AlignmentModel{});
    std::vector<EiTable> tables;  // objects get no tables
    FocusMap map = compute_all_focus(w, tables);
    REQUIRE(map[0] == EntityId{0});
    REQUIRE(map[1] == EntityId{1});
}

TEST_CASE("worked example focus map", "[focus]") {
    World w = fig4_world();
    auto eis = compute_all_ei(w, AlignmentModel{});
    std::vector<EiTable> tables;
    for (const Entity& e : w.entities)
        tables.push_back(aggregate_ei(e.id, eis, 0.05, w));
    FocusMap map = compute_all_focus(w, tables);
    REQUIRE(map[0] == EntityId{2});  // alex -> carla
    REQUIRE(map[1] == EntityId{2});  // bob -> carla
    REQUIRE(map[2] == EntityId{1});  // carla -> bob
}

TEST_CASE("randomized tables match the brute-force row max", "[focus]") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + rng.below(5);
        std::vector<double> totals;
        for (std::size_t i = 0; i < n; ++i)
            totals.push_back(rng.uniform(0.0, 1.0));
        EntityId receiver{static_cast<std::uint32_t>(rng.below(n))};
        EntityId previous{static_cast<std::uint32_t>(rng.below(n))};
        EiTable t = table_of(totals, receiver);
        REQUIRE(compute_focus(t, previous) == brute_force_focus(t, previous));
    }
}

TEST_CASE("focus choice is invariant under positive scaling", "[focus]") {
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 + rng.below(6);
        EiTable t = table_of({}, EntityId{0});
        for (std::size_t i = 0; i < n; ++i) t.totals.push_back(rng.uniform(0.0, 2.0));
        EntityId previous{static_cast<std::uint32_t>(rng.below(n))};
        EntityId chosen = compute_focus(t, previous);

        double scale = rng.uniform(0.1, 10.0);
        EiTable scaled = t;
        for (double& v : scaled.totals) v *= scale;
        REQUIRE(compute_focus(scaled, previous) == chosen);
    }
}

TEST_CASE("argmax dominance and determinism", "[focus]") {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 + rng.below(6);
        EiTable t = table_of({}, EntityId{0});
        for (std::size_t i = 0; i < n; ++i)
            t.totals.push_back(rng.uniform(0.0, 1.0));
        EntityId previous{static_cast<std::uint32_t>(rng.below(n))};
        EntityId f = compute_focus(t, previous);
        for (double v : t.totals) REQUIRE(t.totals[f.value] >= v);
        REQUIRE(compute_focus(t, previous) == f);  // repeated evaluation agrees
    }
}

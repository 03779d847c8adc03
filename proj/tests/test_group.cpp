// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "test_support.hpp"

using namespace imtest;

namespace {

// brute-force component search: repeatedly grow each component over the
// undirected focus edges
std::vector<std::vector<EntityId>> brute_force_groups(const FocusMap& map) {
    std::size_t n = map.size();
    std::vector<std::set<std::uint32_t>> comps;
    for (std::uint32_t i = 0; i < n; ++i) comps.push_back({i});
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::uint32_t a = 0; a < n; ++a) {
            if (map[a].value == a) continue;
            std::uint32_t b = map[a].value;
            std::size_t ia = 0, ib = 0;
            for (std::size_t k = 0; k < comps.size(); ++k) {
                if (comps[k].count(a)) ia = k;
                if (comps[k].count(b)) ib = k;
            }
            if (ia != ib) {
                comps[ia].insert(comps[ib].begin(), comps[ib].end());
                comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(ib));
                changed = true;
            }
        }
    }
    std::vector<std::vector<EntityId>> out;
    for (const auto& comp : comps) {
        if (comp.size() < 2) continue;
        std::vector<EntityId> members;
        for (std::uint32_t v : comp) members.push_back(EntityId{v});
        out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

std::vector<std::vector<EntityId>> members_of(const std::vector<Group>& groups) {
    std::vector<std::vector<EntityId>> out;
    for (const Group& g : groups) out.push_back(g.members);
    return out;
}

FocusMap random_focus_map(Rng& rng, std::size_t n) {
    FocusMap map(n);
    for (std::size_t i = 0; i < n; ++i)
        map[i] = EntityId{static_cast<std::uint32_t>(rng.below(n))};
    return map;
}

}  // namespace

TEST_CASE("reciprocal pair plus a loner forms one group", "[group]") {
    FocusMap map{EntityId{1}, EntityId{0}, EntityId{2}};
    auto groups = detect_groups(map);
    REQUIRE(groups.size() == 1);
    REQUIRE(groups[0].members == std::vector<EntityId>{EntityId{0}, EntityId{1}});
    REQUIRE(groups[0].focus_edges.size() == 2);
}

TEST_CASE("a chain links all three", "[group]") {
    FocusMap map{EntityId{1}, EntityId{2}, EntityId{1}};  // a->b, b->c, c->b
    auto groups = detect_groups(map);
    REQUIRE(groups.size() == 1);
    REQUIRE(groups[0].members.size() == 3);
}

TEST_CASE("all self-focused yields no groups", "[group]") {
    FocusMap map{EntityId{0}, EntityId{1}, EntityId{2}, EntityId{3}};
    REQUIRE(detect_groups(map).empty());
}

TEST_CASE("groups match brute-force component search", "[group]") {
    // exhaustive over all maps for n = 4 (4^4 = 256), random for larger n
    for (std::uint32_t code = 0; code < 256; ++code) {
        FocusMap map(4);
        std::uint32_t c = code;
        for (int i = 0; i < 4; ++i) {
            map[static_cast<std::size_t>(i)] = EntityId{c % 4};
            c /= 4;
        }
        REQUIRE(members_of(detect_groups(map)) == brute_force_groups(map));
    }
    Rng rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        FocusMap map = random_focus_map(rng, 2 + rng.below(30));
        REQUIRE(members_of(detect_groups(map)) == brute_force_groups(map));
    }
}

TEST_CASE("groups partition the entities with external edges", "[group]") {
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + rng.below(20);
        FocusMap map = random_focus_map(rng, n);
        auto groups = detect_groups(map);

        std::set<std::uint32_t> grouped;
        for (const Group& g : groups)
            for (EntityId m : g.members) {
                REQUIRE_FALSE(grouped.count(m.value));  // pairwise disjoint
                grouped.insert(m.value);
            }
        std::set<std::uint32_t> touched;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (map[i].value != i) {
                touched.insert(i);
                touched.insert(map[i].value);
            }
        }
        REQUIRE(grouped == touched);
    }
}

TEST_CASE("every engaged pair lands in the same group", "[group]") {
    Rng rng(123);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + rng.below(10);
        FocusMap map = random_focus_map(rng, n);
        auto groups = detect_groups(map);
        StateMatrix m = compute_state_matrix(map);
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t j = 0; j < n; ++j) {
                if (i == j || m.at(EntityId{i}, EntityId{j}) != RelationState::Engaged)
                    continue;
                bool together = false;
                for (const Group& g : groups) {
                    bool has_i = false, has_j = false;
                    for (EntityId e : g.members) {
                        if (e.value == i) has_i = true;
                        if (e.value == j) has_j = true;
                    }
                    if (has_i && has_j) together = true;
                }
                REQUIRE(together);
            }
        }
    }
}

TEST_CASE("two members two meters apart give the stated rings", "[group]") {
    World w = empty_world();
    w.add_entity(agent("a", {0, 0}));
    w.add_entity(agent("b", {2, 0}));
    Group g{{EntityId{0}, EntityId{1}}, {{EntityId{0}, EntityId{1}}}};
    FFormation f = compute_f_formation(g, w);  // radii 0.3, defaults
    REQUIRE(f.o_center == Vec2{1, 0});
    REQUIRE(f.o_radius == Catch::Approx(0.7));
    REQUIRE(f.p_outer_radius == Catch::Approx(1.3));
    REQUIRE(f.r_outer_radius == Catch::Approx(2.3));
}

TEST_CASE("equilateral triangle centers at the centroid", "[group]") {
    World w = empty_world();
    const double h = 1.7320508075688772;
    w.add_entity(agent("a", {0, 0}));
    w.add_entity(agent("b", {2, 0}));
    w.add_entity(agent("c", {1, h}));
    Group g{{EntityId{0}, EntityId{1}, EntityId{2}}, {}};
    FFormation f = compute_f_formation(g, w);
    REQUIRE(f.o_center.x == Catch::Approx(1.0));
    REQUIRE(f.o_center.y == Catch::Approx(h / 3.0));
    double dist = distance(f.o_center, {0, 0});
    REQUIRE(distance(f.o_center, {2, 0}) == Catch::Approx(dist));
    REQUIRE(distance(f.o_center, {1, h}) == Catch::Approx(dist));
    REQUIRE(f.o_radius == Catch::Approx(dist - 0.3));
}

TEST_CASE("coincident members collapse to the minimum formation", "[group]") {
    World w = empty_world();
    w.add_entity(agent("a", {1, 1}));
    w.add_entity(agent("b", {1, 1}));
    Group g{{EntityId{0}, EntityId{1}}, {}};
    FFormation f = compute_f_formation(g, w);
    REQUIRE(f.o_center == Vec2{1, 1});
    REQUIRE(f.o_radius == Catch::Approx(0.3));
    REQUIRE(f.o_radius < f.p_outer_radius);
    REQUIRE(f.p_outer_radius < f.r_outer_radius);
}

TEST_CASE("classification is radial with inclusive inner boundaries", "[group]") {
    FFormation f{{0, 0}, 0.5, 1.5, 2.5};
    REQUIRE(classify_position({0, 0}, f) == FRegion::O);
    REQUIRE(classify_position({0.5, 0}, f) == FRegion::O);  // boundary is inner
    REQUIRE(classify_position({1.0, 0}, f) == FRegion::P);
    REQUIRE(classify_position({1.5, 0}, f) == FRegion::P);
    REQUIRE(classify_position({2.0, 0}, f) == FRegion::R);
    REQUIRE(classify_position({3.0, 0}, f) == FRegion::Outside);
}

TEST_CASE("the four region labels partition the plane", "[group]") {
    Rng rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        World w = empty_world();
        w.add_entity(agent("a", {rng.uniform(-5, 5), rng.uniform(-5, 5)}));
        w.add_entity(agent("b", {rng.uniform(-5, 5), rng.uniform(-5, 5)}));
        Group g{{EntityId{0}, EntityId{1}}, {}};
        FFormation f = compute_f_formation(g, w);
        REQUIRE(0.0 < f.o_radius);
        REQUIRE(f.o_radius < f.p_outer_radius);
        REQUIRE(f.p_outer_radius < f.r_outer_radius);
        for (int k = 0; k < 20; ++k) {
            Vec2 p{rng.uniform(-10, 10), rng.uniform(-10, 10)};
            double d = distance(f.o_center, p);
            FRegion r = classify_position(p, f);
            if (d <= f.o_radius) REQUIRE(r == FRegion::O);
            else if (d <= f.p_outer_radius) REQUIRE(r == FRegion::P);
            else if (d <= f.r_outer_radius) REQUIRE(r == FRegion::R);
            else REQUIRE(r == FRegion::Outside);
        }
    }
}

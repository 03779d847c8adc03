// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace imtest;

namespace {

bool has_rule(const std::vector<Violation>& vs, const std::string& rule) {
    for (const Violation& v : vs)
        if (v.rule == rule) return true;
    return false;
}

}  // namespace

TEST_CASE("channel enumeration covers exactly the seven outputs", "[core]") {
    REQUIRE(kAllChannels.size() == 7);
    for (Channel c : kAllChannels) {
        REQUIRE(channel_from_name(channel_name(c)) == c);
        // every channel is either directed or omnidirectional, never both
        if (channel_is_directed(c))
            REQUIRE((c == Channel::Gaze || c == Channel::Gesture || c == Channel::Talking ||
                     c == Channel::Touch));
    }
    REQUIRE_FALSE(channel_from_name("telepathy").has_value());
}

TEST_CASE("angle_between handles the axis cases", "[core]") {
    Pose p;
    p.position = {0, 0};
    p.heading = 0.0;
    REQUIRE(angle_between(p, {5, 0}) == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(angle_between(p, {-5, 0}) == Catch::Approx(kPi));
    REQUIRE(angle_between(p, {0, 5}) == Catch::Approx(kPi / 2.0));
    REQUIRE_THROWS_AS(angle_between(p, {0, 0}), std::invalid_argument);
}

TEST_CASE("wrap_angle normalizes into [0, 2*pi)", "[core]") {
    REQUIRE(wrap_angle(-kPi) == Catch::Approx(kPi));
    REQUIRE(wrap_angle(3.0 * kPi) == Catch::Approx(kPi));
    REQUIRE(wrap_angle(0.0) == 0.0);
    for (double a : {-10.0, -1.0, 0.5, 7.0, 100.0}) {
        double w = wrap_angle(a);
        REQUIRE(w >= 0.0);
        REQUIRE(w < kTwoPi);
    }
}

TEST_CASE("validate_world flags duplicate ids", "[core]") {
    World w = empty_world();
    w.add_entity(agent("a", {0, 0}));
    w.add_entity(agent("b", {1, 0}));
    w.entities[1].id = EntityId{0};  // corrupt the dense id
    REQUIRE(has_rule(validate_world(w), "duplicate-id"));

    World w2 = empty_world();
    w2.add_entity(agent("same", {0, 0}));
    w2.add_entity(agent("same", {1, 0}));
    REQUIRE(has_rule(validate_world(w2), "duplicate-name"));
}

TEST_CASE("validate_world flags objects emitting on non-body channels", "[core]") {
    World w = empty_world();
    w.add_entity(agent("watcher", {0, 0}));
    Entity chair = object("chair", {1, 1});
    chair.channels[Channel::Gaze] = {1.0, 1.0, EntityId{0}};
    w.add_entity(std::move(chair));
    REQUIRE(has_rule(validate_world(w), "object-channel"));
}

TEST_CASE("validate_world flags objects with external focus or goals", "[core]") {
    World w = empty_world();
    w.add_entity(agent("a", {0, 0}));
    w.add_entity(object("rock", {1, 0}));
    w.entities[1].focus = EntityId{0};
    REQUIRE(has_rule(validate_world(w), "object-focus"));

    w.entities[1].focus = EntityId{1};
    w.entities[1].goal = Goal{GoalKind::Idle, {}, 0, {}};
    REQUIRE(has_rule(validate_world(w), "object-goal"));
}

TEST_CASE("validate_world accepts the worked-example scene", "[core]") {
    REQUIRE(validate_world(fig4_world()).empty());
}

TEST_CASE("validate_world checks emission invariants", "[core]") {
    World w = empty_world();
    w.add_entity(agent("a", {0, 0}));
    w.add_entity(agent("b", {1, 0}));

    SECTION("negative magnitude") {
        w.entities[0].channels[Channel::Body].magnitude = -1.0;
        REQUIRE(has_rule(validate_world(w), "magnitude-range"));
    }
    SECTION("directed channel without target") {
        w.entities[0].channels[Channel::Talking] = {1.0, 1.0, {}};
        REQUIRE(has_rule(validate_world(w), "target-missing"));
    }
    SECTION("target on omnidirectional channel") {
        w.entities[0].channels[Channel::Body].target = EntityId{1};
        REQUIRE(has_rule(validate_world(w), "target-forbidden"));
    }
    SECTION("directed channel targeting self") {
        w.entities[0].channels[Channel::Gaze] = {1.0, 1.0, EntityId{0}};
        REQUIRE(has_rule(validate_world(w), "target-self"));
    }
    SECTION("focus beyond the entity table") {
        w.entities[0].focus = EntityId{99};
        REQUIRE(has_rule(validate_world(w), "focus-missing"));
    }
    SECTION("engage goal pointed at an object") {
        w.add_entity(object("rock", {2, 0}));
        w.entities[0].goal = Goal{GoalKind::Engage, EntityId{2}, 0, {}};
        REQUIRE(has_rule(validate_world(w), "goal-target-object"));
    }
}

TEST_CASE("world add_entity assigns dense ids and self focus", "[core]") {
    World w = empty_world();
    EntityId a = w.add_entity(agent("a", {0, 0}));
    EntityId b = w.add_entity(agent("b", {1, 0}));
    REQUIRE(a.value == 0);
    REQUIRE(b.value == 1);
    REQUIRE(w.entity(a).self_focused());
    REQUIRE(w.entity(b).preferences.owner == b);
}

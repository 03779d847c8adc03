// SPDX-License-Identifier: Apache-2.0
//
// Domain types shared by every stage of the engagement loop: entities,
// poses, channels, emissions, relational states and the world container.
#ifndef IMHERE_CORE_HPP
#define IMHERE_CORE_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "imhere/geometry.hpp"

namespace imhere {

class SimError : public std::runtime_error {
public:
    explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

// Identifies an entity within one world. Dense index assigned by the world;
// display name lives on the Entity. Stable across ticks.
struct EntityId {
    std::uint32_t value = 0;
    constexpr auto operator<=>(const EntityId&) const = default;
};

// The seven effort channels an entity can emit on.
enum class Channel : std::uint8_t {
    Walking,   // footstep sounds
    Body,      // physical presence
    Gaze,      // visual attention
    Touch,     // intentional touching
    Gesture,   // hand or body movement
    Talking,   // verbal effort
    Bumping,   // physical overlap
};

inline constexpr std::size_t kChannelCount = 7;
inline constexpr std::array<Channel, kChannelCount> kAllChannels = {
    Channel::Walking, Channel::Body,    Channel::Gaze,   Channel::Touch,
    Channel::Gesture, Channel::Talking, Channel::Bumping};

constexpr std::string_view channel_name(Channel c) {
    switch (c) {
        case Channel::Walking: return "walking";
        case Channel::Body: return "body";
        case Channel::Gaze: return "gaze";
        case Channel::Touch: return "touch";
        case Channel::Gesture: return "gesture";
        case Channel::Talking: return "talking";
        case Channel::Bumping: return "bumping";
    }
    return "?";
}

constexpr std::optional<Channel> channel_from_name(std::string_view name) {
    for (Channel c : kAllChannels)
        if (channel_name(c) == name) return c;
    return std::nullopt;
}

// Directed channels carry a target; the rest radiate omnidirectionally.
constexpr bool channel_is_directed(Channel c) {
    return c == Channel::Gaze || c == Channel::Gesture || c == Channel::Talking ||
           c == Channel::Touch;
}

// Visual channels are gated by the receiver's field of view.
constexpr bool channel_is_visual(Channel c) {
    return c == Channel::Body || c == Channel::Gaze || c == Channel::Gesture ||
           c == Channel::Bumping;
}

constexpr bool channel_is_audio(Channel c) {
    return c == Channel::Walking || c == Channel::Talking;
}

// Contact channels require the bodies to be within reach.
constexpr bool channel_needs_contact(Channel c) {
    return c == Channel::Touch || c == Channel::Bumping;
}

// Fixed-size map keyed by Channel.
template <typename T>
class PerChannel {
public:
    constexpr T& operator[](Channel c) { return values_[static_cast<std::size_t>(c)]; }
    constexpr const T& operator[](Channel c) const {
        return values_[static_cast<std::size_t>(c)];
    }
    constexpr void fill(const T& v) { values_.fill(v); }
    friend constexpr bool operator==(const PerChannel&, const PerChannel&) = default;

private:
    std::array<T, kChannelCount> values_{};
};

struct Pose {
    Vec2 position;
    double heading = 0.0;      // radians in [0, 2*pi)
    double body_radius = 0.3;  // meters, > 0

    friend constexpr bool operator==(const Pose&, const Pose&) = default;
};

// One broadcast signal: what a sender puts on a channel during a tick.
// Directed channels (Gaze, Gesture, Talking, Touch) carry a target;
// Walking, Body and Bumping radiate without one.
struct EffortEmission {
    EntityId sender;
    Channel channel = Channel::Body;
    double magnitude = 0.0;     // M, >= 0
    double contribution = 0.0;  // C, >= 0
    std::optional<EntityId> target;

    friend constexpr bool operator==(const EffortEmission&, const EffortEmission&) = default;
};

// Receiver-side per-channel scaling of incoming effort.
struct Preference {
    EntityId owner;
    PerChannel<double> weight;  // P, >= 0 per channel

    Preference() { weight.fill(1.0); }
    friend constexpr bool operator==(const Preference&, const Preference&) = default;
};

struct Environment {
    PerChannel<double> noise;  // per-channel noise level in [0, 1]
    Rect bounds;

    friend constexpr bool operator==(const Environment&, const Environment&) = default;
};

// The four relational states of an ordered entity pair.
enum class RelationState : std::uint8_t { Passive, Requested, Buildup, Engaged };

constexpr std::string_view relation_state_name(RelationState s) {
    switch (s) {
        case RelationState::Passive: return "passive";
        case RelationState::Requested: return "requested";
        case RelationState::Buildup: return "buildup";
        case RelationState::Engaged: return "engaged";
    }
    return "?";
}

enum class GoalKind : std::uint8_t { Engage, Disengage, AvoidFocus, Idle };

constexpr std::string_view goal_kind_name(GoalKind k) {
    switch (k) {
        case GoalKind::Engage: return "engage";
        case GoalKind::Disengage: return "disengage";
        case GoalKind::AvoidFocus: return "avoid_focus";
        case GoalKind::Idle: return "idle";
    }
    return "?";
}

// A social goal: the relational state an entity pursues, and toward whom.
// politeness_bound overrides the global kappa when set.
struct Goal {
    GoalKind kind = GoalKind::Idle;
    std::optional<EntityId> target;  // required for Engage/Disengage
    int priority = 0;
    std::optional<double> politeness_bound;

    friend constexpr bool operator==(const Goal&, const Goal&) = default;
};

// Current emission dial for one channel. magnitude > 0 means active.
struct ChannelSetting {
    double magnitude = 0.0;
    double contribution = 1.0;
    std::optional<EntityId> target;

    bool active() const { return magnitude > 0.0; }
    friend constexpr bool operator==(const ChannelSetting&, const ChannelSetting&) = default;
};

// The interacting unit: person, robot or object. Objects (engageable=false)
// keep their focus on themselves and emit only Body presence.
struct Entity {
    EntityId id;
    std::string name;
    Pose pose;
    double fov_half_angle = kPi / 2.0;  // radians in (0, pi]
    bool engageable = true;
    Preference preferences;
    EntityId focus;  // == id means no external focus
    std::optional<Goal> goal;
    PerChannel<ChannelSetting> channels;
    bool moved_last_tick = false;  // drives the Walking channel

    bool self_focused() const { return focus == id; }
    friend bool operator==(const Entity&, const Entity&) = default;
};

struct World {
    std::uint64_t tick = 0;
    std::vector<Entity> entities;  // index == EntityId.value
    Environment environment;
    std::uint64_t rng_seed = 0;

    const Entity& entity(EntityId id) const { return entities.at(id.value); }
    Entity& entity(EntityId id) { return entities.at(id.value); }
    std::size_t size() const { return entities.size(); }
    bool has(EntityId id) const { return id.value < entities.size(); }

    // Appends an entity, assigning the next dense id.
    EntityId add_entity(Entity e) {
        e.id = EntityId{static_cast<std::uint32_t>(entities.size())};
        if (e.focus.value >= entities.size() + 1) e.focus = e.id;
        if (e.preferences.owner != e.id) e.preferences.owner = e.id;
        entities.push_back(std::move(e));
        return entities.back().id;
    }

    friend bool operator==(const World&, const World&) = default;
};

// A broken invariant found by validate_world. Violations are data, not failures.
struct Violation {
    std::string rule;    // short code, e.g. "duplicate-id"
    std::string detail;  // human-readable description naming the entity
    std::optional<EntityId> entity;
};

class ValidationError : public SimError {
public:
    explicit ValidationError(std::vector<Violation> violations)
        : SimError(describe(violations)), violations_(std::move(violations)) {}
    const std::vector<Violation>& violations() const { return violations_; }

private:
    static std::string describe(const std::vector<Violation>& vs) {
        std::string out = "world validation failed:";
        for (const auto& v : vs) out += "\n  [" + v.rule + "] " + v.detail;
        return out;
    }
    std::vector<Violation> violations_;
};

// Absolute angular difference between pose_a's heading and the direction
// from pose_a.position to point_b, in [0, pi].
inline double angle_between(const Pose& pose_a, Vec2 point_b) {
    if (pose_a.position == point_b)
        throw std::invalid_argument("angle_between: coincident points");
    return angle_diff(pose_a.heading, heading_of(point_b - pose_a.position));
}

// Checks every type invariant and returns the list of broken ones.
// An empty result means the world is well-formed.
inline std::vector<Violation> validate_world(const World& world) {
    std::vector<Violation> out;
    auto add = [&out](std::string rule, std::string detail,
                      std::optional<EntityId> id = std::nullopt) {
        out.push_back({std::move(rule), std::move(detail), id});
    };

    for (Channel c : kAllChannels) {
        double n = world.environment.noise[c];
        if (n < 0.0 || n > 1.0)
            add("noise-range", std::string(channel_name(c)) + " noise " +
                                   std::to_string(n) + " outside [0, 1]");
    }
    if (!(world.environment.bounds.min.x < world.environment.bounds.max.x) ||
        !(world.environment.bounds.min.y < world.environment.bounds.max.y))
        add("bounds-empty", "world bounds have non-positive extent");

    std::vector<std::string> names;
    for (std::size_t i = 0; i < world.entities.size(); ++i) {
        const Entity& e = world.entities[i];
        const std::string who = e.name.empty() ? "entity #" + std::to_string(i) : e.name;

        if (e.id.value != i)
            add("duplicate-id", who + " carries id " + std::to_string(e.id.value) +
                                    " at slot " + std::to_string(i),
                e.id);
        for (const auto& seen : names)
            if (seen == e.name)
                add("duplicate-name", "name '" + e.name + "' used more than once", e.id);
        names.push_back(e.name);

        if (!(e.pose.body_radius > 0.0))
            add("body-radius", who + " has non-positive body radius", e.id);
        if (e.pose.heading < 0.0 || e.pose.heading >= kTwoPi)
            add("heading-range", who + " heading not normalized to [0, 2*pi)", e.id);
        if (!(e.fov_half_angle > 0.0) || e.fov_half_angle > kPi)
            add("fov-range", who + " field-of-view half angle outside (0, pi]", e.id);
        if (!world.environment.bounds.contains(e.pose.position))
            add("out-of-bounds", who + " positioned outside world bounds", e.id);
        if (e.preferences.owner != e.id)
            add("preference-owner", who + " preference owner mismatch", e.id);
        for (Channel c : kAllChannels)
            if (e.preferences.weight[c] < 0.0)
                add("preference-range",
                    who + " negative preference on " + std::string(channel_name(c)), e.id);

        if (!world.has(e.focus))
            add("focus-missing", who + " focuses a non-existent entity", e.id);

        for (Channel c : kAllChannels) {
            const ChannelSetting& s = e.channels[c];
            if (s.magnitude < 0.0)
                add("magnitude-range",
                    who + " negative magnitude on " + std::string(channel_name(c)), e.id);
            if (s.contribution < 0.0)
                add("contribution-range",
                    who + " negative contribution on " + std::string(channel_name(c)), e.id);
            if (s.active()) {
                if (channel_is_directed(c)) {
                    if (!s.target)
                        add("target-missing", who + " emits directed " +
                                                  std::string(channel_name(c)) +
                                                  " without a target",
                            e.id);
                    else if (!world.has(*s.target))
                        add("target-missing", who + " targets a non-existent entity on " +
                                                  std::string(channel_name(c)),
                            e.id);
                    else if (*s.target == e.id)
                        add("target-self", who + " targets itself on " +
                                               std::string(channel_name(c)),
                            e.id);
                } else if (s.target) {
                    add("target-forbidden", who + " sets a target on omnidirectional " +
                                                std::string(channel_name(c)),
                        e.id);
                }
            }
        }

        if (!e.engageable) {
            if (!e.self_focused())
                add("object-focus", who + " is an object but focuses another entity", e.id);
            for (Channel c : kAllChannels)
                if (c != Channel::Body && e.channels[c].active())
                    add("object-channel", who + " is an object but emits on " +
                                              std::string(channel_name(c)),
                        e.id);
            if (e.goal) add("object-goal", who + " is an object but holds a goal", e.id);
        }

        if (e.goal) {
            const Goal& g = *e.goal;
            if (g.kind == GoalKind::Engage || g.kind == GoalKind::Disengage) {
                if (!g.target)
                    add("goal-target-missing",
                        who + " goal " + std::string(goal_kind_name(g.kind)) +
                            " lacks a target",
                        e.id);
                else if (!world.has(*g.target))
                    add("goal-target-missing", who + " goal targets a non-existent entity",
                        e.id);
                else if (g.kind == GoalKind::Engage &&
                         !world.entity(*g.target).engageable)
                    add("goal-target-object", who + " pursues engagement with an object",
                        e.id);
            }
            if (g.politeness_bound && *g.politeness_bound <= 0.0)
                add("goal-bound-range", who + " non-positive politeness bound", e.id);
        }
    }
    return out;
}

}  // namespace imhere

#endif  // IMHERE_CORE_HPP

// SPDX-License-Identifier: Apache-2.0
//
// Stage 4: pick next-tick channel settings and movement that steer toward a
// goal state, within politeness bounds. Planning is pure over an entity's
// subjective view; apply_plans is the single mutation point per tick.
#ifndef IMHERE_STRATEGY_HPP
#define IMHERE_STRATEGY_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "imhere/group.hpp"
#include "imhere/perception.hpp"

namespace imhere {

struct Movement {
    double heading = 0.0;  // direction of travel, becomes the new heading
    double speed = 0.0;    // m per tick; 0 turns in place

    friend constexpr bool operator==(const Movement&, const Movement&) = default;
};

// Next-tick effort settings for one entity.
struct EffortPlan {
    EntityId entity;
    PerChannel<ChannelSetting> channels;
    std::optional<Movement> movement;

    friend bool operator==(const EffortPlan&, const EffortPlan&) = default;
};

// Escalation order, least to most socially intrusive.
inline constexpr std::array<Channel, 5> kChannelLadder = {
    Channel::Body, Channel::Gaze, Channel::Gesture, Channel::Talking, Channel::Touch};

namespace detail {

// How far up the ladder the entity currently is: the longest prefix whose
// channels are all active, directed ones pointing at the goal target.
inline std::size_t ladder_prefix(const Entity& e, EntityId target) {
    std::size_t len = 0;
    for (Channel c : kChannelLadder) {
        const ChannelSetting& s = e.channels[c];
        if (!s.active()) break;
        if (channel_is_directed(c) && s.target != std::optional<EntityId>{target}) break;
        ++len;
    }
    return len;
}

// Unit gain of a hypothetical mix: total magnitude 1 spread equally over the
// prefix channels, directed ones aimed at the target.
inline double prefix_unit_gain(const Entity& sender, const Entity& target,
                               std::size_t prefix_len, const World& world,
                               const AlignmentModel& model) {
    double per_channel = 1.0 / static_cast<double>(prefix_len);
    double gain = 0.0;
    for (std::size_t i = 0; i < prefix_len; ++i) {
        Channel c = kChannelLadder[i];
        EffortEmission em{sender.id, c, per_channel, 1.0,
                          channel_is_directed(c) ? std::optional<EntityId>{target.id}
                                                 : std::nullopt};
        gain += compute_channel_ei(world, em, target, model).value;
    }
    return gain;
}

// Nearest standing point inside the target's field-of-view cone at the
// preferred interaction distance.
inline Vec2 approach_point(const Entity& mover, const Entity& target,
                           const EngineParams& params) {
    Vec2 offset = mover.pose.position - target.pose.position;
    double bearing = offset.norm() > 0.0 ? heading_of(offset) : target.pose.heading;
    double rel = bearing - target.pose.heading;
    // wrap to [-pi, pi] so the clamp picks the near cone edge
    rel = std::remainder(rel, kTwoPi);
    double limit = target.fov_half_angle * 0.9;
    rel = std::clamp(rel, -limit, limit);
    return target.pose.position +
           params.interaction_distance * unit_from_heading(target.pose.heading + rel);
}

}  // namespace detail

// Chooses the entity's next-tick effort. Engage escalates the channel ladder
// with magnitudes capped by the politeness bound and repairs alignment by
// approaching the target's field of view when unreachable; Disengage silences
// the target and redirects gaze; AvoidFocus goes quiet and steps clear of
// O/P-spaces; Idle holds.
inline EffortPlan plan_effort(const Entity& entity, const SubjectiveView& view,
                              const World& world, const AlignmentModel& model,
                              const EngineParams& params = {}) {
    if (!entity.engageable || !entity.goal)
        throw SimError("plan_effort: entity '" + entity.name +
                       "' is not an engageable goal holder");
    const Goal& goal = *entity.goal;
    if ((goal.kind == GoalKind::Engage || goal.kind == GoalKind::Disengage) &&
        (!goal.target || !world.has(*goal.target)))
        throw SimError("plan_effort: goal of '" + entity.name + "' has a dangling target");

    EffortPlan plan;
    plan.entity = entity.id;
    plan.channels = entity.channels;

    switch (goal.kind) {
        case GoalKind::Idle:
            return plan;

        case GoalKind::Disengage: {
            const Entity& target = world.entity(*goal.target);
            double freed_gaze = 0.0;
            for (Channel c : kAllChannels) {
                ChannelSetting& s = plan.channels[c];
                if (channel_is_directed(c) && s.target == std::optional<EntityId>{target.id}) {
                    if (c == Channel::Gaze) freed_gaze = s.magnitude;
                    s.magnitude = 0.0;
                    s.target.reset();
                }
            }
            if (freed_gaze > 0.0) {
                // look at the nearest bystander instead of just dropping the gaze
                const Entity* other = nullptr;
                double best = 0.0;
                for (const Entity& cand : world.entities) {
                    if (cand.id == entity.id || cand.id == target.id) continue;
                    double d = distance(entity.pose.position, cand.pose.position);
                    if (!other || d < best) {
                        other = &cand;
                        best = d;
                    }
                }
                if (other) {
                    plan.channels[Channel::Gaze].magnitude = freed_gaze;
                    plan.channels[Channel::Gaze].target = other->id;
                }
            }
            return plan;
        }

        case GoalKind::AvoidFocus: {
            for (Channel c : kAllChannels) {
                plan.channels[c].magnitude = 0.0;
                if (channel_is_directed(c)) plan.channels[c].target.reset();
            }
            // formations implied by what this entity believes about focus
            FocusMap believed(world.size());
            for (std::uint32_t i = 0; i < world.size(); ++i) believed[i] = EntityId{i};
            for (const FocusEstimate& fe : view.estimated_focus)
                believed[fe.subject.value] = fe.target;
            auto groups = detect_groups(believed);
            if (groups.empty()) return plan;

            std::vector<FFormation> formations;
            formations.reserve(groups.size());
            for (const Group& g : groups)
                formations.push_back(
                    compute_f_formation(g, world, params.min_o_radius, params.r_width));
            std::sort(formations.begin(), formations.end(),
                      [&](const FFormation& a, const FFormation& b) {
                          return distance(entity.pose.position, a.o_center) <
                                 distance(entity.pose.position, b.o_center);
                      });
            auto lands_clear = [&](Vec2 p) {
                for (const FFormation& f : formations) {
                    FRegion r = classify_position(p, f);
                    if (r == FRegion::O || r == FRegion::P) return false;
                }
                return true;
            };
            for (const FFormation& f : formations) {
                Vec2 away = entity.pose.position - f.o_center;
                double heading =
                    away.norm() > 0.0 ? heading_of(away) : entity.pose.heading;
                Vec2 candidate =
                    entity.pose.position + params.movement_speed * unit_from_heading(heading);
                if (lands_clear(candidate)) {
                    plan.movement = Movement{heading, params.movement_speed};
                    return plan;
                }
            }
            return plan;  // no clear step; hold position
        }

        case GoalKind::Engage:
            break;  // handled below
    }

    const Entity& target = world.entity(*goal.target);
    const double kappa = goal.politeness_bound.value_or(params.kappa);
    const bool engaged =
        view.estimated_states.contains_pair(entity.id, target.id) &&
        view.estimated_states.at(entity.id, target.id) == RelationState::Engaged;

    std::size_t prefix = detail::ladder_prefix(entity, target.id);
    if (prefix == 0) prefix = 1;  // presence first
    if (!engaged && prefix < kChannelLadder.size()) ++prefix;

    double unit_gain = detail::prefix_unit_gain(entity, target, prefix, world, model);
    std::optional<double> required;
    if (unit_gain > 0.0) {
        double competitor =
            detail::strongest_competitor(entity, target, world, model, params);
        required = (competitor + params.epsilon) / unit_gain;
    }

    double total;
    if (!required) {
        total = 1.0;  // keep a unit of presence while repairing alignment
    } else if (engaged) {
        total = std::min(*required * (1.0 + params.maintenance_headroom), kappa * *required);
    } else {
        total = std::min(*required * (1.0 + params.epsilon), kappa * *required);
    }

    for (Channel c : kAllChannels) {
        if (c == Channel::Walking || c == Channel::Bumping) continue;  // not plannable here
        ChannelSetting& s = plan.channels[c];
        s.magnitude = 0.0;
        s.target.reset();
    }
    double per_channel = total / static_cast<double>(prefix);
    for (std::size_t i = 0; i < prefix; ++i) {
        Channel c = kChannelLadder[i];
        plan.channels[c].magnitude = per_channel;
        plan.channels[c].contribution = 1.0;
        if (channel_is_directed(c)) plan.channels[c].target = target.id;
    }

    if (!required) {
        Vec2 goal_point = detail::approach_point(entity, target, params);
        double d = distance(entity.pose.position, goal_point);
        if (d > 0.0)
            plan.movement = Movement{heading_of(goal_point - entity.pose.position),
                                     std::min(params.movement_speed, d)};
        else if (entity.pose.position != target.pose.position)
            plan.movement =
                Movement{heading_of(target.pose.position - entity.pose.position), 0.0};
    } else if (entity.pose.position != target.pose.position) {
        // face the target so its presence stays in view
        plan.movement =
            Movement{heading_of(target.pose.position - entity.pose.position), 0.0};
    }
    return plan;
}

// Advances the world one tick: applies each plan's settings and movement,
// clamps positions to the world bounds and tracks who moved (which drives
// Walking). Entities without plans keep their settings. Bodies may overlap;
// overlap surfaces as Bumping on the next emission pass.
inline World apply_plans(const World& world, std::span<const EffortPlan> plans) {
    std::vector<bool> planned(world.size(), false);
    for (const EffortPlan& p : plans) {
        if (!world.has(p.entity)) throw SimError("apply_plans: plan for unknown entity");
        if (planned[p.entity.value])
            throw SimError("apply_plans: two plans for entity '" +
                           world.entity(p.entity).name + "'");
        planned[p.entity.value] = true;
    }

    World next = world;
    next.tick = world.tick + 1;
    for (Entity& e : next.entities) e.moved_last_tick = false;

    for (const EffortPlan& p : plans) {
        Entity& e = next.entity(p.entity);
        e.channels = p.channels;
        if (p.movement) {
            Vec2 moved = e.pose.position +
                         p.movement->speed * unit_from_heading(p.movement->heading);
            moved = next.environment.bounds.clamp(moved);
            e.moved_last_tick = moved != e.pose.position;
            e.pose.position = moved;
            e.pose.heading = wrap_angle(p.movement->heading);
        }
    }
    return next;
}

}  // namespace imhere

#endif  // IMHERE_STRATEGY_HPP

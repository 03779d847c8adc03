// SPDX-License-Identifier: Apache-2.0
//
// The closed feedback loop: signals -> interpretation -> focus -> states ->
// perception -> groups -> plans -> apply, once per tick, all stages computed
// from the tick-start snapshot so entity iteration order can never matter.
#ifndef IMHERE_ENGINE_HPP
#define IMHERE_ENGINE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "imhere/group.hpp"
#include "imhere/perception.hpp"
#include "imhere/strategy.hpp"

namespace imhere {

// Where and what an entity was at the start of the tick; enough to redraw
// the scene without the world object.
struct EntitySnapshot {
    Pose pose;
    double fov_half_angle = kPi / 2.0;
    bool engageable = true;

    friend constexpr bool operator==(const EntitySnapshot&, const EntitySnapshot&) = default;
};

// Everything one tick computed, internally consistent: the state matrix and
// groups are exactly what the recorded focus map derives to.
struct TickRecord {
    std::uint64_t tick = 0;
    std::vector<EntitySnapshot> entity_states;  // tick-start snapshot, id order
    std::vector<EiTable> ei_tables;  // one per engageable receiver, id order
    FocusMap focus_map;              // all entities
    StateMatrix objective_states;
    std::vector<SubjectiveView> views;  // engageable observers, id order
    std::vector<MiscommunicationEvent> miscommunication;
    std::vector<PolitenessReport> politeness;
    std::vector<Group> groups;
    std::vector<FFormation> formations;  // parallel to groups
    std::vector<EffortPlan> plans;

    friend bool operator==(const TickRecord&, const TickRecord&) = default;
};

struct StepResult {
    World world;  // tick advanced by one, focus fields refreshed
    TickRecord record;
};

// Builds a ground-truth stand-in view used for planning when subjective
// views are disabled.
inline SubjectiveView omniscient_view(const Entity& observer, const World& world,
                                      const FocusMap& focus_map) {
    SubjectiveView view;
    view.observer = observer.id;
    view.last_update_tick = world.tick;
    std::vector<EntityId> members(world.size());
    for (std::uint32_t i = 0; i < world.size(); ++i) {
        members[i] = EntityId{i};
        view.estimated_focus.push_back({EntityId{i}, focus_map[i], 1.0});
    }
    view.estimated_states = derive_state_matrix(
        members, [&](EntityId e) { return focus_map[e.value]; }, world.tick);
    return view;
}

// Runs one full loop pass over a validated world. Throws ValidationError
// when the snapshot breaks an invariant.
inline StepResult step(const World& world, const AlignmentModel& model,
                       const EngineParams& params = {}) {
    if (auto violations = validate_world(world); !violations.empty())
        throw ValidationError(std::move(violations));

    TickRecord rec;
    rec.tick = world.tick;
    for (const Entity& e : world.entities)
        rec.entity_states.push_back({e.pose, e.fov_half_angle, e.engageable});

    // Stage 1: signal conversion
    std::vector<ChannelEi> eis = compute_all_ei(world, model, params);

    // Stage 2: focus estimation
    for (const Entity& e : world.entities)
        if (e.engageable)
            rec.ei_tables.push_back(aggregate_ei(e.id, eis, params.idle_baseline, world));
    rec.focus_map = compute_all_focus(world, rec.ei_tables);

    // Stage 3: relational states
    rec.objective_states = compute_state_matrix(rec.focus_map, world.tick);

    // Perception: subjective views and their divergence from the objective
    if (params.subjective_views) {
        for (const Entity& e : world.entities)
            if (e.engageable)
                rec.views.push_back(build_subjective_view(e, world, model, params));
        rec.miscommunication = detect_miscommunication(rec.objective_states, rec.views);
    }

    // Politeness of everyone courting a focus
    for (const Entity& e : world.entities)
        if (e.goal && e.goal->kind == GoalKind::Engage && e.goal->target)
            rec.politeness.push_back(
                politeness_score(e, world.entity(*e.goal->target), world, model, params));

    // Group structure
    rec.groups = detect_groups(rec.focus_map);
    for (const Group& g : rec.groups)
        rec.formations.push_back(
            compute_f_formation(g, world, params.min_o_radius, params.r_width));

    // Stage 4: goal pursuit
    for (const Entity& e : world.entities) {
        if (!e.engageable || !e.goal) continue;
        const SubjectiveView* view = nullptr;
        SubjectiveView fallback;
        if (params.subjective_views) {
            for (const SubjectiveView& v : rec.views)
                if (v.observer == e.id) view = &v;
        }
        if (!view) {
            fallback = omniscient_view(e, world, rec.focus_map);
            view = &fallback;
        }
        rec.plans.push_back(plan_effort(e, *view, world, model, params));
    }

    World next = apply_plans(world, rec.plans);
    for (Entity& e : next.entities) e.focus = rec.focus_map[e.id.value];
    return {std::move(next), std::move(rec)};
}

// Optional early-stop condition evaluated against each fresh record.
struct StopPredicate {
    enum class Kind : std::uint8_t { None, PairEngaged } kind = Kind::None;
    EntityId a;
    EntityId b;

    bool satisfied(const TickRecord& rec) const {
        switch (kind) {
            case Kind::None: return false;
            case Kind::PairEngaged:
                return rec.objective_states.at(a, b) == RelationState::Engaged;
        }
        return false;
    }
};

// Steps the world `ticks` times (or until the stop predicate fires, that
// record included) and returns the trace. The optional smoothing factor
// blends estimate confidences with the previous tick's view.
inline std::vector<TickRecord> run(World world, const AlignmentModel& model,
                                   const EngineParams& params, std::uint64_t ticks,
                                   const StopPredicate& stop = {},
                                   World* final_world = nullptr) {
    std::vector<TickRecord> trace;
    for (std::uint64_t i = 0; i < ticks; ++i) {
        StepResult result = step(world, model, params);
        world = std::move(result.world);

        if (params.view_smoothing > 0.0 && !trace.empty()) {
            const double alpha = params.view_smoothing;
            for (SubjectiveView& v : result.record.views) {
                for (const SubjectiveView& prev : trace.back().views) {
                    if (prev.observer != v.observer) continue;
                    for (FocusEstimate& fe : v.estimated_focus)
                        if (const FocusEstimate* old = prev.find(fe.subject))
                            fe.confidence =
                                alpha * old->confidence + (1.0 - alpha) * fe.confidence;
                }
            }
        }

        trace.push_back(std::move(result.record));
        if (stop.satisfied(trace.back())) break;
    }
    if (final_world) *final_world = std::move(world);
    return trace;
}

}  // namespace imhere

#endif  // IMHERE_ENGINE_HPP

// SPDX-License-Identifier: Apache-2.0
//
// Subjective views: each entity estimates the focus of the others from the
// effort it can observe, keeps its own estimated state matrix, and the same
// machinery scores miscommunication and politeness.
#ifndef IMHERE_PERCEPTION_HPP
#define IMHERE_PERCEPTION_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "imhere/focus.hpp"
#include "imhere/relation.hpp"
#include "imhere/signal.hpp"

namespace imhere {

class PerceptionError : public SimError {
public:
    using SimError::SimError;
};

// Confidence assigned when a subject shows no directed channel at all and is
// therefore read as passive.
inline constexpr double kPassiveEstimateConfidence = 0.25;

struct FocusEstimate {
    EntityId subject;
    EntityId target;
    double confidence = 0.0;  // in [0, 1]

    friend constexpr bool operator==(const FocusEstimate&, const FocusEstimate&) = default;
};

// One observer's picture of the scene: who it perceives, where it believes
// each of them focuses, and the relational states that picture implies.
struct SubjectiveView {
    EntityId observer;
    std::uint64_t last_update_tick = 0;
    std::vector<FocusEstimate> estimated_focus;  // sorted by subject id; includes observer
    StateMatrix estimated_states;

    bool perceives(EntityId e) const { return find(e) != nullptr; }
    const FocusEstimate* find(EntityId subject) const {
        auto it = std::lower_bound(
            estimated_focus.begin(), estimated_focus.end(), subject,
            [](const FocusEstimate& fe, EntityId id) { return fe.subject < id; });
        if (it == estimated_focus.end() || it->subject != subject) return nullptr;
        return &*it;
    }

    friend bool operator==(const SubjectiveView&, const SubjectiveView&) = default;
};

// A tick where an observer's estimated state for a pair disagrees with the
// objective one.
struct MiscommunicationEvent {
    std::uint64_t tick = 0;
    EntityId observer;
    EntityId a;
    EntityId b;
    RelationState subjective_state = RelationState::Passive;
    RelationState objective_state = RelationState::Passive;

    friend constexpr bool operator==(const MiscommunicationEvent&,
                                     const MiscommunicationEvent&) = default;
};

enum class PolitenessClass : std::uint8_t { Insufficient, Polite, Rude };

constexpr std::string_view politeness_class_name(PolitenessClass c) {
    switch (c) {
        case PolitenessClass::Insufficient: return "insufficient";
        case PolitenessClass::Polite: return "polite";
        case PolitenessClass::Rude: return "rude";
    }
    return "?";
}

// How a sender's emitted effort compares with what gaining/keeping the
// target's focus actually requires. required is empty when the target is
// unreachable (every alignment zero).
struct PolitenessReport {
    std::uint64_t tick = 0;
    EntityId sender;
    EntityId target;
    double used_effort = 0.0;
    std::optional<double> required_effort;
    PolitenessClass classification = PolitenessClass::Insufficient;

    friend constexpr bool operator==(const PolitenessReport&, const PolitenessReport&) = default;
};

namespace detail {

// An observer perceives a subject when it receives any effort from it or the
// subject sits within perception range.
inline bool perceives(const World& world, const Entity& observer, const Entity& subject,
                      const AlignmentModel& model, const EngineParams& params) {
    if (observer.id == subject.id) return true;
    if (distance(observer.pose.position, subject.pose.position) <= params.perception_range)
        return true;
    for (const EffortEmission& em : collect_emissions(world, subject, params))
        if (compute_channel_ei(world, em, observer, model).value > 0.0) return true;
    return false;
}

// Whether the observer can notice the subject emitting on this channel.
// Visual activity requires line of sight (subject inside the observer's
// field of view); audible and haptic activity does not.
inline bool emission_observable(const Entity& observer, const Entity& subject, Channel c) {
    if (!channel_is_visual(c)) return true;
    return in_field_of_view(observer, subject.pose.position);
}

}  // namespace detail

// Reads the subject's focus off its directed emissions: the estimate is the
// entity its observable directed effort concentrates on, with confidence the
// share of that effort. A subject showing no directed channel reads as
// passive (self-focused) with low confidence. Throws when the subject is not
// perceived at all.
inline FocusEstimate estimate_focus_of(const Entity& observer, const Entity& subject,
                                       const World& world, const AlignmentModel& model,
                                       const EngineParams& params = {}) {
    if (observer.id == subject.id)
        return {subject.id, subject.focus, 1.0};  // own focus is ground truth
    if (!detail::perceives(world, observer, subject, model, params))
        throw PerceptionError("entity '" + subject.name + "' is outside the perception of '" +
                              observer.name + "'");

    std::vector<double> weight(world.size(), 0.0);
    double total = 0.0;
    for (const EffortEmission& em : collect_emissions(world, subject, params)) {
        if (!channel_is_directed(em.channel) || !em.target) continue;
        if (!detail::emission_observable(observer, subject, em.channel)) continue;
        weight[em.target->value] += em.magnitude;
        total += em.magnitude;
    }
    if (total <= 0.0) return {subject.id, subject.id, kPassiveEstimateConfidence};

    EntityId best{0};
    for (std::uint32_t i = 1; i < weight.size(); ++i)
        if (weight[i] > weight[best.value]) best = EntityId{i};
    return {subject.id, best, weight[best.value] / total};
}

// The observer's full picture for this tick: estimates over every perceived
// entity and the state matrix those estimates imply.
inline SubjectiveView build_subjective_view(const Entity& observer, const World& world,
                                            const AlignmentModel& model,
                                            const EngineParams& params = {}) {
    SubjectiveView view;
    view.observer = observer.id;
    view.last_update_tick = world.tick;
    for (const Entity& subject : world.entities) {
        if (subject.id != observer.id &&
            !detail::perceives(world, observer, subject, model, params))
            continue;
        view.estimated_focus.push_back(
            estimate_focus_of(observer, subject, world, model, params));
    }

    std::vector<EntityId> members;
    members.reserve(view.estimated_focus.size());
    for (const FocusEstimate& fe : view.estimated_focus) members.push_back(fe.subject);
    view.estimated_states = derive_state_matrix(
        members, [&](EntityId e) { return view.find(e)->target; }, world.tick);
    return view;
}

// Every (observer, ordered pair) whose subjective state differs from the
// objective one, restricted to pairs the observer estimates. Sound (every
// event differs) and complete (no differing pair is dropped).
inline std::vector<MiscommunicationEvent> detect_miscommunication(
    const StateMatrix& objective, std::span<const SubjectiveView> views) {
    std::vector<MiscommunicationEvent> events;
    for (const SubjectiveView& view : views) {
        for (EntityId a : view.estimated_states.members()) {
            for (EntityId b : view.estimated_states.members()) {
                if (a == b) continue;
                RelationState subjective = view.estimated_states.at(a, b);
                RelationState obj = objective.at(a, b);
                if (subjective != obj)
                    events.push_back({objective.tick(), view.observer, a, b, subjective, obj});
            }
        }
    }
    return events;
}

// Communication over a pair is effective when the objective engagement is
// also perceived subjectively by both engaged entities.
inline bool is_effective(EntityId a, EntityId b, const StateMatrix& objective,
                         const SubjectiveView& view_a, const SubjectiveView& view_b) {
    if (objective.at(a, b) != RelationState::Engaged) return false;
    for (const SubjectiveView* v : {&view_a, &view_b}) {
        if (!v->estimated_states.contains_pair(a, b)) return false;
        if (v->estimated_states.at(a, b) != RelationState::Engaged) return false;
    }
    return true;
}

namespace detail {

// Per-unit-magnitude EI the sender lands on the target with its current
// channel mix, plus the non-scalable part (Bumping) and the current total.
struct EffortGain {
    double per_unit = 0.0;   // EI per unit of total controllable magnitude
    double fixed = 0.0;      // EI from emissions the sender cannot dial
    double current = 0.0;    // total controllable magnitude currently emitted
};

inline EffortGain effort_gain(const Entity& sender, const Entity& target,
                              const World& world, const AlignmentModel& model,
                              const EngineParams& params) {
    EffortGain g;
    double scalable_ei = 0.0;
    for (const EffortEmission& em : collect_emissions(world, sender, params)) {
        double value = compute_channel_ei(world, em, target, model).value;
        if (em.channel == Channel::Bumping) {
            g.fixed += value;
        } else {
            scalable_ei += value;
            g.current += em.magnitude;
        }
    }
    if (g.current > 0.0) g.per_unit = scalable_ei / g.current;
    return g;
}

// Strongest total EI the target receives from anyone but the sender,
// its own idle baseline included.
inline double strongest_competitor(const Entity& sender, const Entity& target,
                                   const World& world, const AlignmentModel& model,
                                   const EngineParams& params) {
    auto eis = compute_all_ei(world, model, params);
    EiTable table = aggregate_ei(target.id, eis, params.idle_baseline, world);
    double best = 0.0;
    for (std::uint32_t i = 0; i < table.totals.size(); ++i)
        if (EntityId{i} != sender.id) best = std::max(best, table.totals[i]);
    return best;
}

}  // namespace detail

// Minimal total magnitude, spread over the sender's currently active channels
// in their current proportions, that pushes the target's EI from the sender
// past its strongest other source by the epsilon margin. Empty when the
// target is unreachable (all alignments zero or nothing emitted to scale).
inline std::optional<double> required_effort(const Entity& sender, const Entity& target,
                                             const World& world, const AlignmentModel& model,
                                             const EngineParams& params = {}) {
    if (!target.engageable)
        throw PerceptionError("required_effort: target '" + target.name +
                              "' is not engageable");
    detail::EffortGain gain = detail::effort_gain(sender, target, world, model, params);
    if (gain.per_unit <= 0.0) return std::nullopt;
    double competitor = detail::strongest_competitor(sender, target, world, model, params);
    double needed = competitor + params.epsilon - gain.fixed;
    if (needed <= 0.0) return 0.0;  // body contact alone already wins
    return needed / gain.per_unit;
}

// Compares what the sender emits with what holding the target's focus
// requires: below it is insufficient, within kappa times it is polite,
// beyond that is rude.
inline PolitenessReport politeness_score(const Entity& sender, const Entity& target,
                                         const World& world, const AlignmentModel& model,
                                         const EngineParams& params = {}) {
    PolitenessReport report;
    report.tick = world.tick;
    report.sender = sender.id;
    report.target = target.id;
    report.used_effort =
        detail::effort_gain(sender, target, world, model, params).current;
    report.required_effort = required_effort(sender, target, world, model, params);

    double kappa = params.kappa;
    if (sender.goal && sender.goal->politeness_bound) kappa = *sender.goal->politeness_bound;

    if (!report.required_effort) {
        report.classification = PolitenessClass::Insufficient;
    } else if (report.used_effort < *report.required_effort) {
        report.classification = PolitenessClass::Insufficient;
    } else if (report.used_effort <= kappa * *report.required_effort) {
        report.classification = PolitenessClass::Polite;
    } else {
        report.classification = PolitenessClass::Rude;
    }
    return report;
}

}  // namespace imhere

#endif  // IMHERE_PERCEPTION_HPP

// SPDX-License-Identifier: Apache-2.0
//
// Stage 1: turn each sender's effort emission into a receiver-specific
// interpretation value, EI = T * M * C * A * P.
#ifndef IMHERE_SIGNAL_HPP
#define IMHERE_SIGNAL_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "imhere/core.hpp"
#include "imhere/params.hpp"

namespace imhere {

// Geometry parameters of the alignment factor A. A folds sender directivity,
// the receiver's reception gate, distance attenuation and the contact gate
// into one scalar in [0, 1], keeping the five-factor product intact.
struct AlignmentModel {
    PerChannel<double> cone_half_angle;       // directed channels, radians in (0, pi]
    PerChannel<double> attenuation_exponent;  // (1 + d)^(-k), k >= 0
    PerChannel<double> contact_reach;         // contact gate passes when
                                              // d <= r_a + r_b + reach

    AlignmentModel() {
        cone_half_angle.fill(kPi);
        cone_half_angle[Channel::Gaze] = kPi / 6.0;
        cone_half_angle[Channel::Gesture] = kPi / 3.0;
        cone_half_angle[Channel::Talking] = kPi / 2.0;
        cone_half_angle[Channel::Touch] = kPi / 2.0;
        attenuation_exponent.fill(1.0);
        attenuation_exponent[Channel::Walking] = 2.0;  // audio falls off faster
        attenuation_exponent[Channel::Talking] = 2.0;
        contact_reach.fill(0.0);
        contact_reach[Channel::Touch] = 0.3;  // arm's reach beyond the bodies
    }
    friend constexpr bool operator==(const AlignmentModel&, const AlignmentModel&) = default;
};

// The five factors behind one interpreted value.
struct EiFactors {
    double contrast = 0.0;      // T
    double magnitude = 0.0;     // M
    double contribution = 0.0;  // C
    double alignment = 0.0;     // A
    double preference = 0.0;    // P

    friend constexpr bool operator==(const EiFactors&, const EiFactors&) = default;
};

// One interpreted emission: how strongly `receiver` perceives `sender`
// on `channel` this tick.
struct ChannelEi {
    EntityId receiver;
    EntityId sender;
    Channel channel = Channel::Body;
    double value = 0.0;
    EiFactors factors;

    friend constexpr bool operator==(const ChannelEi&, const ChannelEi&) = default;
};

// T = 1 - n for the channel's noise level.
inline double contrast(const Environment& environment, Channel channel) {
    return 1.0 - environment.noise[channel];
}

namespace detail {

// Smooth falloff from 1 at dead-center to 0 at the cone edge.
inline double raised_cosine(double angle, double cone_half_angle) {
    if (angle >= cone_half_angle) return 0.0;
    return std::max(0.0, std::cos(angle / cone_half_angle * kPi / 2.0));
}

inline bool in_field_of_view(const Entity& viewer, Vec2 point) {
    if (viewer.pose.position == point) return true;  // coincident counts as seen
    return angle_between(viewer.pose, point) <= viewer.fov_half_angle;
}

}  // namespace detail

// Alignment between a concrete emission and a receiver, in [0, 1]:
// sender directivity (directed channels fall off inside the sender cone),
// reception gate (visual channels require the sender inside the receiver's
// field of view), distance attenuation (1 + d)^(-k), and the contact gate
// for Touch/Bumping. Coincident positions count as contact, not as an error.
inline double alignment(const World& world, const EffortEmission& emission,
                        const Entity& receiver, const AlignmentModel& model) {
    const Entity& sender = world.entity(emission.sender);
    const Channel c = emission.channel;
    const double d = distance(sender.pose.position, receiver.pose.position);

    double directivity = 1.0;
    if (channel_is_directed(c)) {
        if (!emission.target) return 0.0;  // undirected directed emission points nowhere
        const Entity& target = world.entity(*emission.target);
        if (target.id == receiver.id) {
            directivity = 1.0;
        } else if (sender.pose.position == receiver.pose.position) {
            directivity = 1.0;  // on top of the sender, inside any cone
        } else if (sender.pose.position == target.pose.position) {
            directivity = 0.0;  // beam direction undefined, nothing leaks
        } else {
            double beam = heading_of(target.pose.position - sender.pose.position);
            double toward = heading_of(receiver.pose.position - sender.pose.position);
            directivity =
                detail::raised_cosine(angle_diff(beam, toward), model.cone_half_angle[c]);
        }
    }

    double reception = 1.0;
    if (channel_is_visual(c) &&
        !detail::in_field_of_view(receiver, sender.pose.position))
        reception = 0.0;

    double att = std::pow(1.0 + d, -model.attenuation_exponent[c]);

    double contact = 1.0;
    if (channel_needs_contact(c)) {
        double threshold =
            sender.pose.body_radius + receiver.pose.body_radius + model.contact_reach[c];
        contact = d <= threshold ? 1.0 : 0.0;
    }

    return directivity * reception * att * contact;
}

// EI = T * M * C * A * P for one emission and one receiver.
inline ChannelEi compute_channel_ei(const World& world, const EffortEmission& emission,
                                    const Entity& receiver, const AlignmentModel& model) {
    ChannelEi out;
    out.receiver = receiver.id;
    out.sender = emission.sender;
    out.channel = emission.channel;
    out.factors.contrast = contrast(world.environment, emission.channel);
    out.factors.magnitude = emission.magnitude;
    out.factors.contribution = emission.contribution;
    out.factors.alignment = alignment(world, emission, receiver, model);
    out.factors.preference = receiver.preferences.weight[emission.channel];
    out.value = out.factors.contrast * out.factors.magnitude * out.factors.contribution *
                out.factors.alignment * out.factors.preference;
    return out;
}

// The emissions an entity actually broadcasts this tick. Walking fires only
// on ticks where the entity moved; Bumping is derived from body overlap with
// fixed magnitude; objects emit Body presence only.
inline std::vector<EffortEmission> collect_emissions(const World& world, const Entity& e,
                                                     const EngineParams& params) {
    std::vector<EffortEmission> out;
    if (!e.engageable) {
        const ChannelSetting& body = e.channels[Channel::Body];
        if (body.active())
            out.push_back({e.id, Channel::Body, body.magnitude, body.contribution, {}});
        return out;
    }
    for (Channel c : kAllChannels) {
        if (c == Channel::Bumping) continue;  // derived below
        const ChannelSetting& s = e.channels[c];
        if (!s.active()) continue;
        if (c == Channel::Walking && !e.moved_last_tick) continue;
        out.push_back({e.id, c, s.magnitude, s.contribution,
                       channel_is_directed(c) ? s.target : std::nullopt});
    }
    for (const Entity& other : world.entities) {
        if (other.id == e.id) continue;
        double d = distance(e.pose.position, other.pose.position);
        if (d <= e.pose.body_radius + other.pose.body_radius) {
            out.push_back({e.id, Channel::Bumping, params.bump_magnitude, 1.0, {}});
            break;
        }
    }
    return out;
}

inline std::vector<EffortEmission> collect_emissions(const World& world,
                                                     const EngineParams& params) {
    std::vector<EffortEmission> out;
    for (const Entity& e : world.entities) {
        auto ems = collect_emissions(world, e, params);
        out.insert(out.end(), ems.begin(), ems.end());
    }
    return out;
}

// Every interpreted emission for the tick-start snapshot: one ChannelEi per
// (receiver, sender, active channel) triple with sender != receiver, in
// deterministic (receiver, sender, channel) order. Pure in (world, params).
inline std::vector<ChannelEi> compute_all_ei(const World& world,
                                             const AlignmentModel& model,
                                             const EngineParams& params = {}) {
    // emissions grouped per sender, channels already in enum order
    std::vector<std::vector<EffortEmission>> by_sender(world.size());
    for (const Entity& e : world.entities)
        by_sender[e.id.value] = collect_emissions(world, e, params);

    std::vector<ChannelEi> out;
    for (const Entity& receiver : world.entities) {
        for (const Entity& sender : world.entities) {
            if (sender.id == receiver.id) continue;
            for (const EffortEmission& em : by_sender[sender.id.value])
                out.push_back(compute_channel_ei(world, em, receiver, model));
        }
    }
    return out;
}

}  // namespace imhere

#endif  // IMHERE_SIGNAL_HPP

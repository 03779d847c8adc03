// SPDX-License-Identifier: Apache-2.0
//
// Offline trace summaries: state timelines, engagement episodes,
// miscommunication, politeness and group membership over time.
#ifndef IMHERE_ANALYSIS_HPP
#define IMHERE_ANALYSIS_HPP

#include <array>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "imhere/jsonio.hpp"
#include "imhere/trace.hpp"

namespace imhere {

// A run of consecutive ticks where the ordered pair (a, b) held one state.
struct StateEpisode {
    EntityId a;
    EntityId b;
    RelationState state = RelationState::Passive;
    std::uint64_t start = 0;
    std::uint64_t end = 0;  // inclusive

    friend constexpr bool operator==(const StateEpisode&, const StateEpisode&) = default;
};

// A run of ticks with identical group structure.
struct GroupEpisode {
    std::vector<std::vector<EntityId>> groups;
    std::uint64_t start = 0;
    std::uint64_t end = 0;

    friend bool operator==(const GroupEpisode&, const GroupEpisode&) = default;
};

// First tick a goal pursuer reached Engaged with its target, if ever.
struct TimeToEngaged {
    EntityId entity;
    EntityId target;
    std::optional<std::uint64_t> tick;

    friend constexpr bool operator==(const TimeToEngaged&, const TimeToEngaged&) = default;
};

struct AnalysisReport {
    std::uint64_t ticks = 0;
    std::vector<StateEpisode> state_timeline;        // all pairs, all states
    std::vector<StateEpisode> engagement_episodes;   // Engaged runs, a < b
    std::vector<MiscommunicationEvent> miscommunication;
    std::array<std::uint64_t, 3> politeness_histogram{};  // insufficient/polite/rude
    std::vector<GroupEpisode> group_timeline;
    std::vector<TimeToEngaged> time_to_engaged;

    friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

// Summarizes a record sequence. An empty trace yields an empty report.
inline AnalysisReport analyze(std::span<const TickRecord> records) {
    AnalysisReport report;
    report.ticks = records.size();
    if (records.empty()) return report;

    const auto& members = records.front().objective_states.members();

    for (EntityId a : members) {
        for (EntityId b : members) {
            if (a == b) continue;
            const StateEpisode* open = nullptr;
            for (const TickRecord& rec : records) {
                RelationState s = rec.objective_states.at(a, b);
                if (open && report.state_timeline.back().state == s &&
                    report.state_timeline.back().end + 1 == rec.tick) {
                    report.state_timeline.back().end = rec.tick;
                } else {
                    report.state_timeline.push_back({a, b, s, rec.tick, rec.tick});
                }
                open = &report.state_timeline.back();
            }
        }
    }
    for (const StateEpisode& ep : report.state_timeline)
        if (ep.state == RelationState::Engaged && ep.a < ep.b)
            report.engagement_episodes.push_back(ep);

    for (const TickRecord& rec : records) {
        report.miscommunication.insert(report.miscommunication.end(),
                                       rec.miscommunication.begin(),
                                       rec.miscommunication.end());
        for (const PolitenessReport& p : rec.politeness)
            ++report.politeness_histogram[static_cast<std::size_t>(p.classification)];
    }

    for (const TickRecord& rec : records) {
        std::vector<std::vector<EntityId>> current;
        for (const Group& g : rec.groups) current.push_back(g.members);
        if (!report.group_timeline.empty() &&
            report.group_timeline.back().groups == current &&
            report.group_timeline.back().end + 1 == rec.tick) {
            report.group_timeline.back().end = rec.tick;
        } else {
            report.group_timeline.push_back({std::move(current), rec.tick, rec.tick});
        }
    }

    // goal pursuers are exactly the politeness senders
    for (const TickRecord& rec : records) {
        for (const PolitenessReport& p : rec.politeness) {
            bool known = false;
            for (const TimeToEngaged& t : report.time_to_engaged)
                if (t.entity == p.sender && t.target == p.target) known = true;
            if (!known) report.time_to_engaged.push_back({p.sender, p.target, {}});
        }
    }
    for (TimeToEngaged& t : report.time_to_engaged) {
        for (const TickRecord& rec : records) {
            if (rec.objective_states.at(t.entity, t.target) == RelationState::Engaged) {
                t.tick = rec.tick;
                break;
            }
        }
    }
    return report;
}

namespace analysisdetail {

inline std::string entity_label(const TraceHeader& h, EntityId id) {
    if (id.value < h.entity_names.size()) return h.entity_names[id.value];
    return "#" + std::to_string(id.value);
}

}  // namespace analysisdetail

// Machine-readable form of the report.
inline json report_to_json(const AnalysisReport& report, const TraceHeader& header) {
    using analysisdetail::entity_label;
    json j;
    j["ticks"] = report.ticks;

    json timeline = json::array();
    for (const StateEpisode& ep : report.state_timeline)
        timeline.push_back(json{{"a", entity_label(header, ep.a)},
                                {"b", entity_label(header, ep.b)},
                                {"state", std::string(relation_state_name(ep.state))},
                                {"start", ep.start},
                                {"end", ep.end}});
    j["state_timeline"] = std::move(timeline);

    json episodes = json::array();
    for (const StateEpisode& ep : report.engagement_episodes)
        episodes.push_back(json{{"a", entity_label(header, ep.a)},
                                {"b", entity_label(header, ep.b)},
                                {"start", ep.start},
                                {"end", ep.end}});
    j["engagement_episodes"] = std::move(episodes);

    json misc = json::array();
    for (const MiscommunicationEvent& e : report.miscommunication)
        misc.push_back(json{{"tick", e.tick},
                            {"observer", entity_label(header, e.observer)},
                            {"a", entity_label(header, e.a)},
                            {"b", entity_label(header, e.b)},
                            {"subjective",
                             std::string(relation_state_name(e.subjective_state))},
                            {"objective",
                             std::string(relation_state_name(e.objective_state))}});
    j["miscommunication"] = std::move(misc);

    j["politeness_histogram"] =
        json{{"insufficient", report.politeness_histogram[0]},
             {"polite", report.politeness_histogram[1]},
             {"rude", report.politeness_histogram[2]}};

    json groups = json::array();
    for (const GroupEpisode& ep : report.group_timeline) {
        json gs = json::array();
        for (const auto& members : ep.groups) {
            json ms = json::array();
            for (EntityId m : members) ms.push_back(entity_label(header, m));
            gs.push_back(std::move(ms));
        }
        groups.push_back(json{{"groups", std::move(gs)}, {"start", ep.start}, {"end", ep.end}});
    }
    j["group_timeline"] = std::move(groups);

    json tte = json::array();
    for (const TimeToEngaged& t : report.time_to_engaged)
        tte.push_back(json{{"entity", entity_label(header, t.entity)},
                           {"target", entity_label(header, t.target)},
                           {"tick", t.tick ? json(*t.tick) : json(nullptr)}});
    j["time_to_engaged"] = std::move(tte);
    return j;
}

inline void print_report_text(const AnalysisReport& report, const TraceHeader& header,
                              std::ostream& out) {
    using analysisdetail::entity_label;
    out << "trace: " << report.ticks << " ticks, scenario " << header.scenario_hash
        << ", seed " << header.seed << "\n";

    out << "\nstate timeline (per ordered pair):\n";
    for (const StateEpisode& ep : report.state_timeline)
        out << "  " << entity_label(header, ep.a) << " -> " << entity_label(header, ep.b)
            << ": " << relation_state_name(ep.state) << " [" << ep.start << ".." << ep.end
            << "]\n";

    out << "\nengagement episodes:\n";
    if (report.engagement_episodes.empty()) out << "  none\n";
    for (const StateEpisode& ep : report.engagement_episodes)
        out << "  " << entity_label(header, ep.a) << " <-> " << entity_label(header, ep.b)
            << " [" << ep.start << ".." << ep.end << "]\n";

    out << "\nmiscommunication events: " << report.miscommunication.size() << "\n";
    for (const MiscommunicationEvent& e : report.miscommunication)
        out << "  tick " << e.tick << " " << entity_label(header, e.observer) << " saw ("
            << entity_label(header, e.a) << ", " << entity_label(header, e.b) << ") as "
            << relation_state_name(e.subjective_state) << ", objectively "
            << relation_state_name(e.objective_state) << "\n";

    out << "\npoliteness: insufficient " << report.politeness_histogram[0] << ", polite "
        << report.politeness_histogram[1] << ", rude " << report.politeness_histogram[2]
        << "\n";

    out << "\ngroup timeline:\n";
    for (const GroupEpisode& ep : report.group_timeline) {
        out << "  [" << ep.start << ".." << ep.end << "]";
        if (ep.groups.empty()) out << " no groups";
        for (const auto& members : ep.groups) {
            out << " {";
            for (std::size_t i = 0; i < members.size(); ++i)
                out << (i ? " " : "") << entity_label(header, members[i]);
            out << "}";
        }
        out << "\n";
    }

    out << "\ntime to engaged:\n";
    if (report.time_to_engaged.empty()) out << "  no goal pursuers\n";
    for (const TimeToEngaged& t : report.time_to_engaged) {
        out << "  " << entity_label(header, t.entity) << " -> "
            << entity_label(header, t.target) << ": ";
        if (t.tick)
            out << "tick " << *t.tick << "\n";
        else
            out << "never\n";
    }
}

}  // namespace imhere

#endif  // IMHERE_ANALYSIS_HPP

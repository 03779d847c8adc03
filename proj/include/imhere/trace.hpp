// SPDX-License-Identifier: Apache-2.0
//
// Trace files: a self-describing header line followed by one JSON line per
// tick record. Line-delimited and append-only, so a trace replays into the
// exact analysis the live run produced.
#ifndef IMHERE_TRACE_HPP
#define IMHERE_TRACE_HPP

#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "imhere/engine.hpp"
#include "imhere/jsonio.hpp"
#include "imhere/scenario.hpp"

namespace imhere {

inline constexpr int kTraceVersion = 1;

class TraceError : public SimError {
public:
    using SimError::SimError;
};

struct TraceHeader {
    int version = kTraceVersion;
    std::string engine_version{kEngineVersion};
    std::string scenario_hash;  // hex of the canonical scenario dump
    std::uint64_t seed = 0;
    std::vector<std::string> entity_keys;
    std::vector<std::string> entity_names;

    friend bool operator==(const TraceHeader&, const TraceHeader&) = default;
};

inline TraceHeader make_trace_header(const Scenario& scenario) {
    TraceHeader h;
    h.scenario_hash = scenario_hash(scenario);
    h.seed = scenario.world.rng_seed;
    h.entity_keys = scenario.entity_keys;
    h.entity_names = scenario.entity_names;
    return h;
}

namespace tracedetail {

using namespace jsondetail;

inline char state_char(RelationState s) {
    switch (s) {
        case RelationState::Passive: return 'P';
        case RelationState::Requested: return 'R';
        case RelationState::Buildup: return 'B';
        case RelationState::Engaged: return 'E';
    }
    return '?';
}

inline RelationState state_from_char(char c, const std::string& path) {
    switch (c) {
        case 'P': return RelationState::Passive;
        case 'R': return RelationState::Requested;
        case 'B': return RelationState::Buildup;
        case 'E': return RelationState::Engaged;
    }
    throw FormatError(path, std::string("unknown state code '") + c + "'");
}

inline json dump_state_matrix(const StateMatrix& m) {
    json members = json::array();
    std::string cells;
    for (EntityId e : m.members()) members.push_back(e.value);
    for (EntityId a : m.members())
        for (EntityId b : m.members())
            cells.push_back(a == b ? '-' : state_char(m.at(a, b)));
    return json{{"members", members}, {"cells", cells}};
}

inline StateMatrix parse_state_matrix(const json& obj, std::uint64_t tick,
                                      const std::string& path) {
    check_keys(obj, path, {"members", "cells"});
    std::vector<EntityId> members;
    for (const json& v : require(obj, path, "members"))
        members.push_back(EntityId{static_cast<std::uint32_t>(v.get<std::uint64_t>())});
    StateMatrix m(tick, members);
    const std::string cells = as_string(require(obj, path, "cells"), path + ".cells");
    if (cells.size() != members.size() * members.size())
        throw FormatError(path + ".cells", "cell string has the wrong length");
    std::size_t i = 0;
    for (EntityId a : m.members())
        for (EntityId b : m.members()) {
            char c = cells[i++];
            if (a != b) m.set(a, b, state_from_char(c, path + ".cells"));
        }
    return m;
}

inline json dump_channel_settings(const PerChannel<ChannelSetting>& channels) {
    json out = json::object();
    for (Channel c : kAllChannels) {
        const ChannelSetting& s = channels[c];
        if (s.magnitude == 0.0 && s.contribution == 1.0 && !s.target) continue;
        json one{{"m", s.magnitude}, {"c", s.contribution}};
        if (s.target) one["target"] = s.target->value;
        out[std::string(channel_name(c))] = std::move(one);
    }
    return out;
}

inline PerChannel<ChannelSetting> parse_channel_settings(const json& obj,
                                                         const std::string& path) {
    PerChannel<ChannelSetting> out;
    if (!obj.is_object()) throw FormatError(path, "expected an object");
    for (const auto& [key, value] : obj.items()) {
        Channel c = as_channel(key, path);
        check_keys(value, path + "." + key, {"m", "c", "target"});
        ChannelSetting s;
        s.magnitude = as_number(require(value, path + "." + key, "m"), path);
        s.contribution = as_number(require(value, path + "." + key, "c"), path);
        if (value.contains("target"))
            s.target =
                EntityId{static_cast<std::uint32_t>(value["target"].get<std::uint64_t>())};
        out[c] = s;
    }
    return out;
}

inline json dump_record(const TickRecord& rec) {
    json j;
    j["tick"] = rec.tick;

    json snapshots = json::array();
    for (const EntitySnapshot& s : rec.entity_states)
        snapshots.push_back(json::array({s.pose.position.x, s.pose.position.y,
                                         s.pose.heading, s.pose.body_radius,
                                         s.fov_half_angle, s.engageable}));
    j["entities"] = std::move(snapshots);

    json tables = json::array();
    for (const EiTable& t : rec.ei_tables)
        tables.push_back(json{{"receiver", t.receiver.value}, {"totals", t.totals}});
    j["ei"] = std::move(tables);

    json focus = json::array();
    for (EntityId f : rec.focus_map) focus.push_back(f.value);
    j["focus"] = std::move(focus);

    j["states"] = dump_state_matrix(rec.objective_states);

    json views = json::array();
    for (const SubjectiveView& v : rec.views) {
        json estimates = json::array();
        for (const FocusEstimate& fe : v.estimated_focus)
            estimates.push_back(
                json::array({fe.subject.value, fe.target.value, fe.confidence}));
        views.push_back(json{{"observer", v.observer.value},
                             {"estimates", std::move(estimates)},
                             {"states", dump_state_matrix(v.estimated_states)}});
    }
    j["views"] = std::move(views);

    json misc = json::array();
    for (const MiscommunicationEvent& e : rec.miscommunication)
        misc.push_back(json::array({e.observer.value, e.a.value, e.b.value,
                                    std::string(1, state_char(e.subjective_state)),
                                    std::string(1, state_char(e.objective_state))}));
    j["misc"] = std::move(misc);

    json pol = json::array();
    for (const PolitenessReport& r : rec.politeness) {
        json one{{"sender", r.sender.value},
                 {"target", r.target.value},
                 {"used", r.used_effort},
                 {"class", std::string(politeness_class_name(r.classification))}};
        one["required"] = r.required_effort ? json(*r.required_effort) : json(nullptr);
        pol.push_back(std::move(one));
    }
    j["politeness"] = std::move(pol);

    json groups = json::array();
    for (const Group& g : rec.groups) {
        json members = json::array();
        for (EntityId m : g.members) members.push_back(m.value);
        json edges = json::array();
        for (auto [from, to] : g.focus_edges)
            edges.push_back(json::array({from.value, to.value}));
        groups.push_back(json{{"members", std::move(members)}, {"edges", std::move(edges)}});
    }
    j["groups"] = std::move(groups);

    json formations = json::array();
    for (const FFormation& f : rec.formations)
        formations.push_back(json{{"center", json::array({f.o_center.x, f.o_center.y})},
                                  {"o", f.o_radius},
                                  {"p", f.p_outer_radius},
                                  {"r", f.r_outer_radius}});
    j["formations"] = std::move(formations);

    json plans = json::array();
    for (const EffortPlan& p : rec.plans) {
        json one{{"entity", p.entity.value},
                 {"channels", dump_channel_settings(p.channels)}};
        one["move"] = p.movement
                          ? json::array({p.movement->heading, p.movement->speed})
                          : json(nullptr);
        plans.push_back(std::move(one));
    }
    j["plans"] = std::move(plans);
    return j;
}

inline TickRecord parse_record(const json& j, const std::string& path) {
    check_keys(j, path,
               {"tick", "entities", "ei", "focus", "states", "views", "misc", "politeness",
                "groups", "formations", "plans"});
    TickRecord rec;
    rec.tick = require(j, path, "tick").get<std::uint64_t>();

    for (const json& s : require(j, path, "entities"))
        rec.entity_states.push_back(
            {Pose{{s.at(0).get<double>(), s.at(1).get<double>()}, s.at(2).get<double>(),
                  s.at(3).get<double>()},
             s.at(4).get<double>(), s.at(5).get<bool>()});

    for (const json& t : require(j, path, "ei")) {
        EiTable table;
        table.receiver =
            EntityId{static_cast<std::uint32_t>(t.at("receiver").get<std::uint64_t>())};
        table.totals = t.at("totals").get<std::vector<double>>();
        rec.ei_tables.push_back(std::move(table));
    }
    for (const json& f : require(j, path, "focus"))
        rec.focus_map.push_back(EntityId{static_cast<std::uint32_t>(f.get<std::uint64_t>())});
    rec.objective_states =
        parse_state_matrix(require(j, path, "states"), rec.tick, path + ".states");

    for (const json& v : require(j, path, "views")) {
        SubjectiveView view;
        view.observer =
            EntityId{static_cast<std::uint32_t>(v.at("observer").get<std::uint64_t>())};
        view.last_update_tick = rec.tick;
        for (const json& fe : v.at("estimates"))
            view.estimated_focus.push_back(
                {EntityId{static_cast<std::uint32_t>(fe.at(0).get<std::uint64_t>())},
                 EntityId{static_cast<std::uint32_t>(fe.at(1).get<std::uint64_t>())},
                 fe.at(2).get<double>()});
        view.estimated_states =
            parse_state_matrix(v.at("states"), rec.tick, path + ".views.states");
        rec.views.push_back(std::move(view));
    }

    for (const json& e : require(j, path, "misc"))
        rec.miscommunication.push_back(
            {rec.tick,
             EntityId{static_cast<std::uint32_t>(e.at(0).get<std::uint64_t>())},
             EntityId{static_cast<std::uint32_t>(e.at(1).get<std::uint64_t>())},
             EntityId{static_cast<std::uint32_t>(e.at(2).get<std::uint64_t>())},
             state_from_char(e.at(3).get<std::string>().at(0), path + ".misc"),
             state_from_char(e.at(4).get<std::string>().at(0), path + ".misc")});

    for (const json& r : require(j, path, "politeness")) {
        PolitenessReport report;
        report.tick = rec.tick;
        report.sender =
            EntityId{static_cast<std::uint32_t>(r.at("sender").get<std::uint64_t>())};
        report.target =
            EntityId{static_cast<std::uint32_t>(r.at("target").get<std::uint64_t>())};
        report.used_effort = r.at("used").get<double>();
        if (!r.at("required").is_null())
            report.required_effort = r.at("required").get<double>();
        std::string cls = r.at("class").get<std::string>();
        if (cls == "insufficient")
            report.classification = PolitenessClass::Insufficient;
        else if (cls == "polite")
            report.classification = PolitenessClass::Polite;
        else if (cls == "rude")
            report.classification = PolitenessClass::Rude;
        else
            throw FormatError(path + ".politeness", "unknown class '" + cls + "'");
        rec.politeness.push_back(report);
    }

    for (const json& g : require(j, path, "groups")) {
        Group group;
        for (const json& m : g.at("members"))
            group.members.push_back(
                EntityId{static_cast<std::uint32_t>(m.get<std::uint64_t>())});
        for (const json& edge : g.at("edges"))
            group.focus_edges.push_back(
                {EntityId{static_cast<std::uint32_t>(edge.at(0).get<std::uint64_t>())},
                 EntityId{static_cast<std::uint32_t>(edge.at(1).get<std::uint64_t>())}});
        rec.groups.push_back(std::move(group));
    }
    for (const json& f : require(j, path, "formations"))
        rec.formations.push_back({{f.at("center").at(0).get<double>(),
                                   f.at("center").at(1).get<double>()},
                                  f.at("o").get<double>(),
                                  f.at("p").get<double>(),
                                  f.at("r").get<double>()});

    for (const json& p : require(j, path, "plans")) {
        EffortPlan plan;
        plan.entity =
            EntityId{static_cast<std::uint32_t>(p.at("entity").get<std::uint64_t>())};
        plan.channels = parse_channel_settings(p.at("channels"), path + ".plans.channels");
        if (!p.at("move").is_null())
            plan.movement =
                Movement{p.at("move").at(0).get<double>(), p.at("move").at(1).get<double>()};
        rec.plans.push_back(std::move(plan));
    }
    return rec;
}

inline json dump_header(const TraceHeader& h) {
    json entities = json::array();
    for (std::size_t i = 0; i < h.entity_keys.size(); ++i)
        entities.push_back(json{{"id", h.entity_keys[i]}, {"name", h.entity_names[i]}});
    return json{{"format", "imhere-trace"},
                {"version", h.version},
                {"engine", h.engine_version},
                {"scenario_hash", h.scenario_hash},
                {"seed", h.seed},
                {"entities", std::move(entities)}};
}

inline TraceHeader parse_header(const json& j, const std::string& path) {
    check_keys(j, path, {"format", "version", "engine", "scenario_hash", "seed", "entities"});
    if (as_string(require(j, path, "format"), path) != "imhere-trace")
        throw FormatError(path, "not an imhere trace");
    TraceHeader h;
    h.version = static_cast<int>(require(j, path, "version").get<std::int64_t>());
    if (h.version != kTraceVersion)
        throw FormatError(path, "unsupported trace version " + std::to_string(h.version));
    h.engine_version = as_string(require(j, path, "engine"), path);
    h.scenario_hash = as_string(require(j, path, "scenario_hash"), path);
    h.seed = require(j, path, "seed").get<std::uint64_t>();
    for (const json& e : require(j, path, "entities")) {
        h.entity_keys.push_back(e.at("id").get<std::string>());
        h.entity_names.push_back(e.at("name").get<std::string>());
    }
    return h;
}

}  // namespace tracedetail

struct Trace {
    TraceHeader header;
    std::vector<TickRecord> records;

    friend bool operator==(const Trace&, const Trace&) = default;
};

inline void write_trace(const TraceHeader& header, std::span<const TickRecord> records,
                        std::ostream& out) {
    out << tracedetail::dump_header(header).dump() << '\n';
    for (const TickRecord& rec : records) out << tracedetail::dump_record(rec).dump() << '\n';
}

inline void write_trace(const TraceHeader& header, std::span<const TickRecord> records,
                        const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw TraceError("cannot open '" + path + "' for writing");
    write_trace(header, records, out);
    if (!out) throw TraceError("write to '" + path + "' failed");
}

inline Trace read_trace(std::istream& in, const std::string& origin) {
    Trace trace;
    std::string line;
    if (!std::getline(in, line))
        throw TraceError(origin + ": empty trace (missing header)");
    trace.header = tracedetail::parse_header(
        jsondetail::parse_document(line, origin + " header"), origin + " header");

    std::uint64_t line_no = 1;
    std::int64_t last_good = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            json j = json::parse(line);
            trace.records.push_back(
                tracedetail::parse_record(j, origin + ":" + std::to_string(line_no)));
        } catch (const FormatError&) {
            throw;
        } catch (const std::exception& e) {
            throw TraceError(origin + ": corrupt record at line " + std::to_string(line_no) +
                             " (last good tick " + std::to_string(last_good) + "): " +
                             e.what());
        }
        last_good = static_cast<std::int64_t>(trace.records.back().tick);
    }
    return trace;
}

inline Trace read_trace(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TraceError("cannot open '" + path + "'");
    return read_trace(in, path);
}

}  // namespace imhere

#endif  // IMHERE_TRACE_HPP

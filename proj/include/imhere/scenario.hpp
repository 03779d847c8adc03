// SPDX-License-Identifier: Apache-2.0
//
// Scenario files: the JSON description of a world, its model parameters and
// the run setup. Strictly checked: unknown keys and broken invariants are
// rejected at load time with the offending field named.
#ifndef IMHERE_SCENARIO_HPP
#define IMHERE_SCENARIO_HPP

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "imhere/engine.hpp"
#include "imhere/jsonio.hpp"

namespace imhere {

inline constexpr int kScenarioSchemaVersion = 1;
inline constexpr std::string_view kEngineVersion = "0.1.0";

// A loaded scenario: everything run() needs plus the string keys entities
// were declared with (dense ids are assigned in sorted key order, so the
// declaration order of entities never influences a run).
struct Scenario {
    World world;
    AlignmentModel model;
    EngineParams params;
    StopPredicate stop;
    std::uint64_t ticks = 100;
    std::vector<std::string> entity_keys;    // index == EntityId.value
    std::vector<std::string> entity_names;   // display labels, same order
    std::string canonical;                   // sorted-key dump used for hashing

    EntityId id_of(const std::string& key) const {
        auto it = std::lower_bound(entity_keys.begin(), entity_keys.end(), key);
        if (it == entity_keys.end() || *it != key)
            throw FormatError("scenario", "unknown entity id '" + key + "'");
        return EntityId{static_cast<std::uint32_t>(it - entity_keys.begin())};
    }
};

inline std::string scenario_hash(const Scenario& s) {
    return jsondetail::hex64(jsondetail::fnv1a64(s.canonical));
}

namespace scenariodetail {

using namespace jsondetail;

inline void parse_environment(const json& obj, Environment& env, const std::string& path) {
    check_keys(obj, path, {"noise", "bounds"});
    if (obj.contains("noise")) fill_per_channel(env.noise, obj["noise"], path + ".noise");
    if (obj.contains("bounds")) {
        const json& b = obj["bounds"];
        check_keys(b, path + ".bounds", {"min", "max"});
        env.bounds.min = as_vec2(require(b, path + ".bounds", "min"), path + ".bounds.min");
        env.bounds.max = as_vec2(require(b, path + ".bounds", "max"), path + ".bounds.max");
    }
}

inline void parse_alignment(const json& obj, AlignmentModel& m, const std::string& path) {
    check_keys(obj, path, {"cone_half_angle", "attenuation_exponent", "contact_reach"});
    if (obj.contains("cone_half_angle"))
        fill_per_channel(m.cone_half_angle, obj["cone_half_angle"],
                         path + ".cone_half_angle");
    if (obj.contains("attenuation_exponent"))
        fill_per_channel(m.attenuation_exponent, obj["attenuation_exponent"],
                         path + ".attenuation_exponent");
    if (obj.contains("contact_reach"))
        fill_per_channel(m.contact_reach, obj["contact_reach"], path + ".contact_reach");
}

inline void parse_engine(const json& obj, EngineParams& p, const std::string& path) {
    check_keys(obj, path,
               {"idle_baseline", "epsilon", "kappa", "r_width", "min_o_radius",
                "movement_speed", "interaction_distance", "maintenance_headroom",
                "perception_range", "bump_magnitude", "subjective_views",
                "view_smoothing"});
    auto num = [&](const char* key, double& out) {
        if (obj.contains(key)) out = as_number(obj[key], path + "." + key);
    };
    num("idle_baseline", p.idle_baseline);
    num("epsilon", p.epsilon);
    num("kappa", p.kappa);
    num("r_width", p.r_width);
    num("min_o_radius", p.min_o_radius);
    num("movement_speed", p.movement_speed);
    num("interaction_distance", p.interaction_distance);
    num("maintenance_headroom", p.maintenance_headroom);
    num("perception_range", p.perception_range);
    num("bump_magnitude", p.bump_magnitude);
    num("view_smoothing", p.view_smoothing);
    if (obj.contains("subjective_views"))
        p.subjective_views = as_bool(obj["subjective_views"], path + ".subjective_views");
}

inline Goal parse_goal(const json& obj, const Scenario& s, const std::string& path) {
    if (!obj.is_object()) throw FormatError(path, "expected an object");
    check_keys(obj, path, {"kind", "target", "priority", "politeness_bound"});
    Goal g;
    std::string kind = as_string(require(obj, path, "kind"), path + ".kind");
    if (kind == "engage")
        g.kind = GoalKind::Engage;
    else if (kind == "disengage")
        g.kind = GoalKind::Disengage;
    else if (kind == "avoid_focus")
        g.kind = GoalKind::AvoidFocus;
    else if (kind == "idle")
        g.kind = GoalKind::Idle;
    else
        throw FormatError(path + ".kind", "unknown goal kind '" + kind + "'");
    if (obj.contains("target"))
        g.target = s.id_of(as_string(obj["target"], path + ".target"));
    if ((g.kind == GoalKind::Engage || g.kind == GoalKind::Disengage) && !g.target)
        throw FormatError(path, "goal kind '" + kind + "' requires a target");
    if (obj.contains("priority"))
        g.priority = static_cast<int>(as_number(obj["priority"], path + ".priority"));
    if (obj.contains("politeness_bound"))
        g.politeness_bound = as_number(obj["politeness_bound"], path + ".politeness_bound");
    return g;
}

inline void parse_entity(const json& obj, Scenario& s, EntityId id, const std::string& path) {
    check_keys(obj, path,
               {"id", "name", "position", "heading", "body_radius", "fov_half_angle",
                "engageable", "preferences", "channels", "focus", "goal", "goals"});
    Entity& e = s.world.entity(id);
    e.pose.position = as_vec2(require(obj, path, "position"), path + ".position");
    if (obj.contains("heading"))
        e.pose.heading = wrap_angle(as_number(obj["heading"], path + ".heading"));
    if (obj.contains("body_radius"))
        e.pose.body_radius = as_number(obj["body_radius"], path + ".body_radius");
    if (obj.contains("fov_half_angle"))
        e.fov_half_angle = as_number(obj["fov_half_angle"], path + ".fov_half_angle");
    if (obj.contains("engageable"))
        e.engageable = as_bool(obj["engageable"], path + ".engageable");
    if (obj.contains("preferences"))
        fill_per_channel(e.preferences.weight, obj["preferences"], path + ".preferences");

    if (obj.contains("channels")) {
        const json& chans = obj["channels"];
        if (!chans.is_object()) throw FormatError(path + ".channels", "expected an object");
        for (const auto& [key, value] : chans.items()) {
            Channel c = as_channel(key, path + ".channels");
            const std::string cpath = path + ".channels." + key;
            if (!value.is_object()) throw FormatError(cpath, "expected an object");
            check_keys(value, cpath, {"magnitude", "contribution", "target"});
            ChannelSetting& setting = e.channels[c];
            setting.magnitude = as_number(require(value, cpath, "magnitude"),
                                          cpath + ".magnitude");
            if (setting.magnitude < 0.0)
                throw FormatError(cpath + ".magnitude", "magnitude must be >= 0");
            if (value.contains("contribution")) {
                setting.contribution =
                    as_number(value["contribution"], cpath + ".contribution");
                if (setting.contribution < 0.0)
                    throw FormatError(cpath + ".contribution", "contribution must be >= 0");
            }
            if (value.contains("target"))
                setting.target = s.id_of(as_string(value["target"], cpath + ".target"));
        }
    }

    if (obj.contains("focus"))
        e.focus = s.id_of(as_string(obj["focus"], path + ".focus"));
    else
        e.focus = id;

    // a single goal or a list; the highest priority wins, earlier entries
    // break ties
    std::vector<Goal> goals;
    if (obj.contains("goal")) goals.push_back(parse_goal(obj["goal"], s, path + ".goal"));
    if (obj.contains("goals")) {
        const json& arr = obj["goals"];
        if (!arr.is_array()) throw FormatError(path + ".goals", "expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i)
            goals.push_back(
                parse_goal(arr[i], s, path + ".goals[" + std::to_string(i) + "]"));
    }
    if (!goals.empty()) {
        auto best = std::max_element(goals.begin(), goals.end(),
                                     [](const Goal& a, const Goal& b) {
                                         return a.priority < b.priority;
                                     });
        e.goal = *best;
    }
}

}  // namespace scenariodetail

// Parses scenario text. `origin` names the source (file path) in errors.
// The resulting world always passes validate_world; anything else throws.
inline Scenario parse_scenario(const std::string& text, const std::string& origin) {
    using namespace scenariodetail;
    json doc = parse_document(text, origin);
    if (!doc.is_object()) throw FormatError(origin, "scenario must be a JSON object");
    check_keys(doc, origin,
               {"schema_version", "seed", "ticks", "environment", "alignment", "engine",
                "entities", "stop"});

    int version = static_cast<int>(
        as_number(require(doc, origin, "schema_version"), origin + ".schema_version"));
    if (version != kScenarioSchemaVersion)
        throw FormatError(origin + ".schema_version",
                          "unsupported schema version " + std::to_string(version) +
                              " (engine speaks " + std::to_string(kScenarioSchemaVersion) +
                              ")");

    Scenario s;
    s.canonical = doc.dump();
    if (doc.contains("seed"))
        s.world.rng_seed =
            static_cast<std::uint64_t>(as_number(doc["seed"], origin + ".seed"));
    if (doc.contains("ticks"))
        s.ticks = static_cast<std::uint64_t>(as_number(doc["ticks"], origin + ".ticks"));
    if (doc.contains("environment"))
        parse_environment(doc["environment"], s.world.environment, origin + ".environment");
    if (doc.contains("alignment"))
        parse_alignment(doc["alignment"], s.model, origin + ".alignment");
    if (doc.contains("engine")) parse_engine(doc["engine"], s.params, origin + ".engine");

    const json& entities = require(doc, origin, "entities");
    if (!entities.is_array() || entities.empty())
        throw FormatError(origin + ".entities", "expected a non-empty array");

    // first pass: collect keys so references resolve regardless of order
    struct Declared {
        std::string key;
        const json* obj;
        std::size_t index;
    };
    std::vector<Declared> declared;
    for (std::size_t i = 0; i < entities.size(); ++i) {
        const std::string path = origin + ".entities[" + std::to_string(i) + "]";
        if (!entities[i].is_object()) throw FormatError(path, "expected an object");
        std::string key = as_string(require(entities[i], path, "id"), path + ".id");
        for (const Declared& d : declared)
            if (d.key == key) throw FormatError(path + ".id", "duplicate id '" + key + "'");
        declared.push_back({std::move(key), &entities[i], i});
    }
    std::sort(declared.begin(), declared.end(),
              [](const Declared& a, const Declared& b) { return a.key < b.key; });

    for (const Declared& d : declared) {
        Entity e;
        e.name = d.obj->contains("name")
                     ? as_string((*d.obj)["name"], origin + ".entities[" +
                                                       std::to_string(d.index) + "].name")
                     : d.key;
        s.world.add_entity(std::move(e));
        s.entity_keys.push_back(d.key);
        s.entity_names.push_back(s.world.entities.back().name);
    }
    for (std::size_t slot = 0; slot < declared.size(); ++slot)
        scenariodetail::parse_entity(
            *declared[slot].obj, s, EntityId{static_cast<std::uint32_t>(slot)},
            origin + ".entities[" + std::to_string(declared[slot].index) + "]");

    if (doc.contains("stop")) {
        const json& stop = doc["stop"];
        check_keys(stop, origin + ".stop", {"kind", "a", "b"});
        std::string kind =
            as_string(require(stop, origin + ".stop", "kind"), origin + ".stop.kind");
        if (kind == "pair_engaged") {
            s.stop.kind = StopPredicate::Kind::PairEngaged;
            s.stop.a = s.id_of(as_string(require(stop, origin + ".stop", "a"),
                                         origin + ".stop.a"));
            s.stop.b = s.id_of(as_string(require(stop, origin + ".stop", "b"),
                                         origin + ".stop.b"));
        } else {
            throw FormatError(origin + ".stop.kind", "unknown stop kind '" + kind + "'");
        }
    }

    if (auto violations = validate_world(s.world); !violations.empty())
        throw ValidationError(std::move(violations));
    return s;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(path, "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), path);
}

}  // namespace imhere

#endif  // IMHERE_SCENARIO_HPP

// SPDX-License-Identifier: Apache-2.0
//
// Static vector rendering of one tick: entities with heading wedges and
// field-of-view arcs, focus arrows, state-colored pair links and the
// concentric O/P/R rings of every detected formation.
#ifndef IMHERE_RENDER_HPP
#define IMHERE_RENDER_HPP

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>

#include "imhere/engine.hpp"
#include "imhere/trace.hpp"

namespace imhere {

namespace renderdetail {

inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    std::string s(buf);
    if (s == "-0.00") s = "0.00";  // keep output independent of signed zero
    return s;
}

struct Canvas {
    std::string body;
    double scale = 40.0;  // px per meter
    Vec2 origin;          // world point mapped to the canvas center
    double width = 0.0, height = 0.0;

    double px(double wx) const { return (wx - origin.x) * scale + width / 2.0; }
    // world y grows upward, svg y grows downward
    double py(double wy) const { return height / 2.0 - (wy - origin.y) * scale; }

    void line(Vec2 a, Vec2 b, const std::string& style) {
        body += "<line x1=\"" + num(px(a.x)) + "\" y1=\"" + num(py(a.y)) + "\" x2=\"" +
                num(px(b.x)) + "\" y2=\"" + num(py(b.y)) + "\" " + style + "/>\n";
    }
    void circle(Vec2 c, double r, const std::string& style) {
        body += "<circle cx=\"" + num(px(c.x)) + "\" cy=\"" + num(py(c.y)) + "\" r=\"" +
                num(r * scale) + "\" " + style + "/>\n";
    }
    void wedge(Vec2 c, double radius, double heading, double half_angle,
               const std::string& style) {
        Vec2 a = c + radius * unit_from_heading(heading - half_angle);
        Vec2 b = c + radius * unit_from_heading(heading + half_angle);
        int large = half_angle > kPi / 2.0 ? 1 : 0;
        body += "<path d=\"M " + num(px(c.x)) + " " + num(py(c.y)) + " L " + num(px(a.x)) +
                " " + num(py(a.y)) + " A " + num(radius * scale) + " " +
                num(radius * scale) + " 0 " + std::to_string(large) + " 0 " + num(px(b.x)) +
                " " + num(py(b.y)) + " Z\" " + style + "/>\n";
    }
    void text(Vec2 at, const std::string& label) {
        body += "<text x=\"" + num(px(at.x)) + "\" y=\"" + num(py(at.y)) +
                "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">" + label +
                "</text>\n";
    }
    void arrow(Vec2 from, Vec2 to, const std::string& color) {
        Vec2 dir = to - from;
        double len = dir.norm();
        if (len <= 0.0) return;
        Vec2 u = (1.0 / len) * dir;
        Vec2 tip = to;
        Vec2 left = tip - 0.25 * (Vec2{u.x * 0.866 - u.y * 0.5, u.x * 0.5 + u.y * 0.866});
        Vec2 right = tip - 0.25 * (Vec2{u.x * 0.866 + u.y * 0.5, -u.x * 0.5 + u.y * 0.866});
        std::string style = "stroke=\"" + color + "\" stroke-width=\"1.5\" fill=\"none\"";
        line(from, to, style);
        line(tip, left, style);
        line(tip, right, style);
    }
};

}  // namespace renderdetail

// Renders one record into SVG markup using the poses captured in the record.
// Output bytes are deterministic for identical inputs.
inline std::string render_snapshot(const TickRecord& record, const TraceHeader& header) {
    using renderdetail::num;
    renderdetail::Canvas canvas;
    const auto& entities = record.entity_states;

    // frame the scene around the entities with a margin
    Vec2 lo = entities.empty() ? Vec2{0, 0} : entities.front().pose.position;
    Vec2 hi = lo;
    for (const EntitySnapshot& e : entities) {
        lo.x = std::min(lo.x, e.pose.position.x);
        lo.y = std::min(lo.y, e.pose.position.y);
        hi.x = std::max(hi.x, e.pose.position.x);
        hi.y = std::max(hi.y, e.pose.position.y);
    }
    for (const FFormation& f : record.formations) {
        lo.x = std::min(lo.x, f.o_center.x - f.r_outer_radius);
        lo.y = std::min(lo.y, f.o_center.y - f.r_outer_radius);
        hi.x = std::max(hi.x, f.o_center.x + f.r_outer_radius);
        hi.y = std::max(hi.y, f.o_center.y + f.r_outer_radius);
    }
    const double margin = 2.0;
    canvas.origin = {(lo.x + hi.x) / 2.0, (lo.y + hi.y) / 2.0};
    canvas.width = (hi.x - lo.x + 2.0 * margin) * canvas.scale;
    canvas.height = (hi.y - lo.y + 2.0 * margin) * canvas.scale;

    // O/P/R rings first so everything else draws on top
    for (const FFormation& f : record.formations) {
        canvas.circle(f.o_center, f.r_outer_radius,
                      "fill=\"#f4f0e8\" stroke=\"#c9bf9f\" stroke-width=\"1\"");
        canvas.circle(f.o_center, f.p_outer_radius,
                      "fill=\"#e8eef4\" stroke=\"#9fb3c9\" stroke-width=\"1\"");
        canvas.circle(f.o_center, f.o_radius,
                      "fill=\"#ffffff\" stroke=\"#c9c9c9\" stroke-width=\"1\"");
    }

    // pair links, one per unordered non-passive pair
    const auto& members = record.objective_states.members();
    for (EntityId a : members) {
        for (EntityId b : members) {
            if (!(a < b)) continue;
            RelationState sa = record.objective_states.at(a, b);
            RelationState sb = record.objective_states.at(b, a);
            if (sa == RelationState::Passive && sb == RelationState::Passive) continue;
            std::string color = sa == RelationState::Engaged ? "#2e8b57" : "#d4a017";
            canvas.line(entities[a.value].pose.position, entities[b.value].pose.position,
                        "stroke=\"" + color + "\" stroke-width=\"2\" stroke-dasharray=\"" +
                            (sa == RelationState::Engaged ? "none" : "6 4") + "\"");
        }
    }

    // entities: field of view, body, heading, label
    for (std::size_t i = 0; i < entities.size(); ++i) {
        const EntitySnapshot& e = entities[i];
        if (e.engageable)
            canvas.wedge(e.pose.position, 1.5, e.pose.heading, e.fov_half_angle,
                         "fill=\"#dce9f7\" fill-opacity=\"0.5\" stroke=\"none\"");
        canvas.circle(e.pose.position, e.pose.body_radius,
                      e.engageable
                          ? "fill=\"#ffffff\" stroke=\"#444\" stroke-width=\"1.5\""
                          : "fill=\"#dddddd\" stroke=\"#888\" stroke-width=\"1.5\"");
        canvas.line(e.pose.position,
                    e.pose.position + e.pose.body_radius * unit_from_heading(e.pose.heading),
                    "stroke=\"#444\" stroke-width=\"2\"");
        std::string label = i < header.entity_names.size() ? header.entity_names[i]
                                                           : "#" + std::to_string(i);
        canvas.text(e.pose.position + Vec2{e.pose.body_radius + 0.08,
                                           e.pose.body_radius + 0.08},
                    label);
    }

    // focus arrows from body edge to body edge
    for (std::uint32_t i = 0; i < record.focus_map.size(); ++i) {
        EntityId to = record.focus_map[i];
        if (to.value == i) continue;
        const EntitySnapshot& a = entities[i];
        const EntitySnapshot& b = entities[to.value];
        Vec2 d = b.pose.position - a.pose.position;
        double len = d.norm();
        if (len <= 0.0) continue;
        Vec2 u = (1.0 / len) * d;
        canvas.arrow(a.pose.position + a.pose.body_radius * u,
                     b.pose.position - (b.pose.body_radius + 0.05) * u, "#555");
    }

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      num(canvas.width) + "\" height=\"" + num(canvas.height) +
                      "\" viewBox=\"0 0 " + num(canvas.width) + " " + num(canvas.height) +
                      "\">\n<rect width=\"100%\" height=\"100%\" fill=\"#fbfbf8\"/>\n" +
                      "<!-- tick " + std::to_string(record.tick) + " -->\n" + canvas.body +
                      "</svg>\n";
    return svg;
}

inline void render_snapshot_file(const TickRecord& record, const TraceHeader& header,
                                 const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw TraceError("cannot open '" + path + "' for writing");
    out << render_snapshot(record, header);
    if (!out) throw TraceError("write to '" + path + "' failed");
}

}  // namespace imhere

#endif  // IMHERE_RENDER_HPP

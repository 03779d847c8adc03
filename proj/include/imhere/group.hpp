// SPDX-License-Identifier: Apache-2.0
//
// Focus-chain groups and their F-formation geometry. Groups are the weakly
// connected components of the external-focus digraph; the O/P/R spaces are
// concentric rings around the member centroid.
#ifndef IMHERE_GROUP_HPP
#define IMHERE_GROUP_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "imhere/core.hpp"
#include "imhere/focus.hpp"

namespace imhere {

// One focus-chain component: members plus the directed focus links among them.
struct Group {
    std::vector<EntityId> members;  // sorted by id, size >= 2
    std::vector<std::pair<EntityId, EntityId>> focus_edges;

    friend bool operator==(const Group&, const Group&) = default;
};

namespace detail {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    std::uint32_t find(std::uint32_t p) {
        std::uint32_t root = p;
        while (root != parent_[root]) root = parent_[root];
        while (p != root) {
            std::uint32_t next = parent_[p];
            parent_[p] = root;
            p = next;
        }
        return root;
    }
    void merge(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
};

}  // namespace detail

// Weakly connected components (size >= 2) of the digraph whose edges are
// external focuses; self-focus contributes no edge. Groups are ordered by
// their smallest member id, members within a group by id.
inline std::vector<Group> detect_groups(const FocusMap& focus_map) {
    const std::uint32_t n = static_cast<std::uint32_t>(focus_map.size());
    detail::UnionFind uf(n);
    for (std::uint32_t a = 0; a < n; ++a)
        if (focus_map[a].value != a) uf.merge(a, focus_map[a].value);

    // bucket members by root, keeping only components that own an edge
    std::vector<std::vector<EntityId>> buckets(n);
    for (std::uint32_t a = 0; a < n; ++a) buckets[uf.find(a)].push_back(EntityId{a});

    std::vector<Group> groups;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (buckets[root].size() < 2) continue;
        Group g;
        g.members = std::move(buckets[root]);
        for (EntityId a : g.members)
            if (focus_map[a.value] != a) g.focus_edges.push_back({a, focus_map[a.value]});
        groups.push_back(std::move(g));
    }
    return groups;
}

// Concentric F-formation spaces: inner O-space for the activity, P-space ring
// for the participants, R-space buffer toward the outside world.
struct FFormation {
    Vec2 o_center;
    double o_radius = 0.0;
    double p_outer_radius = 0.0;
    double r_outer_radius = 0.0;

    friend constexpr bool operator==(const FFormation&, const FFormation&) = default;
};

// Ring geometry from member poses: the O-space ends where the average body
// begins, the P-space covers the farthest member's body, and the R-space adds
// a fixed-width buffer. Coincident members collapse to the minimum-radius
// formation; the P-ring always keeps at least min_o_radius of width so the
// radius ordering 0 < o < p < r holds for any input.
inline FFormation compute_f_formation(const Group& group, const World& world,
                                      double min_o_radius = 0.3, double r_width = 1.0) {
    if (group.members.size() < 2)
        throw SimError("compute_f_formation: group needs at least two members");

    FFormation f;
    double sum_x = 0.0, sum_y = 0.0;
    for (EntityId m : group.members) {
        const Pose& p = world.entity(m).pose;
        sum_x += p.position.x;
        sum_y += p.position.y;
    }
    const double n = static_cast<double>(group.members.size());
    f.o_center = {sum_x / n, sum_y / n};

    double mean_dist = 0.0, mean_radius = 0.0, max_dist = 0.0, max_radius = 0.0;
    for (EntityId m : group.members) {
        const Pose& p = world.entity(m).pose;
        double d = distance(f.o_center, p.position);
        mean_dist += d;
        mean_radius += p.body_radius;
        max_dist = std::max(max_dist, d);
        max_radius = std::max(max_radius, p.body_radius);
    }
    mean_dist /= n;
    mean_radius /= n;

    f.o_radius = std::max(min_o_radius, mean_dist - mean_radius);
    f.p_outer_radius = std::max(max_dist + max_radius, f.o_radius + min_o_radius);
    f.r_outer_radius = f.p_outer_radius + r_width;
    return f;
}

enum class FRegion : std::uint8_t { O, P, R, Outside };

constexpr std::string_view f_region_name(FRegion r) {
    switch (r) {
        case FRegion::O: return "O";
        case FRegion::P: return "P";
        case FRegion::R: return "R";
        case FRegion::Outside: return "outside";
    }
    return "?";
}

// Radial classification against the three rings; boundaries belong to the
// inner region.
inline FRegion classify_position(Vec2 point, const FFormation& formation) {
    double d = distance(formation.o_center, point);
    if (d <= formation.o_radius) return FRegion::O;
    if (d <= formation.p_outer_radius) return FRegion::P;
    if (d <= formation.r_outer_radius) return FRegion::R;
    return FRegion::Outside;
}

}  // namespace imhere

#endif  // IMHERE_GROUP_HPP

// SPDX-License-Identifier: Apache-2.0
//
// Stage 3: derive the four relational states for every ordered entity pair
// from the focus map. The matrix is recomputed from scratch each tick, so
// illegal state transitions are unrepresentable.
#ifndef IMHERE_RELATION_HPP
#define IMHERE_RELATION_HPP

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "imhere/core.hpp"
#include "imhere/focus.hpp"

namespace imhere {

// The two sides of one relationship, from the two focus booleans:
//   (0,0) -> Passive/Passive      (0,1) -> Requested/Buildup
//   (1,0) -> Buildup/Requested    (1,1) -> Engaged/Engaged
constexpr std::pair<RelationState, RelationState> pair_state(bool a_focuses_b,
                                                             bool b_focuses_a) {
    if (a_focuses_b && b_focuses_a)
        return {RelationState::Engaged, RelationState::Engaged};
    if (a_focuses_b) return {RelationState::Buildup, RelationState::Requested};
    if (b_focuses_a) return {RelationState::Requested, RelationState::Buildup};
    return {RelationState::Passive, RelationState::Passive};
}

// States of all ordered pairs over a member set (the whole world for the
// objective view, the perceived subset for subjective ones). at(a, b) is the
// state of a within the (a, b) relationship.
class StateMatrix {
public:
    StateMatrix() = default;
    StateMatrix(std::uint64_t tick, std::vector<EntityId> members)
        : tick_(tick), members_(std::move(members)) {
        std::sort(members_.begin(), members_.end());
        cells_.assign(members_.size() * members_.size(), RelationState::Passive);
    }

    std::uint64_t tick() const { return tick_; }
    const std::vector<EntityId>& members() const { return members_; }

    bool contains(EntityId e) const { return index_of(e) >= 0; }
    bool contains_pair(EntityId a, EntityId b) const {
        return index_of(a) >= 0 && index_of(b) >= 0;
    }

    RelationState at(EntityId a, EntityId b) const {
        return cells_[cell_index(a, b)];
    }
    void set(EntityId a, EntityId b, RelationState s) { cells_[cell_index(a, b)] = s; }

    friend bool operator==(const StateMatrix&, const StateMatrix&) = default;

private:
    std::ptrdiff_t index_of(EntityId e) const {
        auto it = std::lower_bound(members_.begin(), members_.end(), e);
        if (it == members_.end() || *it != e) return -1;
        return it - members_.begin();
    }
    std::size_t cell_index(EntityId a, EntityId b) const {
        auto ia = index_of(a), ib = index_of(b);
        if (ia < 0 || ib < 0) throw SimError("StateMatrix: pair outside member set");
        return static_cast<std::size_t>(ia) * members_.size() + static_cast<std::size_t>(ib);
    }

    std::uint64_t tick_ = 0;
    std::vector<EntityId> members_;
    std::vector<RelationState> cells_;
};

// Builds the matrix over `members` where focus_of(e) names e's focus target;
// self-focus counts as focusing no other entity.
template <typename FocusFn>
StateMatrix derive_state_matrix(std::span<const EntityId> members, FocusFn&& focus_of,
                                std::uint64_t tick) {
    StateMatrix m(tick, {members.begin(), members.end()});
    const auto& ids = m.members();
    for (EntityId a : ids) {
        EntityId fa = focus_of(a);
        for (EntityId b : ids) {
            if (a == b) continue;
            EntityId fb = focus_of(b);
            m.set(a, b, pair_state(fa == b, fb == a).first);
        }
    }
    return m;
}

// Objective matrix over every entity in the focus map.
inline StateMatrix compute_state_matrix(const FocusMap& focus_map, std::uint64_t tick = 0) {
    std::vector<EntityId> members(focus_map.size());
    for (std::uint32_t i = 0; i < focus_map.size(); ++i) members[i] = EntityId{i};
    return derive_state_matrix(members, [&](EntityId e) { return focus_map[e.value]; },
                               tick);
}

// Focus-of-focus check: an entity is engaged iff the entity it focuses
// focuses it back. Self-focused entities are never engaged.
inline bool is_engaged(EntityId entity, const FocusMap& focus_map) {
    EntityId f = focus_map[entity.value];
    if (f == entity) return false;
    return focus_map[f.value] == entity;
}

}  // namespace imhere

#endif  // IMHERE_RELATION_HPP

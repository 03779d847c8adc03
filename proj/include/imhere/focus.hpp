// SPDX-License-Identifier: Apache-2.0
//
// Stage 2: fold per-channel interpretations into one total per sender and
// pick each entity's single focus by argmax.
#ifndef IMHERE_FOCUS_HPP
#define IMHERE_FOCUS_HPP

#include <span>
#include <vector>

#include "imhere/signal.hpp"

namespace imhere {

// All interpreted effort one receiver sees this tick, totalled per sender.
// Covers every entity in the world; the self entry carries the idle baseline.
struct EiTable {
    EntityId receiver;
    std::vector<double> totals;  // indexed by sender EntityId

    double total(EntityId sender) const { return totals[sender.value]; }
    friend bool operator==(const EiTable&, const EiTable&) = default;
};

// Focus assignment for the whole world, indexed by EntityId.
using FocusMap = std::vector<EntityId>;

// totals[s] = sum of channel EI values from sender s; totals[receiver] is the
// idle baseline; entities that sent nothing contribute 0. Entries for other
// receivers are ignored, so the full per-tick collection can be passed as is.
inline EiTable aggregate_ei(EntityId receiver, std::span<const ChannelEi> channel_eis,
                            double idle_baseline, const World& world) {
    EiTable table;
    table.receiver = receiver;
    table.totals.assign(world.size(), 0.0);
    for (const ChannelEi& ei : channel_eis)
        if (ei.receiver == receiver) table.totals[ei.sender.value] += ei.value;
    table.totals[receiver.value] = idle_baseline;
    return table;
}

// Argmax over the table. Ties go to the previous focus when it is among the
// maximizers, otherwise to the lowest id, so repeated evaluation on identical
// inputs always lands on the same entity.
inline EntityId compute_focus(const EiTable& table, EntityId previous_focus) {
    EntityId best{0};
    double best_value = table.totals.empty() ? 0.0 : table.totals[0];
    for (std::uint32_t i = 1; i < table.totals.size(); ++i) {
        if (table.totals[i] > best_value) {
            best = EntityId{i};
            best_value = table.totals[i];
        }
    }
    if (previous_focus.value < table.totals.size() &&
        table.totals[previous_focus.value] == best_value)
        return previous_focus;
    return best;
}

// Focus for every entity: engageable entities via argmax over their table,
// objects pinned to themselves.
inline FocusMap compute_all_focus(const World& world, std::span<const EiTable> tables) {
    FocusMap map(world.size());
    for (const Entity& e : world.entities) map[e.id.value] = e.id;  // objects stay inward
    for (const EiTable& t : tables) {
        const Entity& receiver = world.entity(t.receiver);
        if (!receiver.engageable) continue;
        map[t.receiver.value] = compute_focus(t, receiver.focus);
    }
    return map;
}

}  // namespace imhere

#endif  // IMHERE_FOCUS_HPP

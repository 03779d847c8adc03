// SPDX-License-Identifier: Apache-2.0
#ifndef IMHERE_PARAMS_HPP
#define IMHERE_PARAMS_HPP

namespace imhere {

// Tunables shared across the loop stages. All are scenario-configurable.
struct EngineParams {
    // Self entry of every interpretation table. Keeps negligible signals
    // from capturing an otherwise unstimulated entity's focus.
    double idle_baseline = 0.05;

    // Margin by which a courting sender must beat the strongest competitor.
    double epsilon = 0.01;

    // Politeness ceiling: effort above kappa * required reads as rude.
    double kappa = 2.0;

    // F-formation geometry.
    double r_width = 1.0;
    double min_o_radius = 0.3;

    // Strategy kinematics.
    double movement_speed = 0.5;        // m per tick
    double interaction_distance = 1.2;  // preferred approach distance, m
    double maintenance_headroom = 0.1;  // extra margin while holding focus

    // An observer estimates entities it receives effort from, or anything
    // within this radius. Bounds subjective estimation to O(N^2) per observer.
    double perception_range = 10.0;

    // Derived Bumping emission strength when bodies overlap.
    double bump_magnitude = 5.0;

    // Whether per-entity subjective views are computed each tick.
    bool subjective_views = true;

    // Exponential smoothing of estimate confidence across ticks; 0 disables.
    double view_smoothing = 0.0;

    friend constexpr bool operator==(const EngineParams&, const EngineParams&) = default;
};

}  // namespace imhere

#endif  // IMHERE_PARAMS_HPP

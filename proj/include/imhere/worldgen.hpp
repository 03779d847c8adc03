// SPDX-License-Identifier: Apache-2.0
#ifndef IMHERE_WORLDGEN_HPP
#define IMHERE_WORLDGEN_HPP

#include <cstdint>
#include <string>

#include "imhere/core.hpp"

namespace imhere {

// Deterministic, portable generator (splitmix64). Standard-library
// distributions vary across implementations; this does not.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

private:
    std::uint64_t state_;
};

// A random but valid crowd: engageable entities scattered over the bounds,
// everyone present on Body, a fraction gazing or talking at random targets.
// Fully determined by (seed, count).
inline World random_world(std::uint64_t seed, std::size_t count,
                          double extent = 20.0) {
    Rng rng(seed);
    World world;
    world.rng_seed = seed;
    world.environment.bounds = {{-extent, -extent}, {extent, extent}};

    for (std::size_t i = 0; i < count; ++i) {
        Entity e;
        e.name = "agent" + std::to_string(i);
        e.pose.position = {rng.uniform(-extent, extent), rng.uniform(-extent, extent)};
        e.pose.heading = rng.uniform(0.0, kTwoPi);
        e.pose.body_radius = rng.uniform(0.25, 0.45);
        e.fov_half_angle = rng.uniform(kPi / 4.0, kPi / 2.0);
        e.channels[Channel::Body] = {1.0, 1.0, {}};
        world.add_entity(std::move(e));
    }
    for (Entity& e : world.entities) {
        if (count < 2) break;
        double roll = rng.uniform();
        auto pick_other = [&] {
            EntityId t{static_cast<std::uint32_t>(rng.below(count))};
            while (t == e.id) t = EntityId{static_cast<std::uint32_t>(rng.below(count))};
            return t;
        };
        if (roll < 0.5)
            e.channels[Channel::Gaze] = {rng.uniform(0.5, 2.0), 1.0, pick_other()};
        if (roll < 0.2)
            e.channels[Channel::Talking] = {rng.uniform(0.5, 3.0), 1.0, pick_other()};
    }
    return world;
}

}  // namespace imhere

#endif  // IMHERE_WORLDGEN_HPP

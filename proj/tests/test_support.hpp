// SPDX-License-Identifier: Apache-2.0
#ifndef IMHERE_TEST_SUPPORT_HPP
#define IMHERE_TEST_SUPPORT_HPP

#include <string>

#include "imhere/imhere.hpp"

namespace imtest {

using namespace imhere;

// Engageable entity with a wide view and unit Body presence.
inline Entity agent(std::string name, Vec2 pos, double heading = 0.0,
                    double fov = kPi / 2.0) {
    Entity e;
    e.name = std::move(name);
    e.pose.position = pos;
    e.pose.heading = wrap_angle(heading);
    e.fov_half_angle = fov;
    e.channels[Channel::Body] = {1.0, 1.0, {}};
    return e;
}

inline Entity object(std::string name, Vec2 pos) {
    Entity e;
    e.name = std::move(name);
    e.pose.position = pos;
    e.engageable = false;
    e.channels[Channel::Body] = {1.0, 1.0, {}};
    return e;
}

inline World empty_world() {
    World w;
    w.environment.bounds = {{-50, -50}, {50, 50}};
    return w;
}

// Reconstructs the scene of the paper's worked example: Alex facing Carla,
// Bob waving at Carla from outside Alex's view, Carla seeing both.
inline World fig4_world() {
    World w = empty_world();
    Entity alex = agent("alex", {0, 0}, 0.0, kPi / 4.0);
    alex.channels[Channel::Gaze] = {1.0, 1.0, EntityId{2}};
    Entity bob = agent("bob", {2, 3}, 5.300391583932257, kPi / 3.0);
    bob.channels[Channel::Gaze] = {1.0, 1.0, EntityId{2}};
    bob.channels[Channel::Gesture] = {1.0, 1.0, EntityId{2}};
    Entity carla = agent("carla", {4, 0}, kPi, 1.4);
    carla.channels[Channel::Gaze] = {1.0, 1.0, EntityId{1}};
    w.add_entity(std::move(alex));
    w.add_entity(std::move(bob));
    w.add_entity(std::move(carla));
    w.entity(EntityId{0}).focus = EntityId{2};
    w.entity(EntityId{1}).focus = EntityId{2};
    w.entity(EntityId{2}).focus = EntityId{0};
    return w;
}

inline std::string scenario_path(const std::string& name) {
    return std::string(IMHERE_SCENARIO_DIR) + "/" + name;
}

}  // namespace imtest

#endif  // IMHERE_TEST_SUPPORT_HPP

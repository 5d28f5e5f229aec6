#pragma once

#include "pedsim/params.hpp"
#include "pedsim/scene.hpp"
#include "pedsim/vec2.hpp"

#include <span>

namespace pedsim {

// Pole force on the charge at `from` exerted by the charge at `to`:
// magnitude k*q1*q2 / max(r, r_min)^2 along unit(from - to). Like signs
// repel, unlike signs attract; the pair is exactly Newton-symmetric.
// Coincident points fall back to the +x direction.
Vec2 coulomb_force(double q1, double q2, Vec2 from, Vec2 to, double k, double r_min);

// Collision-avoidance steering |V| * cos(alpha) * tan(min(beta, beta_max)),
// perpendicular to V on the side that rotates V away from the other party.
// alpha is the angle between V and the line of sight, beta between the
// relative velocity V - other_vel and the line of sight. Zero when not
// closing in or when alpha >= pi/2.
Vec2 avoidance_acceleration(Vec2 velocity, Vec2 other_pos, Vec2 other_vel, Vec2 self_pos,
                            double beta_max);

// Total acceleration: (goal pull + pedestrian and obstacle pole pushes) / m
// plus avoidance terms for every approaching pedestrian and obstacle.
// `others` may include the agent itself (skipped by id) but no arrived
// agents. Throws SimulationError on a non-finite term.
Vec2 magnetic_acceleration(const Agent& agent, std::span<const Agent> others,
                           std::span<const Obstacle> obstacles,
                           const MagneticParams& params);

}  // namespace pedsim

#pragma once

#include "pedsim/params.hpp"
#include "pedsim/rng.hpp"
#include "pedsim/scene.hpp"
#include "pedsim/vec2.hpp"

#include <span>

namespace pedsim {

// Ideal speed: remaining distance over remaining time, clamped to
// [v_min, v_max]. Agents past their target time hurry at v_max.
double intended_speed(Vec2 position, Vec2 destination, double target_time, double now,
                      double v_max, double v_min);

// Relaxation toward the intended velocity: m * (v0 * e - v) / tau with
// e = unit(destination - position). Throws std::invalid_argument when the
// agent already stands on its destination.
Vec2 driving_force(const Agent& agent, double v0, double tau);

// Circular exponential repulsion m*A*exp((r_i + r_j - d) / B) along
// unit(self - other). Coincident agents push along +x.
Vec2 pair_force(const Agent& self, const Agent& other, double A, double B);

// Sum of wall repulsions m*wall_A*exp((r_i - d_w) / wall_B) away from the
// nearest point of each obstacle. An agent exactly on an obstacle is pushed
// along +x.
Vec2 boundary_force(const Agent& agent, std::span<const Obstacle> obstacles,
                    double wall_A, double wall_B);

// Full acceleration: (driving + pair sum + boundary) / m plus a Gaussian
// fluctuation of per-component stddev sigma_xi. Consumes exactly two
// Gaussian draws per call regardless of sigma_xi, so the stream layout is
// stable. `others` may include the agent itself (skipped by id) but no
// arrived agents. Throws SimulationError on a non-finite term.
Vec2 social_acceleration(const Agent& agent, std::span<const Agent> others,
                         std::span<const Obstacle> obstacles, const SocialParams& params,
                         double now, Rng& rng);

}  // namespace pedsim

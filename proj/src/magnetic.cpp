#include "pedsim/magnetic.hpp"

#include "pedsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pedsim {

Vec2 coulomb_force(double q1, double q2, Vec2 from, Vec2 to, double k, double r_min) {
    const Vec2 separation = from - to;
    const double r = norm(separation);
    const double clamped = std::max(r, r_min);
    // q1*q2 first so the pair force is bitwise Newton-symmetric.
    const double magnitude = k * (q1 * q2) / (clamped * clamped);
    const Vec2 direction = r == 0.0 ? Vec2{1.0, 0.0} : separation / r;
    return direction * magnitude;
}

Vec2 avoidance_acceleration(Vec2 velocity, Vec2 other_pos, Vec2 other_vel, Vec2 self_pos,
                            double beta_max) {
    const Vec2 sight = other_pos - self_pos;
    const double sight_norm = norm(sight);
    const double speed = norm(velocity);
    if (sight_norm == 0.0 || speed == 0.0) {
        return {};
    }
    const Vec2 relative = velocity - other_vel;
    const double closing = dot(relative, sight);
    if (closing <= 0.0) {
        return {};  // receding or tangent: no steering
    }
    const double cos_alpha = dot(velocity, sight) / (speed * sight_norm);
    if (cos_alpha <= 0.0) {
        return {};  // other party is abeam or behind
    }
    const double relative_norm = norm(relative);
    const double cos_beta =
        std::clamp(closing / (relative_norm * sight_norm), -1.0, 1.0);
    const double beta = std::acos(cos_beta);
    const double magnitude = speed * cos_alpha * std::tan(std::min(beta, beta_max));
    // Steer perpendicular to V, away from the other party; dead ahead
    // resolves to the agent's left.
    const Vec2 perpendicular = cross(velocity, sight) > 0.0
                                   ? Vec2{velocity.y, -velocity.x} / speed
                                   : Vec2{-velocity.y, velocity.x} / speed;
    return perpendicular * magnitude;
}

namespace {

void check_finite(Vec2 v, std::int64_t agent_id, const std::string& term) {
    if (!is_finite(v)) {
        throw SimulationError(agent_id, term, "non-finite force term");
    }
}

}  // namespace

Vec2 magnetic_acceleration(const Agent& agent, std::span<const Agent> others,
                           std::span<const Obstacle> obstacles,
                           const MagneticParams& params) {
    Vec2 force = coulomb_force(agent.charge, params.goal_charge, agent.position,
                               agent.destination, params.k_coulomb, params.r_min);
    check_finite(force, agent.id, "goal pole");
    for (const Agent& other : others) {
        if (other.id == agent.id) continue;
        force += coulomb_force(agent.charge, other.charge, agent.position, other.position,
                               params.k_coulomb, params.r_min);
        check_finite(force, agent.id, "pedestrian pole " + std::to_string(other.id));
    }
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
        const Vec2 pole = nearest_point_on_obstacle(agent.position, obstacles[i]);
        force += coulomb_force(agent.charge, obstacles[i].charge, agent.position, pole,
                               params.k_coulomb, params.r_min);
        check_finite(force, agent.id, "obstacle pole " + std::to_string(i));
    }

    Vec2 acceleration = force / agent.mass;
    for (const Agent& other : others) {
        if (other.id == agent.id) continue;
        acceleration += avoidance_acceleration(agent.velocity, other.position,
                                               other.velocity, agent.position,
                                               params.beta_max);
        check_finite(acceleration, agent.id,
                     "avoidance of pedestrian " + std::to_string(other.id));
    }
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
        const Vec2 pole = nearest_point_on_obstacle(agent.position, obstacles[i]);
        acceleration += avoidance_acceleration(agent.velocity, pole, Vec2{},
                                               agent.position, params.beta_max);
        check_finite(acceleration, agent.id, "avoidance of obstacle " + std::to_string(i));
    }
    return acceleration;
}

}  // namespace pedsim

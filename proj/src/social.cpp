#include "pedsim/social.hpp"

#include "pedsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pedsim {

double intended_speed(Vec2 position, Vec2 destination, double target_time, double now,
                      double v_max, double v_min) {
    const double remaining_time = target_time - now;
    if (remaining_time <= 0.0) {
        return v_max;
    }
    const double ideal = distance(destination, position) / remaining_time;
    return std::clamp(ideal, v_min, v_max);
}

Vec2 driving_force(const Agent& agent, double v0, double tau) {
    if (agent.destination == agent.position) {
        throw std::invalid_argument("driving_force: agent already at its destination");
    }
    const Vec2 direction = unit(agent.destination - agent.position);
    return agent.mass * (v0 * direction - agent.velocity) / tau;
}

Vec2 pair_force(const Agent& self, const Agent& other, double A, double B) {
    const Vec2 separation = self.position - other.position;
    const double d = norm(separation);
    const Vec2 direction = d == 0.0 ? Vec2{1.0, 0.0} : separation / d;
    const double magnitude =
        self.mass * A * std::exp((self.radius + other.radius - d) / B);
    return direction * magnitude;
}

Vec2 boundary_force(const Agent& agent, std::span<const Obstacle> obstacles,
                    double wall_A, double wall_B) {
    Vec2 total{};
    for (const Obstacle& o : obstacles) {
        const Vec2 nearest = nearest_point_on_obstacle(agent.position, o);
        const Vec2 separation = agent.position - nearest;
        const double d = norm(separation);
        const Vec2 direction = d == 0.0 ? Vec2{1.0, 0.0} : separation / d;
        total += direction * (agent.mass * wall_A * std::exp((agent.radius - d) / wall_B));
    }
    return total;
}

namespace {

void check_finite(Vec2 v, std::int64_t agent_id, const std::string& term) {
    if (!is_finite(v)) {
        throw SimulationError(agent_id, term, "non-finite force term");
    }
}

}  // namespace

Vec2 social_acceleration(const Agent& agent, std::span<const Agent> others,
                         std::span<const Obstacle> obstacles, const SocialParams& params,
                         double now, Rng& rng) {
    const double v0 = intended_speed(agent.position, agent.destination, agent.target_time,
                                     now, agent.v_max, agent.v_min);
    Vec2 force = driving_force(agent, v0, params.tau);
    check_finite(force, agent.id, "driving");
    for (const Agent& other : others) {
        if (other.id == agent.id) continue;
        force += pair_force(agent, other, params.A, params.B);
        check_finite(force, agent.id, "pair repulsion of " + std::to_string(other.id));
    }
    force += boundary_force(agent, obstacles, params.wall_A, params.wall_B);
    check_finite(force, agent.id, "boundary");

    Vec2 acceleration = force / agent.mass;
    const Vec2 fluctuation{rng.gaussian(params.sigma_xi), rng.gaussian(params.sigma_xi)};
    acceleration += fluctuation;
    check_finite(acceleration, agent.id, "fluctuation");
    return acceleration;
}

}  // namespace pedsim

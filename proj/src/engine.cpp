#include "pedsim/engine.hpp"

#include "pedsim/errors.hpp"
#include "pedsim/magnetic.hpp"
#include "pedsim/social.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace pedsim {

bool SimulationState::all_arrived() const {
    return std::all_of(agents.begin(), agents.end(),
                       [](const Agent& a) { return a.arrived; });
}

Vec2 clamp_speed(Vec2 v, double v_max) {
    const double speed = norm(v);
    if (speed <= v_max) {
        return v;
    }
    return v * (v_max / speed);
}

namespace {

Vec2 arrival_target(const SimulationState& state, const Agent& agent) {
    return state.grid ? state.grid->snapped_destination(agent.id) : agent.destination;
}

void mark_arrivals(SimulationState& state, const Scenario& scenario) {
    for (Agent& agent : state.agents) {
        if (agent.arrived) continue;
        if (distance(agent.position, arrival_target(state, agent)) <=
            scenario.arrival_tolerance) {
            if (state.grid) {
                state.grid->vacate(agent.id, state.grid->cell_of(agent.position));
            }
            agent.arrived = true;
        }
    }
}

void record_active(SimulationState& state) {
    for (const Agent& agent : state.agents) {
        if (agent.arrived) continue;
        state.trajectory.push_back({state.time, agent.id, agent.position, agent.velocity});
    }
}

// Push the agent body out of every penetrated obstacle. A projection can
// re-violate a neighboring obstacle near corners, hence the fixed-order
// passes.
void project_out_of_obstacles(Agent& agent, std::span<const Obstacle> obstacles) {
    constexpr int kMaxPasses = 8;
    for (int pass = 0; pass < kMaxPasses; ++pass) {
        bool moved = false;
        for (const Obstacle& o : obstacles) {
            const Vec2 nearest = nearest_point_on_obstacle(agent.position, o);
            const Vec2 away = agent.position - nearest;
            const double d = norm(away);
            if (d >= agent.radius) continue;
            const Vec2 direction = d == 0.0 ? Vec2{1.0, 0.0} : away / d;
            agent.position = nearest + direction * agent.radius;
            moved = true;
        }
        if (!moved) break;
    }
}

void continuous_step(SimulationState& state, const Scenario& scenario,
                     const std::vector<Obstacle>& obstacles) {
    // Snapshot of the active crowd; every acceleration reads this, not the
    // in-place updates.
    std::vector<Agent> snapshot;
    snapshot.reserve(state.agents.size());
    for (const Agent& a : state.agents) {
        if (!a.arrived) snapshot.push_back(a);
    }

    std::vector<Vec2> accelerations;
    accelerations.reserve(snapshot.size());
    for (const Agent& agent : snapshot) {
        if (scenario.model == Model::magnetic) {
            accelerations.push_back(
                magnetic_acceleration(agent, snapshot, obstacles, scenario.params.magnetic));
        } else {
            accelerations.push_back(social_acceleration(agent, snapshot, obstacles,
                                                        scenario.params.social, state.time,
                                                        state.rng));
        }
    }

    std::size_t k = 0;
    for (Agent& agent : state.agents) {
        if (agent.arrived) continue;
        const Vec2 a = accelerations[k++];
        agent.velocity = clamp_speed(agent.velocity + a * scenario.dt, agent.v_max);
        agent.position = agent.position + agent.velocity * scenario.dt;
        project_out_of_obstacles(agent, obstacles);
        if (!is_finite(agent.position) || !is_finite(agent.velocity)) {
            throw SimulationError(agent.id, "integration", "non-finite state");
        }
    }
}

double max_pair_overlap(const std::vector<Agent>& agents) {
    double deepest = 0.0;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        if (agents[i].arrived) continue;
        for (std::size_t j = i + 1; j < agents.size(); ++j) {
            if (agents[j].arrived) continue;
            const double depth = agents[i].radius + agents[j].radius -
                                 distance(agents[i].position, agents[j].position);
            deepest = std::max(deepest, depth);
        }
    }
    return deepest;
}

}  // namespace

SimulationState init_state(const Scenario& scenario) {
    validate_scenario(scenario);
    SimulationState state;
    state.rng = Rng(scenario.seed);
    state.agents = scenario.agents;
    std::sort(state.agents.begin(), state.agents.end(),
              [](const Agent& a, const Agent& b) { return a.id < b.id; });
    if (scenario.model == Model::cellular) {
        Scenario sorted = scenario;
        sorted.agents = state.agents;
        state.grid = Grid::build(sorted);
        for (Agent& agent : state.agents) {
            agent.position = state.grid->cell_center(state.grid->cell_of(agent.position));
        }
    }
    record_active(state);
    mark_arrivals(state, scenario);
    return state;
}

void step(SimulationState& state, const Scenario& scenario) {
    if (scenario.model == Model::cellular) {
        cellular_step(*state.grid, state.agents, scenario.params.cellular);
    } else {
        const std::vector<Obstacle> obstacles = scenario.all_obstacles();
        continuous_step(state, scenario, obstacles);
    }
    state.steps += 1;
    state.time = static_cast<double>(state.steps) * scenario.time_step();
    record_active(state);
    mark_arrivals(state, scenario);
}

RunResult run(const Scenario& scenario, const StepObserver& observer) {
    const auto wall_start = std::chrono::steady_clock::now();
    SimulationState state = init_state(scenario);

    // Arrival bookkeeping: agents already at the goal arrive at t=0.
    std::vector<AgentArrival> arrivals;
    arrivals.reserve(state.agents.size());
    for (const Agent& a : state.agents) {
        arrivals.push_back({a.id, a.arrived ? std::optional<double>(0.0) : std::nullopt});
    }

    double max_overlap = max_pair_overlap(state.agents);
    while (!state.all_arrived() && state.time < scenario.max_time) {
        step(state, scenario);
        max_overlap = std::max(max_overlap, max_pair_overlap(state.agents));
        for (std::size_t i = 0; i < state.agents.size(); ++i) {
            if (state.agents[i].arrived && !arrivals[i].time) {
                arrivals[i].time = state.time;
            }
        }
        if (observer.every > 0 && observer.fn && state.steps % observer.every == 0) {
            observer.fn(state);
        }
    }

    RunResult result;
    result.trajectory = std::move(state.trajectory);
    result.summary.steps = state.steps;
    result.summary.end_time = state.time;
    result.summary.max_overlap_depth = max_overlap;
    result.summary.arrivals = std::move(arrivals);
    result.summary.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start)
            .count();
    return result;
}

}  // namespace pedsim

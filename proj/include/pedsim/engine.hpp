#pragma once

#include "pedsim/cellular.hpp"
#include "pedsim/rng.hpp"
#include "pedsim/scene.hpp"
#include "pedsim/vec2.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace pedsim {

// One trajectory sample. Files and in-memory lists are sorted by
// (time, agent_id).
struct TrajectoryRecord {
    double time = 0.0;
    std::int64_t agent_id = 0;
    Vec2 position{};
    Vec2 velocity{};
};

struct SimulationState {
    double time = 0.0;
    std::size_t steps = 0;
    std::vector<Agent> agents;  // sorted by id
    std::optional<Grid> grid;   // cellular only
    Rng rng{0};
    std::vector<TrajectoryRecord> trajectory;

    bool all_arrived() const;
};

struct AgentArrival {
    std::int64_t agent_id = 0;
    std::optional<double> time;  // empty: still en route at the end
};

struct RunSummary {
    std::size_t steps = 0;
    double end_time = 0.0;
    double wall_seconds = 0.0;
    // Deepest recorded body overlap between two active agents. Bodies are
    // soft, so crowd pressure shows up here instead of being resolved.
    double max_overlap_depth = 0.0;
    std::vector<AgentArrival> arrivals;  // sorted by id
};

struct RunResult {
    std::vector<TrajectoryRecord> trajectory;
    RunSummary summary;
};

// Progress hook: fn runs after every `every`-th step (0 disables).
struct StepObserver {
    std::size_t every = 0;
    std::function<void(const SimulationState&)> fn;
};

// v unchanged while |v| <= v_max, otherwise rescaled to v_max with the
// direction preserved.
Vec2 clamp_speed(Vec2 v, double v_max);

// Validates, seeds the RNG, builds the grid for cellular scenarios (agent
// positions snap to cell centers), records the t=0 snapshot, and marks
// agents that already stand at their destination.
SimulationState init_state(const Scenario& scenario);

// Advances one tick (cellular) or one dt (continuous models). Continuous
// update: accelerations from the pre-step snapshot, then
// v <- clamp_speed(v + a*dt), x <- x + v*dt, then projection out of any
// penetrated obstacle. One record per agent that was active at step start;
// agents within arrival_tolerance of their destination are then marked
// arrived. Throws SimulationError on non-finite terms.
void step(SimulationState& state, const Scenario& scenario);

// Steps until every agent arrived or time >= max_time. Identical scenario
// and seed give a bit-identical trajectory.
RunResult run(const Scenario& scenario, const StepObserver& observer = {});

}  // namespace pedsim

#pragma once

#include "pedsim/params.hpp"
#include "pedsim/vec2.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pedsim {

// One pedestrian. charge is the positive pole strength used by the
// magnetic model; radius/mass feed the continuous models.
struct Agent {
    std::int64_t id = 0;
    Vec2 position{};
    Vec2 velocity{};
    Vec2 destination{};
    double target_time = 10.0;  // s, intended arrival time
    double radius = 0.25;       // m
    double mass = 1.0;          // kg
    double charge = 1.0;
    double v_max = 2.0;  // m/s
    double v_min = 0.0;  // m/s
    bool arrived = false;
};

// Polyline obstacle. Walls and columns share this shape; columns are small
// closed polylines.
struct Obstacle {
    std::vector<Vec2> vertices;
    double charge = 1.0;
};

struct Bounds {
    Vec2 min{};
    Vec2 max{};
};

enum class Model { cellular, magnetic, social };

const char* model_name(Model m);
Model model_from_name(const std::string& name);  // throws std::invalid_argument

struct Scenario {
    Model model = Model::social;
    Bounds bounds{};
    std::vector<Agent> agents;
    std::vector<Obstacle> obstacles;
    std::vector<Obstacle> walls;  // boundary role; treated like obstacles
    ModelParams params{};
    double dt = 0.05;      // s, continuous-model step
    double max_time = 60.0;  // s
    std::uint64_t seed = 0;
    double arrival_tolerance = 0.3;  // m

    // Step length of the selected model: cellular uses params.cellular.tick,
    // the continuous models use dt.
    double time_step() const;

    // obstacles followed by walls, in declaration order.
    std::vector<Obstacle> all_obstacles() const;
};

// Throws ScenarioError naming the offending field on the first violation.
// For cellular scenarios this includes a grid dry-run (agents must land on
// distinct unblocked cells).
void validate_scenario(const Scenario& scenario);

// Closest point on the obstacle polyline; ties resolve to the lowest
// segment index.
Vec2 nearest_point_on_obstacle(Vec2 p, const Obstacle& o);
double obstacle_distance(Vec2 p, const Obstacle& o);

}  // namespace pedsim

#include "pedsim/scene.hpp"

#include "pedsim/cellular.hpp"
#include "pedsim/errors.hpp"
#include "pedsim/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

namespace pedsim {

const char* model_name(Model m) {
    switch (m) {
        case Model::cellular: return "cellular";
        case Model::magnetic: return "magnetic";
        case Model::social: return "social";
    }
    return "?";
}

Model model_from_name(const std::string& name) {
    if (name == "cellular") return Model::cellular;
    if (name == "magnetic") return Model::magnetic;
    if (name == "social") return Model::social;
    throw std::invalid_argument("unknown model '" + name +
                                "' (expected cellular, magnetic, or social)");
}

double Scenario::time_step() const {
    return model == Model::cellular ? params.cellular.tick : dt;
}

std::vector<Obstacle> Scenario::all_obstacles() const {
    std::vector<Obstacle> all = obstacles;
    all.insert(all.end(), walls.begin(), walls.end());
    return all;
}

Vec2 nearest_point_on_obstacle(Vec2 p, const Obstacle& o) {
    Vec2 best{};
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < o.vertices.size(); ++i) {
        const Vec2 q = nearest_point_on_segment(p, o.vertices[i], o.vertices[i + 1]);
        const double d = distance(p, q);
        if (d < best_dist) {
            best_dist = d;
            best = q;
        }
    }
    return best;
}

double obstacle_distance(Vec2 p, const Obstacle& o) {
    return distance(p, nearest_point_on_obstacle(p, o));
}

namespace {

void require(bool ok, const std::string& locus, const std::string& message) {
    if (!ok) {
        throw ScenarioError(locus, message);
    }
}

void check_obstacle(const Obstacle& o, const std::string& locus) {
    require(o.vertices.size() >= 2, locus, "needs at least 2 vertices");
    for (std::size_t i = 0; i < o.vertices.size(); ++i) {
        require(is_finite(o.vertices[i]), locus + ".vertices[" + std::to_string(i) + "]",
                "non-finite coordinate");
    }
    for (std::size_t i = 0; i + 1 < o.vertices.size(); ++i) {
        require(o.vertices[i] != o.vertices[i + 1],
                locus + ".vertices[" + std::to_string(i + 1) + "]",
                "consecutive vertices must be distinct");
    }
    require(std::isfinite(o.charge) && o.charge > 0.0, locus + ".charge",
            "charge must be > 0");
}

void check_params(const ModelParams& p) {
    const CellularParams& c = p.cellular;
    require(std::isfinite(c.K) && c.K > 0.0, "params.cellular.K", "must be > 0");
    require(std::isfinite(c.alpha_c) && c.alpha_c >= 0.0, "params.cellular.alpha_c",
            "must be >= 0");
    require(std::isfinite(c.beta_c) && c.beta_c > 0.0, "params.cellular.beta_c",
            "must be > 0");
    require(std::isfinite(c.cell_size) && c.cell_size > 0.0, "params.cellular.cell_size",
            "must be > 0");
    require(std::isfinite(c.field_radius) && c.field_radius > 0.0,
            "params.cellular.field_radius", "must be > 0");
    require(c.field_radius >= c.cell_size, "params.cellular.field_radius",
            "must be >= cell_size");
    require(std::isfinite(c.tick) && c.tick > 0.0, "params.cellular.tick", "must be > 0");

    const MagneticParams& m = p.magnetic;
    require(std::isfinite(m.k_coulomb) && m.k_coulomb > 0.0, "params.magnetic.k_coulomb",
            "must be > 0");
    require(std::isfinite(m.goal_charge) && m.goal_charge < 0.0,
            "params.magnetic.goal_charge", "must be < 0 (negative pole)");
    require(std::isfinite(m.beta_max) && m.beta_max > 0.0 &&
                m.beta_max < std::numbers::pi / 2.0,
            "params.magnetic.beta_max", "must lie in (0, pi/2)");
    require(std::isfinite(m.r_min) && m.r_min > 0.0, "params.magnetic.r_min",
            "must be > 0");

    const SocialParams& s = p.social;
    require(std::isfinite(s.tau) && s.tau > 0.0, "params.social.tau", "must be > 0");
    require(std::isfinite(s.A) && s.A >= 0.0, "params.social.A", "must be >= 0");
    require(std::isfinite(s.B) && s.B > 0.0, "params.social.B", "must be > 0");
    require(std::isfinite(s.sigma_xi) && s.sigma_xi >= 0.0, "params.social.sigma_xi",
            "must be >= 0");
    require(std::isfinite(s.wall_A) && s.wall_A >= 0.0, "params.social.wall_A",
            "must be >= 0");
    require(std::isfinite(s.wall_B) && s.wall_B > 0.0, "params.social.wall_B",
            "must be > 0");
}

}  // namespace

void validate_scenario(const Scenario& scenario) {
    require(is_finite(scenario.bounds.min) && is_finite(scenario.bounds.max), "bounds",
            "non-finite coordinate");
    require(scenario.bounds.max.x > scenario.bounds.min.x &&
                scenario.bounds.max.y > scenario.bounds.min.y,
            "bounds", "max must exceed min on both axes");
    require(std::isfinite(scenario.dt) && scenario.dt > 0.0, "dt", "must be > 0");
    require(std::isfinite(scenario.max_time) && scenario.max_time > 0.0, "max_time",
            "must be > 0");
    require(scenario.dt < scenario.max_time, "dt", "must be < max_time");
    require(std::isfinite(scenario.arrival_tolerance) && scenario.arrival_tolerance > 0.0,
            "arrival_tolerance", "must be > 0");

    check_params(scenario.params);

    std::unordered_set<std::int64_t> seen_ids;
    for (std::size_t i = 0; i < scenario.agents.size(); ++i) {
        const Agent& a = scenario.agents[i];
        const std::string locus = "agents[" + std::to_string(i) + "]";
        require(a.id >= 0, locus + ".id", "must be >= 0");
        require(seen_ids.insert(a.id).second, locus + ".id",
                "duplicate agent id " + std::to_string(a.id));
        require(is_finite(a.position), locus + ".position", "non-finite coordinate");
        require(is_finite(a.velocity), locus + ".velocity", "non-finite coordinate");
        require(is_finite(a.destination), locus + ".destination", "non-finite coordinate");
        require(a.position.x >= scenario.bounds.min.x &&
                    a.position.x <= scenario.bounds.max.x &&
                    a.position.y >= scenario.bounds.min.y &&
                    a.position.y <= scenario.bounds.max.y,
                locus + ".position", "outside bounds");
        require(std::isfinite(a.target_time) && a.target_time > 0.0, locus + ".target_time",
                "must be > 0");
        require(std::isfinite(a.radius) && a.radius > 0.0, locus + ".radius",
                "must be > 0");
        require(std::isfinite(a.mass) && a.mass > 0.0, locus + ".mass", "must be > 0");
        require(std::isfinite(a.charge) && a.charge > 0.0, locus + ".charge",
                "must be > 0 (positive pole)");
        require(std::isfinite(a.v_max) && a.v_max > 0.0, locus + ".v_max", "must be > 0");
        require(std::isfinite(a.v_min) && a.v_min >= 0.0, locus + ".v_min",
                "must be >= 0");
        require(a.v_min <= a.v_max, locus + ".v_min", "must be <= v_max");
    }

    for (std::size_t i = 0; i < scenario.obstacles.size(); ++i) {
        check_obstacle(scenario.obstacles[i], "obstacles[" + std::to_string(i) + "]");
    }
    for (std::size_t i = 0; i < scenario.walls.size(); ++i) {
        check_obstacle(scenario.walls[i], "walls[" + std::to_string(i) + "]");
    }

    if (scenario.model == Model::cellular) {
        // Also checks grid size, agents on distinct unblocked cells, and
        // reachable destination snapping.
        Grid::build(scenario);
    }
}

}  // namespace pedsim

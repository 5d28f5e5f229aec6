#include "pedsim/scenario_io.hpp"

#include "pedsim/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

namespace pedsim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& locus, const std::string& message) {
    throw ScenarioError(locus, message);
}

std::string join(const std::string& prefix, std::string_view key) {
    if (prefix.empty()) return std::string(key);
    return prefix + "." + std::string(key);
}

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    const std::size_t limit = std::min(byte, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

void check_keys(const json& obj, const std::string& prefix,
                std::initializer_list<std::string_view> allowed, bool allow_unknown) {
    if (allow_unknown) return;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const bool known =
            std::any_of(allowed.begin(), allowed.end(),
                        [&](std::string_view k) { return it.key() == k; });
        if (!known) fail(join(prefix, it.key()), "unknown key");
    }
}

const json* find_key(const json& obj, std::string_view key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

const json& require_key(const json& obj, std::string_view key, const std::string& prefix) {
    const json* found = find_key(obj, key);
    if (found == nullptr) fail(join(prefix, key), "missing required key");
    return *found;
}

double as_number(const json& j, const std::string& locus) {
    if (!j.is_number()) fail(locus, "expected a number");
    return j.get<double>();
}

std::uint64_t as_seed(const json& j, const std::string& locus) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer()) {
        const std::int64_t v = j.get<std::int64_t>();
        if (v < 0) fail(locus, "seed must be a non-negative integer");
        return static_cast<std::uint64_t>(v);
    }
    fail(locus, "expected a non-negative integer");
}

std::int64_t as_id(const json& j, const std::string& locus) {
    if (!j.is_number_integer() && !j.is_number_unsigned()) {
        fail(locus, "expected an integer");
    }
    return j.get<std::int64_t>();
}

Vec2 as_vec2(const json& j, const std::string& locus) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        fail(locus, "expected a pair [x, y]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

void read_if_present(const json& obj, std::string_view key, const std::string& prefix,
                     double& out) {
    if (const json* j = find_key(obj, key)) out = as_number(*j, join(prefix, key));
}

void read_if_present(const json& obj, std::string_view key, const std::string& prefix,
                     Vec2& out) {
    if (const json* j = find_key(obj, key)) out = as_vec2(*j, join(prefix, key));
}

void parse_params(const json& obj, const std::string& prefix, ModelParams& params,
                  bool allow_unknown) {
    if (!obj.is_object()) fail(prefix, "expected an object");
    check_keys(obj, prefix, {"cellular", "magnetic", "social"}, allow_unknown);
    if (const json* c = find_key(obj, "cellular")) {
        const std::string p = prefix + ".cellular";
        if (!c->is_object()) fail(p, "expected an object");
        check_keys(*c, p, {"K", "alpha", "beta", "field_radius", "cell_size", "tick"},
                   allow_unknown);
        read_if_present(*c, "K", p, params.cellular.K);
        read_if_present(*c, "alpha", p, params.cellular.alpha_c);
        read_if_present(*c, "beta", p, params.cellular.beta_c);
        read_if_present(*c, "field_radius", p, params.cellular.field_radius);
        read_if_present(*c, "cell_size", p, params.cellular.cell_size);
        read_if_present(*c, "tick", p, params.cellular.tick);
    }
    if (const json* m = find_key(obj, "magnetic")) {
        const std::string p = prefix + ".magnetic";
        if (!m->is_object()) fail(p, "expected an object");
        check_keys(*m, p, {"k_coulomb", "goal_charge", "beta_max", "r_min"}, allow_unknown);
        read_if_present(*m, "k_coulomb", p, params.magnetic.k_coulomb);
        read_if_present(*m, "goal_charge", p, params.magnetic.goal_charge);
        read_if_present(*m, "beta_max", p, params.magnetic.beta_max);
        read_if_present(*m, "r_min", p, params.magnetic.r_min);
    }
    if (const json* s = find_key(obj, "social")) {
        const std::string p = prefix + ".social";
        if (!s->is_object()) fail(p, "expected an object");
        check_keys(*s, p, {"tau", "A", "B", "sigma_xi", "wall_A", "wall_B"}, allow_unknown);
        read_if_present(*s, "tau", p, params.social.tau);
        read_if_present(*s, "A", p, params.social.A);
        read_if_present(*s, "B", p, params.social.B);
        read_if_present(*s, "sigma_xi", p, params.social.sigma_xi);
        read_if_present(*s, "wall_A", p, params.social.wall_A);
        read_if_present(*s, "wall_B", p, params.social.wall_B);
    }
}

Agent parse_agent(const json& obj, const std::string& prefix, bool allow_unknown) {
    if (!obj.is_object()) fail(prefix, "expected an object");
    check_keys(obj, prefix,
               {"id", "position", "velocity", "destination", "target_time", "radius", "mass",
                "charge", "v_max", "v_min"},
               allow_unknown);
    Agent agent;
    agent.id = as_id(require_key(obj, "id", prefix), prefix + ".id");
    agent.position = as_vec2(require_key(obj, "position", prefix), prefix + ".position");
    agent.destination =
        as_vec2(require_key(obj, "destination", prefix), prefix + ".destination");
    read_if_present(obj, "velocity", prefix, agent.velocity);
    read_if_present(obj, "target_time", prefix, agent.target_time);
    read_if_present(obj, "radius", prefix, agent.radius);
    read_if_present(obj, "mass", prefix, agent.mass);
    read_if_present(obj, "charge", prefix, agent.charge);
    read_if_present(obj, "v_max", prefix, agent.v_max);
    read_if_present(obj, "v_min", prefix, agent.v_min);
    return agent;
}

Obstacle parse_obstacle(const json& obj, const std::string& prefix, bool allow_unknown) {
    if (!obj.is_object()) fail(prefix, "expected an object");
    check_keys(obj, prefix, {"vertices", "charge"}, allow_unknown);
    Obstacle obstacle;
    const json& verts = require_key(obj, "vertices", prefix);
    if (!verts.is_array()) fail(prefix + ".vertices", "expected an array of [x, y] pairs");
    for (std::size_t i = 0; i < verts.size(); ++i) {
        obstacle.vertices.push_back(
            as_vec2(verts[i], prefix + ".vertices[" + std::to_string(i) + "]"));
    }
    read_if_present(obj, "charge", prefix, obstacle.charge);
    return obstacle;
}

json vec2_json(const Vec2& v) { return json::array({v.x, v.y}); }

json agent_json(const Agent& a) {
    json j;
    j["id"] = a.id;
    j["position"] = vec2_json(a.position);
    j["velocity"] = vec2_json(a.velocity);
    j["destination"] = vec2_json(a.destination);
    j["target_time"] = a.target_time;
    j["radius"] = a.radius;
    j["mass"] = a.mass;
    j["charge"] = a.charge;
    j["v_max"] = a.v_max;
    j["v_min"] = a.v_min;
    return j;
}

json obstacle_json(const Obstacle& o) {
    json j;
    json verts = json::array();
    for (const Vec2& v : o.vertices) verts.push_back(vec2_json(v));
    j["vertices"] = verts;
    j["charge"] = o.charge;
    return j;
}

}  // namespace

Scenario parse_scenario(const std::string& text, const ParseOptions& options) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t line = line_of_byte(text, e.byte > 0 ? e.byte - 1 : 0);
        fail("line " + std::to_string(line), e.what());
    }
    if (!doc.is_object()) fail("document", "expected a JSON object at the top level");
    check_keys(doc, "",
               {"model", "bounds", "dt", "max_time", "seed", "arrival_tolerance", "params",
                "agents", "obstacles", "walls"},
               options.allow_unknown);

    Scenario scenario;
    const json& model = require_key(doc, "model", "");
    if (!model.is_string()) fail("model", "expected a string");
    try {
        scenario.model = model_from_name(model.get<std::string>());
    } catch (const std::invalid_argument& e) {
        fail("model", e.what());
    }

    const json& bounds = require_key(doc, "bounds", "");
    if (!bounds.is_object()) fail("bounds", "expected an object");
    check_keys(bounds, "bounds", {"min", "max"}, options.allow_unknown);
    scenario.bounds.min = as_vec2(require_key(bounds, "min", "bounds"), "bounds.min");
    scenario.bounds.max = as_vec2(require_key(bounds, "max", "bounds"), "bounds.max");

    if (const json* j = find_key(doc, "dt")) scenario.dt = as_number(*j, "dt");
    if (const json* j = find_key(doc, "max_time")) scenario.max_time = as_number(*j, "max_time");
    if (const json* j = find_key(doc, "seed")) scenario.seed = as_seed(*j, "seed");
    if (const json* j = find_key(doc, "arrival_tolerance")) {
        scenario.arrival_tolerance = as_number(*j, "arrival_tolerance");
    }
    if (const json* j = find_key(doc, "params")) {
        parse_params(*j, "params", scenario.params, options.allow_unknown);
    }

    const json& agents = require_key(doc, "agents", "");
    if (!agents.is_array()) fail("agents", "expected an array");
    for (std::size_t i = 0; i < agents.size(); ++i) {
        scenario.agents.push_back(parse_agent(
            agents[i], "agents[" + std::to_string(i) + "]", options.allow_unknown));
    }
    if (const json* j = find_key(doc, "obstacles")) {
        if (!j->is_array()) fail("obstacles", "expected an array");
        for (std::size_t i = 0; i < j->size(); ++i) {
            scenario.obstacles.push_back(parse_obstacle(
                (*j)[i], "obstacles[" + std::to_string(i) + "]", options.allow_unknown));
        }
    }
    if (const json* j = find_key(doc, "walls")) {
        if (!j->is_array()) fail("walls", "expected an array");
        for (std::size_t i = 0; i < j->size(); ++i) {
            scenario.walls.push_back(parse_obstacle(
                (*j)[i], "walls[" + std::to_string(i) + "]", options.allow_unknown));
        }
    }

    validate_scenario(scenario);
    return scenario;
}

std::string write_scenario(const Scenario& scenario) {
    json doc;
    doc["model"] = model_name(scenario.model);
    doc["bounds"]["min"] = vec2_json(scenario.bounds.min);
    doc["bounds"]["max"] = vec2_json(scenario.bounds.max);
    doc["dt"] = scenario.dt;
    doc["max_time"] = scenario.max_time;
    doc["seed"] = scenario.seed;
    doc["arrival_tolerance"] = scenario.arrival_tolerance;
    doc["params"]["cellular"] = {{"K", scenario.params.cellular.K},
                                 {"alpha", scenario.params.cellular.alpha_c},
                                 {"beta", scenario.params.cellular.beta_c},
                                 {"field_radius", scenario.params.cellular.field_radius},
                                 {"cell_size", scenario.params.cellular.cell_size},
                                 {"tick", scenario.params.cellular.tick}};
    doc["params"]["magnetic"] = {{"k_coulomb", scenario.params.magnetic.k_coulomb},
                                 {"goal_charge", scenario.params.magnetic.goal_charge},
                                 {"beta_max", scenario.params.magnetic.beta_max},
                                 {"r_min", scenario.params.magnetic.r_min}};
    doc["params"]["social"] = {{"tau", scenario.params.social.tau},
                               {"A", scenario.params.social.A},
                               {"B", scenario.params.social.B},
                               {"sigma_xi", scenario.params.social.sigma_xi},
                               {"wall_A", scenario.params.social.wall_A},
                               {"wall_B", scenario.params.social.wall_B}};
    json agents = json::array();
    for (const Agent& a : scenario.agents) agents.push_back(agent_json(a));
    doc["agents"] = agents;
    json obstacles = json::array();
    for (const Obstacle& o : scenario.obstacles) obstacles.push_back(obstacle_json(o));
    doc["obstacles"] = obstacles;
    json walls = json::array();
    for (const Obstacle& o : scenario.walls) walls.push_back(obstacle_json(o));
    doc["walls"] = walls;
    return doc.dump(2) + "\n";
}

}  // namespace pedsim

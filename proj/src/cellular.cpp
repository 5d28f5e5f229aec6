#include "pedsim/cellular.hpp"

#include "pedsim/errors.hpp"
#include "pedsim/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pedsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxCells = 4'000'000;

}  // namespace

Grid Grid::build(const Scenario& scenario) {
    const CellularParams& p = scenario.params.cellular;
    Grid grid;
    grid.origin_ = scenario.bounds.min;
    grid.cell_size_ = p.cell_size;
    const Vec2 extent = scenario.bounds.max - scenario.bounds.min;
    grid.width_ = std::max(1, static_cast<int>(std::ceil(extent.x / p.cell_size)));
    grid.height_ = std::max(1, static_cast<int>(std::ceil(extent.y / p.cell_size)));
    const std::size_t cells =
        static_cast<std::size_t>(grid.width_) * static_cast<std::size_t>(grid.height_);
    if (cells > kMaxCells) {
        throw ScenarioError("params.cellular.cell_size",
                            "grid would have " + std::to_string(cells) +
                                " cells (limit " + std::to_string(kMaxCells) + ")");
    }
    grid.occupancy_.assign(cells, -1);
    grid.blocked_.assign(cells, 0);

    const std::vector<Obstacle> all = scenario.all_obstacles();
    for (int y = 0; y < grid.height_; ++y) {
        for (int x = 0; x < grid.width_; ++x) {
            const Vec2 lo = grid.origin_ + Vec2{x * p.cell_size, y * p.cell_size};
            const Vec2 hi = lo + Vec2{p.cell_size, p.cell_size};
            for (const Obstacle& o : all) {
                bool hit = false;
                for (std::size_t i = 0; i + 1 < o.vertices.size() && !hit; ++i) {
                    hit = segment_crosses_open_rect(o.vertices[i], o.vertices[i + 1], lo, hi);
                }
                if (hit) {
                    grid.blocked_[grid.index_of({x, y})] = 1;
                    break;
                }
            }
        }
    }

    for (std::size_t i = 0; i < scenario.agents.size(); ++i) {
        const Agent& a = scenario.agents[i];
        const std::string locus = "agents[" + std::to_string(i) + "].position";
        const CellIndex c = grid.cell_of(a.position);
        if (grid.blocked(c)) {
            throw ScenarioError(locus, "agent " + std::to_string(a.id) +
                                           " starts on a blocked cell");
        }
        const std::int64_t prior = grid.occupancy_[grid.index_of(c)];
        if (prior >= 0) {
            throw ScenarioError(locus, "agents " + std::to_string(prior) + " and " +
                                           std::to_string(a.id) + " share one cell");
        }
        grid.occupancy_[grid.index_of(c)] = a.id;
    }

    for (const Agent& a : scenario.agents) {
        Vec2 best{};
        double best_dist = kInf;
        bool found = false;
        for (int y = 0; y < grid.height_; ++y) {
            for (int x = 0; x < grid.width_; ++x) {
                if (grid.blocked({x, y})) continue;
                const Vec2 center = grid.cell_center({x, y});
                const double d = distance(center, a.destination);
                if (d < best_dist) {
                    best_dist = d;
                    best = center;
                    found = true;
                }
            }
        }
        if (!found) {
            throw ScenarioError("obstacles", "every cell is blocked");
        }
        grid.snapped_destinations_.emplace(a.id, best);
    }
    return grid;
}

Vec2 Grid::cell_center(CellIndex c) const {
    return origin_ + Vec2{(c.x + 0.5) * cell_size_, (c.y + 0.5) * cell_size_};
}

CellIndex Grid::cell_of(Vec2 p) const {
    const Vec2 rel = p - origin_;
    int x = static_cast<int>(std::floor(rel.x / cell_size_));
    int y = static_cast<int>(std::floor(rel.y / cell_size_));
    x = std::clamp(x, 0, width_ - 1);
    y = std::clamp(y, 0, height_ - 1);
    return {x, y};
}

Vec2 Grid::snapped_destination(std::int64_t agent_id) const {
    const auto it = snapped_destinations_.find(agent_id);
    if (it == snapped_destinations_.end()) {
        throw std::logic_error("no snapped destination for agent " +
                               std::to_string(agent_id));
    }
    return it->second;
}

void Grid::move_agent(std::int64_t agent_id, CellIndex from, CellIndex to) {
    if (occupancy_[index_of(from)] != agent_id) {
        throw std::logic_error("move_agent: agent " + std::to_string(agent_id) +
                               " is not at the source cell");
    }
    if (blocked(to) || occupancy_[index_of(to)] >= 0) {
        throw std::logic_error("move_agent: target cell is not free");
    }
    occupancy_[index_of(from)] = -1;
    occupancy_[index_of(to)] = agent_id;
}

void Grid::vacate(std::int64_t agent_id, CellIndex at) {
    if (occupancy_[index_of(at)] != agent_id) {
        throw std::logic_error("vacate: agent " + std::to_string(agent_id) +
                               " is not at the given cell");
    }
    occupancy_[index_of(at)] = -1;
}

std::vector<Grid::OccupiedCell> Grid::occupied_cells() const {
    std::vector<OccupiedCell> out;
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            const std::int64_t id = occupancy_[index_of({x, y})];
            if (id >= 0) {
                out.push_back({{x, y}, id});
            }
        }
    }
    return out;
}

double benefit_score(Vec2 target, Vec2 position, Vec2 destination, double K) {
    if (destination == position) {
        throw std::invalid_argument("benefit_score: agent already at its destination");
    }
    if (target == position) {
        return 0.0;  // stay cell: no progress, no loss
    }
    const Vec2 to_target = target - position;
    const Vec2 to_destination = destination - position;
    const double p = dot(to_target, to_destination);
    return K * p * std::abs(p) / (norm_sq(to_target) * norm_sq(to_destination));
}

double repulsion_score(double delta, double alpha_c, double beta_c) {
    const double off = delta - alpha_c;
    return -1.0 / (off * off + beta_c);
}

double cell_score(const Grid& grid, std::span<const Agent> agents, std::size_t self_index,
                  CellIndex target, const CellularParams& params) {
    const Agent& self = agents[self_index];
    if (!grid.in_grid(target) || grid.blocked(target)) {
        return -kInf;
    }
    const std::int64_t occ = grid.occupant(target);
    if (occ >= 0 && occ != self.id) {
        return -kInf;
    }
    const Vec2 center = grid.cell_center(target);
    double score = benefit_score(center, self.position, self.destination, params.K);
    for (const Agent& other : agents) {
        if (other.id == self.id || other.arrived) continue;
        const double delta = distance(center, other.position);
        if (delta <= params.field_radius) {
            score += repulsion_score(delta, params.alpha_c, params.beta_c);
        }
    }
    return score;
}

void cellular_step(Grid& grid, std::vector<Agent>& agents, const CellularParams& params) {
    for (std::size_t i = 0; i < agents.size(); ++i) {
        Agent& agent = agents[i];
        if (agent.arrived) continue;
        const CellIndex from = grid.cell_of(agent.position);
        CellIndex best = from;
        double best_score = cell_score(grid, agents, i, from, params);
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                const CellIndex candidate{from.x + dx, from.y + dy};
                const double s = cell_score(grid, agents, i, candidate, params);
                if (s > best_score) {
                    best_score = s;
                    best = candidate;
                }
            }
        }
        if (best != from) {
            grid.move_agent(agent.id, from, best);
            const Vec2 target = grid.cell_center(best);
            agent.velocity = (target - agent.position) / params.tick;
            agent.position = target;
        } else {
            agent.velocity = {0.0, 0.0};
        }
    }
}

}  // namespace pedsim

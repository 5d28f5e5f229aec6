#pragma once

#include "pedsim/params.hpp"
#include "pedsim/scene.hpp"
#include "pedsim/vec2.hpp"

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace pedsim {

struct CellIndex {
    int x = 0;
    int y = 0;
};

constexpr bool operator==(CellIndex a, CellIndex b) { return a.x == b.x && a.y == b.y; }
constexpr bool operator!=(CellIndex a, CellIndex b) { return !(a == b); }

// Occupancy grid over the scenario bounds. Each cell holds at most one
// agent; cells whose open interior is crossed by an obstacle segment are
// blocked. Destinations are snapped to the nearest unblocked cell center
// for arrival testing.
class Grid {
public:
    // Throws ScenarioError if the grid would be degenerate, an agent lands
    // on a blocked cell, or two agents share a cell.
    static Grid build(const Scenario& scenario);

    int width() const { return width_; }
    int height() const { return height_; }
    double cell_size() const { return cell_size_; }
    Vec2 origin() const { return origin_; }

    bool in_grid(CellIndex c) const {
        return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
    }
    bool blocked(CellIndex c) const { return blocked_[index_of(c)] != 0; }
    // Occupying agent id, or -1 when empty.
    std::int64_t occupant(CellIndex c) const { return occupancy_[index_of(c)]; }

    Vec2 cell_center(CellIndex c) const;
    CellIndex cell_of(Vec2 p) const;
    Vec2 snapped_destination(std::int64_t agent_id) const;

    void move_agent(std::int64_t agent_id, CellIndex from, CellIndex to);
    void vacate(std::int64_t agent_id, CellIndex at);

    struct OccupiedCell {
        CellIndex cell;
        std::int64_t agent_id;
    };
    // Row-major listing, for the debug dump.
    std::vector<OccupiedCell> occupied_cells() const;

private:
    std::size_t index_of(CellIndex c) const {
        return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(c.x);
    }

    Vec2 origin_{};
    double cell_size_ = 1.0;
    int width_ = 0;
    int height_ = 0;
    std::vector<std::int64_t> occupancy_;
    std::vector<char> blocked_;
    std::unordered_map<std::int64_t, Vec2> snapped_destinations_;
};

// Gain for moving from `position` to `target` relative to `destination`.
// Equals K * sign(cos theta) * cos^2(theta), so it is bounded by [-K, K];
// the stay cell (target == position) scores 0. Throws std::invalid_argument
// when destination == position (arrived agents must be excluded upstream).
double benefit_score(Vec2 target, Vec2 position, Vec2 destination, double K);

// Crowding penalty of a neighbor at distance delta: -1 / ((delta-alpha)^2 + beta).
// Strictly negative, strongest at delta == alpha_c.
double repulsion_score(double delta, double alpha_c, double beta_c);

// Net score of a candidate cell for agents[self_index]: benefit plus the
// repulsion of every other active agent within field_radius of the cell
// center. Blocked, occupied, or out-of-grid cells score -infinity.
double cell_score(const Grid& grid, std::span<const Agent> agents, std::size_t self_index,
                  CellIndex target, const CellularParams& params);

// One grid tick: agents move in ascending id order to the best-scoring cell
// of their nine-cell neighborhood (stay allowed; ties prefer stay, then
// lowest row-major neighbor). Positions snap to cell centers; velocity is
// displacement over the tick. Agents must be sorted by id and sit exactly
// on their cell centers.
void cellular_step(Grid& grid, std::vector<Agent>& agents, const CellularParams& params);

}  // namespace pedsim

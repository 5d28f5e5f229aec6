#pragma once

#include "pedsim/engine.hpp"
#include "pedsim/scene.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pedsim {

// Cartesian parameter sweep: each axis is (parameter name, candidate
// values). Enumeration is row-major with the first axis slowest.
struct ParamGrid {
    std::vector<std::pair<std::string, std::vector<double>>> axes;
    std::size_t point_count() const;
};

struct GridPoint {
    std::vector<double> values;  // one per axis, same order
    double position_rmse = 0.0;
    double velocity_rmse = 0.0;
};

struct FitReport {
    std::vector<std::string> param_names;
    std::vector<GridPoint> table;      // canonical enumeration order
    std::size_t best_index = 0;        // first minimum in enumeration order
    std::vector<double> best_values;   // one per axis
    double best_position_rmse = 0.0;
    double best_velocity_rmse = 0.0;
};

// Overwrites one parameter of the scenario's active model. Valid names:
// cellular K, alpha, beta, field_radius, cell_size, tick; magnetic
// k_coulomb, goal_charge, beta_max, r_min; social tau, A, B, sigma_xi,
// wall_A, wall_B. Unknown names throw std::invalid_argument.
void apply_model_param(Scenario& scenario, const std::string& name, double value);

// Root-mean-square distance between simulated and reference positions,
// evaluated at every reference record's (time, agent) sample point. The
// simulated series is interpolated; times beyond an agent's records clamp
// to its first or last record, so a run that settles early is scored
// against its resting state. Reference agents missing from the simulation
// raise std::invalid_argument.
double trajectory_rmse(std::span<const TrajectoryRecord> simulated,
                       std::span<const TrajectoryRecord> reference);

// Same sampling scheme over velocities.
double velocity_rmse(std::span<const TrajectoryRecord> simulated,
                     std::span<const TrajectoryRecord> reference);

// Runs the scenario once per grid point (same seed each run, fluctuation
// strength forced to zero) and scores against the reference trajectory.
// Runs that abort with SimulationError score infinity. Ties keep the first
// point in enumeration order.
FitReport calibrate(const Scenario& scenario, const ParamGrid& grid,
                    std::span<const TrajectoryRecord> reference);

// Error-table CSV: one row per grid point, axes then both errors.
std::string render_fit_table(const FitReport& report);

// Machine-readable summary of the winning point.
std::string render_fit_summary(const FitReport& report);

}  // namespace pedsim

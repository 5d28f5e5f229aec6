#include "pedsim/calibrate.hpp"

#include "pedsim/errors.hpp"
#include "pedsim/trajectory_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace pedsim {

namespace {

struct Sample {
    double time;
    Vec2 position;
    Vec2 velocity;
};

std::map<std::int64_t, std::vector<Sample>> split_by_agent(
    std::span<const TrajectoryRecord> trajectory) {
    std::map<std::int64_t, std::vector<Sample>> series;
    for (const TrajectoryRecord& r : trajectory) {
        series[r.agent_id].push_back({r.time, r.position, r.velocity});
    }
    return series;
}

// Interpolates the series at t, clamping to the series' own span so an
// agent that arrived early is held at its final record.
Sample sample_clamped(const std::vector<Sample>& series, double t) {
    if (t <= series.front().time) return series.front();
    if (t >= series.back().time) return series.back();
    auto it = std::lower_bound(series.begin(), series.end(), t,
                               [](const Sample& s, double value) { return s.time < value; });
    if (it->time == t) return *it;
    const Sample& hi = *it;
    const Sample& lo = *(it - 1);
    const double u = (t - lo.time) / (hi.time - lo.time);
    Sample out;
    out.time = t;
    out.position = lo.position + (hi.position - lo.position) * u;
    out.velocity = lo.velocity + (hi.velocity - lo.velocity) * u;
    return out;
}

enum class Field { position, velocity };

double rmse_impl(std::span<const TrajectoryRecord> simulated,
                 std::span<const TrajectoryRecord> reference, Field field) {
    if (simulated.empty()) throw std::invalid_argument("rmse: empty simulated trajectory");
    if (reference.empty()) throw std::invalid_argument("rmse: empty reference trajectory");
    const auto sim_series = split_by_agent(simulated);
    double sum_sq = 0.0;
    std::size_t count = 0;
    for (const TrajectoryRecord& r : reference) {
        const auto it = sim_series.find(r.agent_id);
        if (it == sim_series.end()) {
            throw std::invalid_argument("rmse: reference agent " + std::to_string(r.agent_id) +
                                        " missing from simulated trajectory");
        }
        const Sample s = sample_clamped(it->second, r.time);
        const Vec2 delta = (field == Field::position) ? s.position - r.position
                                                      : s.velocity - r.velocity;
        sum_sq += norm_sq(delta);
        ++count;
    }
    return std::sqrt(sum_sq / static_cast<double>(count));
}

}  // namespace

std::size_t ParamGrid::point_count() const {
    std::size_t n = 1;
    for (const auto& [name, values] : axes) n *= values.size();
    return n;
}

void apply_model_param(Scenario& scenario, const std::string& name, double value) {
    auto unknown = [&]() -> double& {
        throw std::invalid_argument("unknown parameter '" + name + "' for model " +
                                    model_name(scenario.model));
    };
    auto& p = scenario.params;
    double& slot = [&]() -> double& {
        switch (scenario.model) {
            case Model::cellular:
                if (name == "K") return p.cellular.K;
                if (name == "alpha") return p.cellular.alpha_c;
                if (name == "beta") return p.cellular.beta_c;
                if (name == "field_radius") return p.cellular.field_radius;
                if (name == "cell_size") return p.cellular.cell_size;
                if (name == "tick") return p.cellular.tick;
                return unknown();
            case Model::magnetic:
                if (name == "k_coulomb") return p.magnetic.k_coulomb;
                if (name == "goal_charge") return p.magnetic.goal_charge;
                if (name == "beta_max") return p.magnetic.beta_max;
                if (name == "r_min") return p.magnetic.r_min;
                return unknown();
            case Model::social:
                if (name == "tau") return p.social.tau;
                if (name == "A") return p.social.A;
                if (name == "B") return p.social.B;
                if (name == "sigma_xi") return p.social.sigma_xi;
                if (name == "wall_A") return p.social.wall_A;
                if (name == "wall_B") return p.social.wall_B;
                return unknown();
        }
        return unknown();
    }();
    slot = value;
}

double trajectory_rmse(std::span<const TrajectoryRecord> simulated,
                       std::span<const TrajectoryRecord> reference) {
    return rmse_impl(simulated, reference, Field::position);
}

double velocity_rmse(std::span<const TrajectoryRecord> simulated,
                     std::span<const TrajectoryRecord> reference) {
    return rmse_impl(simulated, reference, Field::velocity);
}

FitReport calibrate(const Scenario& scenario, const ParamGrid& grid,
                    std::span<const TrajectoryRecord> reference) {
    if (grid.axes.empty()) throw std::invalid_argument("calibrate: empty parameter grid");
    for (const auto& [name, values] : grid.axes) {
        if (values.empty()) {
            throw std::invalid_argument("calibrate: axis '" + name + "' has no values");
        }
    }
    if (reference.empty()) throw std::invalid_argument("calibrate: empty reference trajectory");

    FitReport report;
    for (const auto& [name, values] : grid.axes) report.param_names.push_back(name);

    const std::size_t total = grid.point_count();
    const std::size_t n_axes = grid.axes.size();
    std::vector<std::size_t> index(n_axes, 0);
    for (std::size_t point = 0; point < total; ++point) {
        GridPoint entry;
        Scenario trial = scenario;
        for (std::size_t a = 0; a < n_axes; ++a) {
            const double value = grid.axes[a].second[index[a]];
            entry.values.push_back(value);
            apply_model_param(trial, grid.axes[a].first, value);
        }
        // Fluctuations off so the sweep scores the deterministic part.
        trial.params.social.sigma_xi = 0.0;
        try {
            const RunResult result = run(trial);
            entry.position_rmse = trajectory_rmse(result.trajectory, reference);
            entry.velocity_rmse = velocity_rmse(result.trajectory, reference);
        } catch (const SimulationError&) {
            entry.position_rmse = std::numeric_limits<double>::infinity();
            entry.velocity_rmse = std::numeric_limits<double>::infinity();
        }
        report.table.push_back(std::move(entry));
        // Row-major advance, last axis fastest.
        for (std::size_t a = n_axes; a-- > 0;) {
            if (++index[a] < grid.axes[a].second.size()) break;
            index[a] = 0;
        }
    }

    report.best_index = 0;
    for (std::size_t i = 1; i < report.table.size(); ++i) {
        if (report.table[i].position_rmse < report.table[report.best_index].position_rmse) {
            report.best_index = i;
        }
    }
    report.best_values = report.table[report.best_index].values;
    report.best_position_rmse = report.table[report.best_index].position_rmse;
    report.best_velocity_rmse = report.table[report.best_index].velocity_rmse;
    return report;
}

std::string render_fit_table(const FitReport& report) {
    std::string out;
    for (const std::string& name : report.param_names) {
        out += name;
        out += ',';
    }
    out += "position_rmse,velocity_rmse\n";
    for (const GridPoint& entry : report.table) {
        for (double v : entry.values) {
            out += format_double(v);
            out += ',';
        }
        out += format_double(entry.position_rmse);
        out += ',';
        out += format_double(entry.velocity_rmse);
        out += '\n';
    }
    return out;
}

std::string render_fit_summary(const FitReport& report) {
    nlohmann::json doc;
    nlohmann::json best;
    for (std::size_t a = 0; a < report.param_names.size(); ++a) {
        best[report.param_names[a]] = report.best_values[a];
    }
    doc["best_params"] = best;
    doc["best_position_rmse"] = report.best_position_rmse;
    doc["best_velocity_rmse"] = report.best_velocity_rmse;
    doc["grid_points"] = report.table.size();
    return doc.dump(2) + "\n";
}

}  // namespace pedsim

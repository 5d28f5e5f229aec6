#include "pedsim/calibrate.hpp"
#include "pedsim/engine.hpp"
#include "pedsim/errors.hpp"
#include "pedsim/metrics.hpp"
#include "pedsim/scenario_io.hpp"
#include "pedsim/trajectory_io.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace pedsim;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitAborted = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError(path, "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ScenarioError(path, "cannot open file for writing");
    out << content;
    if (!out) throw ScenarioError(path, "write failed");
}

Scenario load_scenario(const std::string& path, bool allow_unknown) {
    ParseOptions options;
    options.allow_unknown = allow_unknown;
    return parse_scenario(read_file(path), options);
}

std::vector<TrajectoryRecord> load_trajectory(const std::string& path) {
    return parse_trajectory(read_file(path));
}

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ScenarioError(what, "expected comma-separated numbers, got '" + item + "'");
        }
    }
    return values;
}

// Region syntax: "area:xmin,ymin,xmax,ymax" or "gate:x1,y1,x2,y2".
MeasureRegion parse_region(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string::npos) {
        throw ScenarioError("--region", "expected 'area:...' or 'gate:...'");
    }
    const std::string kind = spec.substr(0, colon);
    const std::vector<double> v = parse_number_list(spec.substr(colon + 1), "--region");
    if (v.size() != 4) throw ScenarioError("--region", "expected four numbers after the kind");
    if (kind == "area") return MeasureRegion::area({v[0], v[1]}, {v[2], v[3]});
    if (kind == "gate") return MeasureRegion::gate({v[0], v[1]}, {v[2], v[3]});
    throw ScenarioError("--region", "unknown region kind '" + kind + "'");
}

// Grid syntax: "tau=0.4,0.5,0.6;A=1.0,2.0".
ParamGrid parse_grid(const std::string& spec) {
    ParamGrid grid;
    std::stringstream ss(spec);
    std::string axis;
    while (std::getline(ss, axis, ';')) {
        if (axis.empty()) continue;
        const std::size_t eq = axis.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ScenarioError("--grid", "expected 'name=v1,v2,...' axes separated by ';'");
        }
        const std::string name = axis.substr(0, eq);
        grid.axes.emplace_back(name, parse_number_list(axis.substr(eq + 1), "--grid " + name));
        if (grid.axes.back().second.empty()) {
            throw ScenarioError("--grid", "axis '" + name + "' has no values");
        }
    }
    if (grid.axes.empty()) throw ScenarioError("--grid", "no axes given");
    return grid;
}

std::map<std::int64_t, double> v_max_map(const Scenario& scenario) {
    std::map<std::int64_t, double> out;
    for (const Agent& a : scenario.agents) out[a.id] = a.v_max;
    return out;
}

void print_run_summary(const Scenario& scenario, const RunResult& result) {
    std::cout << "model: " << model_name(scenario.model) << "\n";
    std::cout << "steps: " << result.summary.steps << "\n";
    std::cout << "end_time: " << format_double(result.summary.end_time) << "\n";
    std::size_t arrived = 0;
    for (const AgentArrival& a : result.summary.arrivals) {
        if (a.time.has_value()) ++arrived;
    }
    std::cout << "arrived: " << arrived << "/" << result.summary.arrivals.size() << "\n";
    std::cout << "max_overlap_depth: " << format_double(result.summary.max_overlap_depth)
              << "\n";
    std::cout << "wall_seconds: " << format_double(result.summary.wall_seconds) << "\n";
    for (const AgentArrival& a : result.summary.arrivals) {
        std::cout << "agent " << a.agent_id << ": "
                  << (a.time ? format_double(*a.time) + " s" : std::string("not arrived"))
                  << "\n";
    }
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_path,
                 std::optional<std::uint64_t> seed, const std::string& model_override,
                 bool allow_unknown) {
    Scenario scenario = load_scenario(scenario_path, allow_unknown);
    if (!model_override.empty()) scenario.model = model_from_name(model_override);
    if (seed) scenario.seed = *seed;
    validate_scenario(scenario);
    const RunResult result = run(scenario);
    if (!out_path.empty()) write_file(out_path, write_trajectory(result.trajectory));
    print_run_summary(scenario, result);
    return kExitOk;
}

// Largest queue_metric over recorded times, with the earliest time it is
// attained. The first second is skipped: everyone starts at rest, which
// would always win.
std::pair<int, double> peak_queue(const std::vector<TrajectoryRecord>& trajectory,
                                  const std::map<std::int64_t, double>& v_max) {
    int best = 0;
    double best_time = 0.0;
    std::set<double> times;
    for (const TrajectoryRecord& r : trajectory) times.insert(r.time);
    for (double t : times) {
        if (t < 1.0) continue;
        const int q = queue_metric(trajectory, t, 0.2, v_max);
        if (q > best) {
            best = q;
            best_time = t;
        }
    }
    return {best, best_time};
}

int cmd_compare(const std::string& scenario_path, const std::string& out_dir,
                bool allow_unknown) {
    const Scenario base = load_scenario(scenario_path, allow_unknown);
    std::filesystem::create_directories(out_dir);
    const auto v_max = v_max_map(base);

    std::string table =
        "model,movement,steps,end_time,agents_arrived,mean_arrival_time,max_queue,max_queue_"
        "time\n";
    for (Model model : {Model::cellular, Model::magnetic, Model::social}) {
        Scenario scenario = base;
        scenario.model = model;
        validate_scenario(scenario);
        const RunResult result = run(scenario);
        const std::string name = model_name(model);
        write_file(out_dir + "/" + name + ".csv", write_trajectory(result.trajectory));

        std::size_t arrived = 0;
        double arrival_sum = 0.0;
        for (const AgentArrival& a : result.summary.arrivals) {
            if (a.time) {
                ++arrived;
                arrival_sum += *a.time;
            }
        }
        const auto [max_queue, max_queue_time] = peak_queue(result.trajectory, v_max);
        table += name;
        table += model == Model::cellular ? ",grid" : ",continuous";
        table += "," + std::to_string(result.summary.steps);
        table += "," + format_double(result.summary.end_time);
        table += "," + std::to_string(arrived) + "/" +
                 std::to_string(result.summary.arrivals.size());
        table += ",";
        table += arrived > 0 ? format_double(arrival_sum / static_cast<double>(arrived)) : "-";
        table += "," + std::to_string(max_queue);
        table += "," + format_double(max_queue_time);
        table += "\n";
    }
    write_file(out_dir + "/comparison.csv", table);
    std::cout << table;
    return kExitOk;
}

int cmd_metrics(const std::string& trajectory_path, const std::string& region_spec,
                std::optional<double> at, std::optional<double> window,
                double speed_fraction, const std::string& scenario_path, bool allow_unknown) {
    const std::vector<TrajectoryRecord> trajectory = load_trajectory(trajectory_path);
    const MeasureRegion region = parse_region(region_spec);

    if (region.kind() == MeasureRegion::Kind::gate) {
        double w;
        if (window) {
            w = *window;
        } else {
            if (trajectory.empty()) throw ScenarioError("--window", "empty trajectory");
            w = trajectory.back().time - trajectory.front().time;
            if (w <= 0.0) {
                throw ScenarioError("--window",
                                    "trajectory spans no time, pass --window explicitly");
            }
        }
        const GateFlow flow = gate_flow(trajectory, region, w);
        std::cout << "metric,value\n";
        std::cout << "net_crossings," << flow.net_count << "\n";
        std::cout << "gross_crossings," << flow.gross_count << "\n";
        std::cout << "net_per_second," << format_double(flow.net_per_second) << "\n";
        std::cout << "gross_per_second," << format_double(flow.gross_per_second) << "\n";
        return kExitOk;
    }

    std::cout << "metric,value\n";
    const auto evac = evacuation_time(trajectory, region);
    std::cout << "evacuation_time," << (evac ? format_double(*evac) : std::string("never"))
              << "\n";
    if (at) {
        std::cout << "density," << format_double(density(trajectory, region, *at)) << "\n";
        if (!scenario_path.empty()) {
            const Scenario scenario = load_scenario(scenario_path, allow_unknown);
            const int q = queue_metric(trajectory, *at, speed_fraction, v_max_map(scenario));
            std::cout << "queue," << q << "\n";
        }
    }
    return kExitOk;
}

int cmd_calibrate(const std::string& scenario_path, const std::string& ref_path,
                  const std::string& grid_spec, const std::string& out_path,
                  bool allow_unknown) {
    const Scenario scenario = load_scenario(scenario_path, allow_unknown);
    const std::vector<TrajectoryRecord> reference = load_trajectory(ref_path);
    const ParamGrid grid = parse_grid(grid_spec);
    const FitReport report = calibrate(scenario, grid, reference);
    if (!out_path.empty()) {
        write_file(out_path, render_fit_table(report));
        write_file(out_path + ".summary.json", render_fit_summary(report));
    }
    std::cout << "grid_points: " << report.table.size() << "\n";
    for (std::size_t a = 0; a < report.param_names.size(); ++a) {
        std::cout << "best " << report.param_names[a] << ": "
                  << format_double(report.best_values[a]) << "\n";
    }
    std::cout << "best_position_rmse: " << format_double(report.best_position_rmse) << "\n";
    std::cout << "best_velocity_rmse: " << format_double(report.best_velocity_rmse) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Microscopic pedestrian simulation: grid benefit-cost, magnetic pole force, "
                 "and social force models"};
    app.require_subcommand(1);

    std::string scenario_path, out_path, model_override, out_dir;
    std::string trajectory_path, region_spec, ref_path, grid_spec;
    std::optional<std::uint64_t> seed;
    std::optional<double> at, window;
    double speed_fraction = 0.2;
    bool allow_unknown = false;
    app.add_flag("--allow-unknown", allow_unknown,
                 "Accept unknown keys in scenario files instead of rejecting them");

    CLI::App* simulate = app.add_subcommand("simulate", "Run one scenario and export records");
    simulate->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    simulate->add_option("--out", out_path, "Trajectory output file");
    simulate->add_option("--seed", seed, "Override the scenario seed");
    simulate->add_option("--model", model_override,
                         "Override the model (cellular, magnetic, social)");

    CLI::App* compare = app.add_subcommand(
        "compare", "Run all three models on one scenario and tabulate differences");
    compare->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    compare->add_option("--out-dir", out_dir, "Directory for per-model trajectories")
        ->required();

    CLI::App* metrics = app.add_subcommand("metrics", "Evaluate measures on a trajectory file");
    metrics->add_option("--trajectory", trajectory_path, "Trajectory file")->required();
    metrics->add_option("--region", region_spec,
                        "area:xmin,ymin,xmax,ymax or gate:x1,y1,x2,y2")->required();
    metrics->add_option("--at", at, "Time for density and queue evaluation");
    metrics->add_option("--window", window, "Flow window in seconds (gate regions)");
    metrics->add_option("--speed-fraction", speed_fraction,
                        "Queue speed threshold as a fraction of each agent's v_max");
    metrics->add_option("--scenario", scenario_path,
                        "Scenario file supplying per-agent v_max for the queue metric");

    CLI::App* calibrate_cmd =
        app.add_subcommand("calibrate", "Grid-search model parameters against a reference");
    calibrate_cmd->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    calibrate_cmd->add_option("--ref", ref_path, "Reference trajectory file")->required();
    calibrate_cmd->add_option("--grid", grid_spec, "Axes, e.g. 'tau=0.4,0.5;A=1.0,2.0'")
        ->required();
    calibrate_cmd->add_option("--out", out_path, "Error table output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (simulate->parsed()) {
            return cmd_simulate(scenario_path, out_path, seed, model_override, allow_unknown);
        }
        if (compare->parsed()) return cmd_compare(scenario_path, out_dir, allow_unknown);
        if (metrics->parsed()) {
            return cmd_metrics(trajectory_path, region_spec, at, window, speed_fraction,
                               scenario_path, allow_unknown);
        }
        if (calibrate_cmd->parsed()) {
            return cmd_calibrate(scenario_path, ref_path, grid_spec, out_path, allow_unknown);
        }
    } catch (const SimulationError& e) {
        std::cerr << "simulation aborted: " << e.what() << "\n";
        return kExitAborted;
    } catch (const ScenarioError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitOk;
}

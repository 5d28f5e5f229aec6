#pragma once

#include "pedsim/engine.hpp"

#include <span>
#include <string>
#include <vector>

namespace pedsim {

// Canonical number rendering: 9 significant digits, shortest form ("%.9g"
// in the C locale). parse(write(x)) is stable at this precision.
std::string format_double(double value);

// Canonical trajectory encoding: header `time,agent_id,x,y,vx,vy`, one
// record per line, rows sorted by (time, agent_id). Throws std::logic_error
// on unsorted input (caller bug).
std::string write_trajectory(std::span<const TrajectoryRecord> records);

// Strict parse of the canonical encoding; throws ScenarioError with a line
// locus on any malformed or out-of-order row.
std::vector<TrajectoryRecord> parse_trajectory(const std::string& text);

}  // namespace pedsim

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace pedsim {

// Scenario or input-file rejection. locus names the field, list index, or
// file line that violated a contract.
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(std::string locus, const std::string& message)
        : std::runtime_error(locus + ": " + message), locus_(std::move(locus)) {}

    const std::string& locus() const noexcept { return locus_; }

private:
    std::string locus_;
};

// Abort while stepping: names the agent and the force/score term that
// produced a non-finite value.
class SimulationError : public std::runtime_error {
public:
    SimulationError(std::int64_t agent_id, std::string term, const std::string& message)
        : std::runtime_error("agent " + std::to_string(agent_id) + ", term '" + term +
                             "': " + message),
          agent_id_(agent_id),
          term_(std::move(term)) {}

    std::int64_t agent_id() const noexcept { return agent_id_; }
    const std::string& term() const noexcept { return term_; }

private:
    std::int64_t agent_id_;
    std::string term_;
};

}  // namespace pedsim

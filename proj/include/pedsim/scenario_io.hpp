#pragma once

#include "pedsim/scene.hpp"

#include <string>

namespace pedsim {

struct ParseOptions {
    // When false, any key not in the schema raises a ScenarioError naming it.
    bool allow_unknown = false;
};

// Parses a JSON scenario document and returns a fully validated Scenario.
// Throws ScenarioError with a field-path locus for schema violations and a
// line locus for JSON syntax errors.
Scenario parse_scenario(const std::string& text, const ParseOptions& options = {});

// Canonical serialization: alphabetically ordered keys, two-space indent,
// every optional field written explicitly. parse(write(s)) round-trips.
std::string write_scenario(const Scenario& scenario);

}  // namespace pedsim

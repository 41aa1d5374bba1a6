#pragma once

#include <string>

#include "lffc/harness.hpp"

namespace lffc {

// Raised for config files that exist but violate a documented invariant.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when an input file cannot be found or parsed at all.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The shipped defaults: surrogate plant, decentralized PI loops, LowPass
// learning filter with tau = 0, the four standard events, unit weights.
ScenarioConfig default_scenario();

// INI-style file with [section] headers and key = value lines; every key,
// unit, and default is listed in docs/config_schema.md. Unknown keys are
// rejected. Relative paths are resolved against LFFC_CONFIG_DIR when set.
ScenarioConfig load_config(const std::string& path);

void save_config(const std::string& path, const ScenarioConfig& scenario);

// Validates cross-field invariants (grid, events inside grid, plant dead
// times vs h, decoupler invertibility); throws ConfigError on violation.
void validate_scenario(const ScenarioConfig& scenario);

std::string resolve_config_path(const std::string& path);

}  // namespace lffc

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flbra/fuzzy_engine.hpp"
#include "flbra/link_model.hpp"
#include "flbra/topology.hpp"

namespace flbra::config {

// Half-widths of the uniform offsets applied by the drift subcommand.
struct DriftSpec {
    double rssi_delta_db = 2.0;
    double stddev_delta_db = 0.5;
    double per_delta = 0.1;
};

struct MonteCarloSpec {
    bool enabled = false;
    int packets = 1000;
};

struct RunConfig {
    std::vector<topology::Scenario> scenarios; // defaults to the stock six
    int iterations = 100;
    std::uint64_t master_seed = 42;
    linkmodel::PropagationParams propagation;
    fuzzy::FuzzyConfig fuzzy = fuzzy::FuzzyConfig::defaults();
    std::uint32_t round_budget = 0; // 0 = one round per node
    double cost_tolerance = 1e-9;   // network_check comparison tolerance
    int check_interval = 10;        // operation rounds between checks
    DriftSpec drift;
    std::string out_dir = "out";
    bool trace = false;
    MonteCarloSpec monte_carlo;
};

// Built-in defaults: the six stock scenarios, 100 iterations, seed 42.
RunConfig defaults();

// Parses a JSON document; absent fields keep their defaults, unknown keys
// are rejected. Throws ConfigError with the offending key or position.
RunConfig parse_json(const std::string& text);

// Reads and parses a config file. Throws IoError when unreadable.
RunConfig load_file(const std::string& path);

// Full semantic validation: propagation ranges, grid feasibility of every
// scenario, fuzzy shape constraints (via engine construction), counters.
void validate(const RunConfig& cfg);

// One-line-per-field human-readable summary for `validate-config`.
std::string describe(const RunConfig& cfg);

} // namespace flbra::config

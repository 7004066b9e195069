// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "flbra/runner.hpp"
#include "flbra/topology.hpp"

namespace flbra::outputs {

// Shortest round-trip-safe decimal rendering used by every CSV writer.
// Non-finite values become "nan"/"inf"/"-inf".
std::string format_double(double v);

// One row per scenario. Theta columns carry "n/a" when the confidence
// interval was not computable (single-iteration runs).
std::string summary_csv(const std::vector<runner::ScenarioResult>& results);

// One row per (scenario, iteration) pair, in run order.
std::string iterations_csv(const std::vector<runner::ScenarioResult>& results);

// Reachable links of one sampled graph, ascending (src, dst). The cost
// column is empty for links without an attached crisp cost.
std::string edge_list_csv(const topology::NetworkGraph& g);

// Overwrites `path` atomically enough for our purposes (single writer).
// Throws IoError carrying the path on failure.
void write_file(const std::string& path, const std::string& content);

// Writes summary.csv and iterations.csv under `out_dir`, creating the
// directory if needed. Refuses empty result sets (InputError).
void emit_outputs(const std::string& out_dir,
                  const std::vector<runner::ScenarioResult>& results);

} // namespace flbra::outputs

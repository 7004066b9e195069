// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "flbra/metrics.hpp"
#include "flbra/protocols.hpp"
#include "flbra/sim_config.hpp"
#include "flbra/topology.hpp"

namespace flbra::runner {

using topology::NodeId;

// One sensor's fate in one iteration, for both protocols.
struct NodeRecord {
    NodeId node = 0;
    double s_flbra = 0.0;
    double s_rbf = 0.0;
    bool flbra_delivered = false;
    bool rbf_delivered = false;
    std::uint32_t flbra_hops = 0; // meaningful only when delivered
    std::uint32_t rbf_hops = 0;
};

struct IterationRecord {
    std::uint64_t iteration = 0;
    double f = 0.0;
    std::uint32_t setup_rounds = 0;
    std::vector<NodeRecord> nodes; // sensors in ascending id order
    metrics::HopStats flbra;
    metrics::HopStats rbf;
};

struct ScenarioResult {
    topology::Scenario scenario;
    std::vector<IterationRecord> iterations;
    double fm = 0.0;     // mean F over iterations
    double theta1 = 0.0; // 95% bounds, valid only when ci_valid
    double theta2 = 0.0;
    bool ci_valid = false; // false for single-iteration runs
    double avg_hops_flbra = 0.0; // pooled over all delivered (node, iteration)
    double avg_hops_rbf = 0.0;
    double farthest_flbra = 0.0; // mean over iterations of the per-iteration max
    double farthest_rbf = 0.0;
    std::size_t voids_flbra = 0; // total over all iterations
    std::size_t voids_rbf = 0;
};

// Creates one TraceFn per scenario (e.g. one log file each); may return an
// empty function to mute a scenario.
using TraceFactory = std::function<protocols::TraceFn(const std::string& scenario_name)>;

// Samples one network and runs both protocols on the identical graph.
// scenario_index feeds the RNG stream key, so results are independent of
// which other scenarios run. Setup-incomplete errors are re-raised with
// scenario/iteration context attached.
IterationRecord run_iteration(const topology::Scenario& s, const config::RunConfig& cfg,
                              const fuzzy::FuzzyEngine& engine,
                              std::uint64_t scenario_index, std::uint64_t iteration,
                              const protocols::TraceFn& trace = {});

// Runs every configured scenario for cfg.iterations iterations and
// aggregates the evaluation quantities.
std::vector<ScenarioResult> run_suite(const config::RunConfig& cfg,
                                      const TraceFactory& traces = {});

// Same, restricted to the scenarios at the given config-list positions.
// Streams stay keyed by those positions, so a filtered run reproduces the
// exact networks the full run would draw for the same scenarios.
std::vector<ScenarioResult> run_suite(const config::RunConfig& cfg,
                                      const std::vector<std::size_t>& scenario_indices,
                                      const TraceFactory& traces = {});

} // namespace flbra::runner

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "flbra/errors.hpp"
#include "flbra/fuzzy_engine.hpp"
#include "flbra/topology.hpp"

namespace flbra::protocols {

using fuzzy::FuzzyEngine;
using topology::NetworkGraph;
using topology::NodeId;
using topology::RoutingTable;

// One directed link as known to the base station after discovery.
struct KnownLink {
    NodeId from = 0;
    NodeId to = 0;
    linkmodel::LinkQuality quality;
    double cost = 0.0; // crisp fuzzy cost
};

// Everything the base station has learned about the network.
struct NetInfo {
    std::vector<NodeId> discovered;  // sensors the base can route, ascending
    std::vector<NodeId> frontier;    // heard of but not yet queried, ascending
    std::vector<KnownLink> known_links; // sorted by (from, to)
};

enum class Phase { Setup, Operational, Faulty };

struct ProtocolState {
    Phase phase = Phase::Setup;
    RoutingTable routing_table;
    NetInfo info;
};

// Optional per-round trace hook; receives one preformatted line per event.
using TraceFn = std::function<void(const std::string&)>;

struct SetupResult {
    RoutingTable routing_table;
    NetInfo info;
    std::uint32_t rounds = 0; // productive discovery rounds
};

// Raised when the round budget runs out with undiscovered nodes still
// audible; carries the partial state reached so far.
class SetupIncompleteError : public Error {
public:
    SetupIncompleteError(std::string msg, SetupResult partial)
        : Error(std::move(msg)), partial_(std::move(partial)) {}
    const SetupResult& partial() const { return partial_; }

private:
    SetupResult partial_;
};

// Synchronous-round model of the setup phase: a sensor is discovered once it
// has a reachable link toward the sink or toward an already-discovered
// sensor. After every productive round the crisp costs of all known links
// are evaluated and the routing table is rebuilt. round_budget 0 means
// "number of nodes".
SetupResult flbra_setup(const NetworkGraph& g, const FuzzyEngine& engine,
                        std::uint32_t round_budget = 0, const TraceFn& trace = {});

enum class CheckStatus { Operational, Faulty };

// Periodic health check of the operation phase: re-listens on the (possibly
// drifted) network and reports FAULTY when new sensors became audible or any
// known link's crisp cost moved by more than cost_tolerance (including links
// that appeared or died). The caller re-runs flbra_setup on FAULTY.
CheckStatus flbra_network_check(const ProtocolState& state, const NetworkGraph& g,
                                const FuzzyEngine& engine,
                                double cost_tolerance = 1e-9,
                                const TraceFn& trace = {});

struct DeliveryOutcome {
    NodeId source = 0;
    bool delivered = false;
    std::uint32_t hops = 0;           // links traversed, also for void prefixes
    std::vector<NodeId> path;         // source .. last node reached
    double end_to_end_success = 0.0;  // product of (1 - PER), 0 for voids
};

// Greedy beacon-gradient walk: forward to the reachable neighbor with the
// strictly highest sink RSSI (tie -> lower id); with no strictly improving
// neighbor, deliver straight to the sink when that link is alive, otherwise
// stop in a void. A node with no sink beacon has RSSI -infinity.
DeliveryOutcome rbf_route(const NetworkGraph& g, NodeId source);

// Folds per-link packet error rates into the end-to-end success probability
// of one path (product of per-link successes). The path is delivered iff it
// ends at the sink; anything else is a void prefix scoring zero.
DeliveryOutcome evaluate_delivery(const std::vector<NodeId>& path, const NetworkGraph& g);

// Bernoulli cross-check of evaluate_delivery: fraction of `packets` trials
// surviving every link of the path.
double monte_carlo_success(const std::vector<NodeId>& path, const NetworkGraph& g,
                           RngStream& rng, int packets);

} // namespace flbra::protocols

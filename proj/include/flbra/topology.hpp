// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "flbra/link_model.hpp"
#include "flbra/rng.hpp"

namespace flbra::topology {

using NodeId = std::uint32_t;
inline constexpr NodeId kSinkId = 0;

struct Position {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Position& a, const Position& b);

// One evaluation scenario: node_count sensors (the sink is extra) on a square
// grid with fixed spacing inside a sqrt(area) x sqrt(area) room.
struct Scenario {
    std::string name;
    int node_count = 0; // sensors, excluding the sink
    double area_m2 = 0.0;
    double spacing_m = 3.0;
};

// The six stock scenarios S01..S06.
std::vector<Scenario> stock_scenarios();

// Directed graph over placed nodes. Every sampled link is stored (including
// unreachable ones, whose per is pinned at 1); neighbor iteration only ever
// yields reachable links. Costs are attached separately by the FLBRA setup
// phase and default to unset.
class NetworkGraph {
public:
    NetworkGraph() = default;
    NetworkGraph(std::size_t node_count_including_sink, NodeId sink);

    std::size_t size() const { return positions_.size(); }
    NodeId sink() const { return sink_; }

    void set_position(NodeId id, Position p);
    const Position& position(NodeId id) const;

    // Self-links are rejected with GeometryError; ids are bounds-checked.
    void set_link(NodeId from, NodeId to, const linkmodel::LinkQuality& q);
    bool has_link(NodeId from, NodeId to) const;
    const linkmodel::LinkQuality& link(NodeId from, NodeId to) const;

    void set_cost(NodeId from, NodeId to, double cost);
    void clear_costs();
    bool has_cost(NodeId from, NodeId to) const;
    double cost(NodeId from, NodeId to) const;

    // Reachable out-neighbors of `from` in ascending id order.
    std::vector<NodeId> neighbors_out(NodeId from) const;
    // Nodes u with a reachable link u -> to, ascending.
    std::vector<NodeId> neighbors_in(NodeId to) const;

    // FNV-1a fingerprint over positions, sink, link qualities and costs.
    // Bit-identical graphs hash identically; used to assert that protocol
    // runs never mutate the network they were handed.
    std::uint64_t checksum() const;

private:
    std::size_t idx(NodeId from, NodeId to) const;

    std::vector<Position> positions_;
    NodeId sink_ = kSinkId;
    std::vector<std::uint8_t> present_;
    std::vector<linkmodel::LinkQuality> quality_;
    std::vector<double> costs_; // NaN = unset
};

// Lays out the grid and places the sink at the center grid point; sensors
// fill the remaining points in row-major order. Throws ScenarioError when the
// grid cannot hold node_count + 1 nodes.
NetworkGraph build_grid(const Scenario& s);

// Identifies the deterministic RNG streams of one simulated network.
struct StreamKey {
    std::uint64_t master_seed = 0;
    std::uint64_t scenario = 0;
    std::uint64_t iteration = 0;
};

// Samples every ordered node pair with its own substream (element = u*N + v)
// so link draws are independent of sampling order.
void populate_links(NetworkGraph& g, const linkmodel::PropagationParams& p,
                    const StreamKey& key);

struct RoutingTable {
    // All vectors are indexed by NodeId. The sink is routed with zero cost,
    // zero hops, and a single-element path.
    std::vector<std::uint8_t> routed;
    std::vector<NodeId> next_hop;              // meaningful only when routed
    std::vector<double> path_cost;             // +inf when unrouted
    std::vector<std::uint32_t> hops;           // 0 for the sink
    std::vector<std::vector<NodeId>> full_path; // node .. sink inclusive

    std::size_t size() const { return routed.size(); }
    bool is_routed(NodeId id) const { return routed[id] != 0; }
};

// Minimum-total-cost route from every node to the sink over directed
// reachable links, ties broken by lower hop count and then lower next-hop id.
// link_cost must be nonnegative and finite for every reachable link
// (InputError otherwise). Unrouted nodes are flagged, not fatal.
RoutingTable dijkstra_routes(const NetworkGraph& g,
                             const std::function<double(NodeId, NodeId)>& link_cost);

// Convenience overload using the costs stored on the graph; throws
// InternalError if a reachable link has no cost attached.
RoutingTable dijkstra_routes(const NetworkGraph& g);

} // namespace flbra::topology

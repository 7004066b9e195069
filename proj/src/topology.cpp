// SPDX-License-Identifier: Apache-2.0
#include "flbra/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <queue>

#include "flbra/errors.hpp"

namespace flbra::topology {

double distance(const Position& a, const Position& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

std::vector<Scenario> stock_scenarios() {
    return {
        {"S01", 8, 36.0, 3.0},    {"S02", 24, 144.0, 3.0},  {"S03", 48, 324.0, 3.0},
        {"S04", 80, 576.0, 3.0},  {"S05", 120, 900.0, 3.0}, {"S06", 160, 1296.0, 3.0},
    };
}

NetworkGraph::NetworkGraph(std::size_t node_count_including_sink, NodeId sink)
    : positions_(node_count_including_sink),
      sink_(sink),
      present_(node_count_including_sink * node_count_including_sink, 0),
      quality_(node_count_including_sink * node_count_including_sink),
      costs_(node_count_including_sink * node_count_including_sink,
             std::numeric_limits<double>::quiet_NaN()) {
    if (node_count_including_sink == 0)
        throw GeometryError("graph: need at least one node");
    if (sink >= node_count_including_sink)
        throw InputError("graph: sink id out of range");
}

std::size_t NetworkGraph::idx(NodeId from, NodeId to) const {
    const std::size_t n = positions_.size();
    if (from >= n || to >= n)
        throw InputError("graph: node id out of range");
    if (from == to)
        throw GeometryError("graph: self-links are not allowed");
    return static_cast<std::size_t>(from) * n + to;
}

void NetworkGraph::set_position(NodeId id, Position p) {
    if (id >= positions_.size())
        throw InputError("graph: node id out of range");
    positions_[id] = p;
}

const Position& NetworkGraph::position(NodeId id) const {
    if (id >= positions_.size())
        throw InputError("graph: node id out of range");
    return positions_[id];
}

void NetworkGraph::set_link(NodeId from, NodeId to, const linkmodel::LinkQuality& q) {
    const std::size_t i = idx(from, to);
    present_[i] = 1;
    quality_[i] = q;
}

bool NetworkGraph::has_link(NodeId from, NodeId to) const {
    return present_[idx(from, to)] != 0;
}

const linkmodel::LinkQuality& NetworkGraph::link(NodeId from, NodeId to) const {
    const std::size_t i = idx(from, to);
    if (!present_[i])
        throw InputError("graph: no such link");
    return quality_[i];
}

void NetworkGraph::set_cost(NodeId from, NodeId to, double cost) {
    if (!std::isfinite(cost) || cost < 0.0)
        throw InputError("graph: link cost must be finite and nonnegative");
    costs_[idx(from, to)] = cost;
}

void NetworkGraph::clear_costs() {
    std::fill(costs_.begin(), costs_.end(), std::numeric_limits<double>::quiet_NaN());
}

bool NetworkGraph::has_cost(NodeId from, NodeId to) const {
    return !std::isnan(costs_[idx(from, to)]);
}

double NetworkGraph::cost(NodeId from, NodeId to) const {
    const std::size_t i = idx(from, to);
    if (std::isnan(costs_[i]))
        throw InputError("graph: link has no cost");
    return costs_[i];
}

std::vector<NodeId> NetworkGraph::neighbors_out(NodeId from) const {
    const std::size_t n = positions_.size();
    if (from >= n)
        throw InputError("graph: node id out of range");
    std::vector<NodeId> out;
    for (NodeId to = 0; to < n; ++to) {
        if (to == from)
            continue;
        const std::size_t i = static_cast<std::size_t>(from) * n + to;
        if (present_[i] && quality_[i].reachable)
            out.push_back(to);
    }
    return out;
}

std::vector<NodeId> NetworkGraph::neighbors_in(NodeId to) const {
    const std::size_t n = positions_.size();
    if (to >= n)
        throw InputError("graph: node id out of range");
    std::vector<NodeId> in;
    for (NodeId from = 0; from < n; ++from) {
        if (from == to)
            continue;
        const std::size_t i = static_cast<std::size_t>(from) * n + to;
        if (present_[i] && quality_[i].reachable)
            in.push_back(from);
    }
    return in;
}

namespace {

struct Fnv1a {
    std::uint64_t h = 1469598103934665603ull;
    void bytes(const void* p, std::size_t n) {
        const auto* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 1099511628211ull;
        }
    }
    void u64(std::uint64_t v) { bytes(&v, sizeof v); }
    void f64(double v) {
        std::uint64_t bits;
        static_assert(sizeof bits == sizeof v);
        std::memcpy(&bits, &v, sizeof v);
        u64(bits);
    }
};

} // namespace

std::uint64_t NetworkGraph::checksum() const {
    Fnv1a f;
    const std::size_t n = positions_.size();
    f.u64(n);
    f.u64(sink_);
    for (const Position& p : positions_) {
        f.f64(p.x);
        f.f64(p.y);
    }
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = 0; v < n; ++v) {
            if (u == v)
                continue;
            const std::size_t i = static_cast<std::size_t>(u) * n + v;
            if (!present_[i])
                continue;
            f.u64(u);
            f.u64(v);
            f.f64(quality_[i].mean_rssi);
            f.f64(quality_[i].rssi_stddev);
            f.f64(quality_[i].per);
            f.u64(quality_[i].reachable ? 1 : 0);
            if (std::isnan(costs_[i]))
                f.u64(0x6e6f636f7374ull); // "nocost" marker
            else
                f.f64(costs_[i]);
        }
    }
    return f.h;
}

NetworkGraph build_grid(const Scenario& s) {
    if (s.node_count <= 0)
        throw ScenarioError("scenario " + s.name + ": node_count must be > 0");
    if (!(s.area_m2 > 0.0) || !std::isfinite(s.area_m2))
        throw ScenarioError("scenario " + s.name + ": area must be > 0");
    if (!(s.spacing_m > 0.0) || !std::isfinite(s.spacing_m))
        throw ScenarioError("scenario " + s.name + ": spacing must be > 0");

    // Largest grid whose span (side-1)*spacing still fits the room edge;
    // the epsilon absorbs sqrt rounding on exact-square areas.
    const double side_f = std::sqrt(s.area_m2) / s.spacing_m + 1.0;
    const auto side = static_cast<std::size_t>(std::floor(side_f + 1e-9));
    if (side < 1)
        throw ScenarioError("scenario " + s.name + ": room is smaller than one grid cell");

    const std::size_t points = side * side;
    const std::size_t needed = static_cast<std::size_t>(s.node_count) + 1;
    if (needed > points)
        throw ScenarioError("scenario " + s.name + ": " + std::to_string(needed) +
                            " nodes do not fit " + std::to_string(points) + " grid points");

    NetworkGraph g(needed, kSinkId);
    const std::size_t center = (side / 2) * side + (side / 2);
    auto at = [&](std::size_t flat) {
        const std::size_t r = flat / side;
        const std::size_t c = flat % side;
        return Position{static_cast<double>(c) * s.spacing_m,
                        static_cast<double>(r) * s.spacing_m};
    };
    g.set_position(kSinkId, at(center));
    NodeId next = 1;
    for (std::size_t flat = 0; flat < points && next < needed; ++flat) {
        if (flat == center)
            continue;
        g.set_position(next++, at(flat));
    }
    return g;
}

void populate_links(NetworkGraph& g, const linkmodel::PropagationParams& p,
                    const StreamKey& key) {
    linkmodel::validate(p);
    const std::size_t n = g.size();
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = 0; v < n; ++v) {
            if (u == v)
                continue;
            // Element = u*N + v: each directed link owns a substream, so the
            // draw sequence is independent of sampling order.
            RngStream rng(key.master_seed, key.scenario, key.iteration,
                          StreamPurpose::LinkSample,
                          static_cast<std::uint64_t>(u) * n + v);
            const double d = distance(g.position(u), g.position(v));
            g.set_link(u, v, linkmodel::sample_link(p, d, rng));
        }
    }
}

RoutingTable dijkstra_routes(const NetworkGraph& g,
                             const std::function<double(NodeId, NodeId)>& link_cost) {
    const std::size_t n = g.size();
    const NodeId sink = g.sink();
    constexpr double kInf = std::numeric_limits<double>::infinity();

    RoutingTable rt;
    rt.routed.assign(n, 0);
    rt.next_hop.assign(n, std::numeric_limits<NodeId>::max());
    rt.path_cost.assign(n, kInf);
    rt.hops.assign(n, 0);
    rt.full_path.assign(n, {});

    std::vector<std::vector<NodeId>> in_edges(n);
    for (NodeId u = 0; u < n; ++u)
        in_edges[u] = g.neighbors_in(u);

    auto checked_cost = [&](NodeId from, NodeId to) {
        const double c = link_cost(from, to);
        if (!std::isfinite(c) || c < 0.0)
            throw InputError("dijkstra: link costs must be finite and nonnegative");
        return c;
    };

    struct Entry {
        double cost;
        std::uint32_t hops;
        NodeId node;
    };
    auto later = [](const Entry& a, const Entry& b) {
        if (a.cost != b.cost)
            return a.cost > b.cost;
        if (a.hops != b.hops)
            return a.hops > b.hops;
        return a.node > b.node;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(later)> pq(later);
    std::vector<std::uint8_t> settled(n, 0);

    rt.path_cost[sink] = 0.0;
    pq.push({0.0, 0, sink});

    while (!pq.empty()) {
        const Entry e = pq.top();
        pq.pop();
        if (settled[e.node] || e.cost != rt.path_cost[e.node] || e.hops != rt.hops[e.node])
            continue;
        settled[e.node] = 1;

        // Relax every reachable in-edge v -> e.node. Path costs accumulate
        // sink-outward (link cost + settled distance), which fixes the float
        // summation order the enumeration oracle must reproduce.
        for (NodeId v : in_edges[e.node]) {
            if (settled[v])
                continue;
            const double cand_cost = checked_cost(v, e.node) + rt.path_cost[e.node];
            const std::uint32_t cand_hops = e.hops + 1;
            const bool better =
                cand_cost < rt.path_cost[v] ||
                (cand_cost == rt.path_cost[v] &&
                 (cand_hops < rt.hops[v] ||
                  (cand_hops == rt.hops[v] && e.node < rt.next_hop[v])));
            if (better) {
                rt.path_cost[v] = cand_cost;
                rt.hops[v] = cand_hops;
                rt.next_hop[v] = e.node;
                pq.push({cand_cost, cand_hops, v});
            }
        }
    }

    for (NodeId v = 0; v < n; ++v) {
        if (rt.path_cost[v] == kInf)
            continue;
        rt.routed[v] = 1;
        std::vector<NodeId> path{v};
        NodeId cur = v;
        while (cur != sink) {
            cur = rt.next_hop[cur];
            path.push_back(cur);
            if (path.size() > n)
                throw InternalError("dijkstra: routing loop detected");
        }
        rt.full_path[v] = std::move(path);
    }
    return rt;
}

RoutingTable dijkstra_routes(const NetworkGraph& g) {
    return dijkstra_routes(g, [&g](NodeId from, NodeId to) {
        if (!g.has_cost(from, to))
            throw InternalError("dijkstra: reachable link without a cost");
        return g.cost(from, to);
    });
}

} // namespace flbra::topology

// SPDX-License-Identifier: Apache-2.0
#include "flbra/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace flbra::protocols {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::string setup_line(std::uint32_t round, std::size_t discovered, std::size_t routed) {
    return "setup round=" + std::to_string(round) +
           " discovered=" + std::to_string(discovered) +
           " routed=" + std::to_string(routed);
}

// Sensors outside `known` that can transmit to some member of `known`.
std::vector<NodeId> audible_frontier(const NetworkGraph& g,
                                     const std::vector<std::uint8_t>& in_known) {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < g.size(); ++v) {
        if (in_known[v])
            continue;
        for (NodeId u : g.neighbors_out(v)) {
            if (in_known[u]) {
                out.push_back(v);
                break;
            }
        }
    }
    return out;
}

struct KnownView {
    NetworkGraph subgraph;       // induced on known nodes, costs attached
    std::vector<KnownLink> links; // sorted (from, to)
};

// Induced subgraph over the known nodes with fuzzy costs; cache holds one
// crisp cost per directed link so each link is evaluated exactly once per
// setup run.
KnownView build_known_view(const NetworkGraph& g, const std::vector<std::uint8_t>& in_known,
                           const FuzzyEngine& engine, std::vector<double>& cost_cache) {
    const std::size_t n = g.size();
    KnownView view{NetworkGraph(n, g.sink()), {}};
    for (NodeId i = 0; i < n; ++i)
        view.subgraph.set_position(i, g.position(i));
    for (NodeId u = 0; u < n; ++u) {
        if (!in_known[u])
            continue;
        for (NodeId v : g.neighbors_out(u)) {
            if (!in_known[v])
                continue;
            const linkmodel::LinkQuality& q = g.link(u, v);
            double& cached = cost_cache[static_cast<std::size_t>(u) * n + v];
            if (std::isnan(cached))
                cached = engine.link_cost(q.mean_rssi, q.rssi_stddev, q.per);
            view.subgraph.set_link(u, v, q);
            view.subgraph.set_cost(u, v, cached);
            view.links.push_back({u, v, q, cached});
        }
    }
    return view;
}

// Routed sensors, excluding the always-routed sink.
std::size_t routed_count(const RoutingTable& rt, NodeId sink) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < rt.size(); ++i)
        k += (i != sink && rt.is_routed(static_cast<NodeId>(i))) ? 1 : 0;
    return k;
}

} // namespace

SetupResult flbra_setup(const NetworkGraph& g, const FuzzyEngine& engine,
                        std::uint32_t round_budget, const TraceFn& trace) {
    const std::size_t n = g.size();
    const NodeId sink = g.sink();
    const std::uint32_t budget =
        round_budget != 0 ? round_budget : static_cast<std::uint32_t>(n);

    std::vector<std::uint8_t> in_known(n, 0);
    in_known[sink] = 1;
    std::vector<double> cost_cache(n * n, std::numeric_limits<double>::quiet_NaN());

    SetupResult res;
    {
        KnownView view = build_known_view(g, in_known, engine, cost_cache);
        res.routing_table = topology::dijkstra_routes(view.subgraph);
        res.info.known_links = std::move(view.links);
    }

    for (;;) {
        const std::vector<NodeId> wave = audible_frontier(g, in_known);
        if (wave.empty())
            break;
        if (res.rounds >= budget) {
            res.info.frontier = wave;
            if (trace)
                trace("setup budget_exhausted rounds=" + std::to_string(res.rounds) +
                      " frontier=" + std::to_string(wave.size()));
            throw SetupIncompleteError(
                "setup: round budget (" + std::to_string(budget) +
                    ") exhausted with " + std::to_string(wave.size()) +
                    " sensors still undiscovered",
                res);
        }
        for (NodeId v : wave) {
            in_known[v] = 1;
            res.info.discovered.push_back(v);
        }
        std::sort(res.info.discovered.begin(), res.info.discovered.end());
        ++res.rounds;

        KnownView view = build_known_view(g, in_known, engine, cost_cache);
        res.routing_table = topology::dijkstra_routes(view.subgraph);
        res.info.known_links = std::move(view.links);
        if (trace)
            trace(setup_line(res.rounds, res.info.discovered.size(),
                             routed_count(res.routing_table, sink)));
    }
    return res;
}

CheckStatus flbra_network_check(const ProtocolState& state, const NetworkGraph& g,
                                const FuzzyEngine& engine, double cost_tolerance,
                                const TraceFn& trace) {
    if (state.phase != Phase::Operational)
        throw InputError("network_check: protocol is not in the operational phase");
    if (!(cost_tolerance >= 0.0))
        throw InputError("network_check: cost tolerance must be >= 0");

    const std::size_t n = g.size();
    std::vector<std::uint8_t> in_known(n, 0);
    in_known[g.sink()] = 1;
    for (NodeId v : state.info.discovered) {
        if (v >= n)
            throw InputError("network_check: discovered id out of range");
        in_known[v] = 1;
    }

    // Algorithm step 1: any sensor newly audible means the topology grew.
    const std::vector<NodeId> frontier = audible_frontier(g, in_known);
    if (!frontier.empty()) {
        if (trace)
            trace("check status=faulty reason=new_sensors count=" +
                  std::to_string(frontier.size()));
        return CheckStatus::Faulty;
    }

    // Algorithm step 2: re-collect every known link and compare path info.
    auto faulty = [&](const char* reason) {
        if (trace)
            trace(std::string("check status=faulty reason=") + reason);
        return CheckStatus::Faulty;
    };
    std::size_t idx = 0;
    const std::vector<KnownLink>& old_links = state.info.known_links;
    for (NodeId u = 0; u < n; ++u) {
        if (!in_known[u])
            continue;
        for (NodeId v : g.neighbors_out(u)) {
            if (!in_known[v])
                continue;
            if (idx >= old_links.size() || old_links[idx].from != u ||
                old_links[idx].to != v)
                return faulty("link_appeared");
            const linkmodel::LinkQuality& q = g.link(u, v);
            const double cost = engine.link_cost(q.mean_rssi, q.rssi_stddev, q.per);
            if (std::abs(cost - old_links[idx].cost) > cost_tolerance)
                return faulty("cost_changed");
            ++idx;
        }
    }
    if (idx != old_links.size())
        return faulty("link_lost");

    if (trace)
        trace("check status=operational links=" + std::to_string(idx));
    return CheckStatus::Operational;
}

DeliveryOutcome rbf_route(const NetworkGraph& g, NodeId source) {
    const NodeId sink = g.sink();
    auto sink_rssi = [&](NodeId m) {
        if (m == sink)
            return std::numeric_limits<double>::infinity();
        if (!g.has_link(sink, m) || !g.link(sink, m).reachable)
            return kNegInf; // never heard a beacon
        return g.link(sink, m).mean_rssi;
    };

    std::vector<NodeId> path{source};
    NodeId cur = source;
    std::size_t steps = 0;
    while (cur != sink) {
        if (++steps > g.size())
            throw InternalError("rbf: walk exceeded the node count");
        NodeId best = std::numeric_limits<NodeId>::max();
        double best_rssi = sink_rssi(cur);
        for (NodeId m : g.neighbors_out(cur)) { // ascending: ties keep lowest id
            if (m == sink)
                continue;
            if (sink_rssi(m) > best_rssi) {
                best = m;
                best_rssi = sink_rssi(m);
            }
        }
        if (best != std::numeric_limits<NodeId>::max()) {
            cur = best;
            path.push_back(cur);
        } else if (g.has_link(cur, sink) && g.link(cur, sink).reachable) {
            cur = sink;
            path.push_back(cur);
        } else {
            break; // void: nothing improves and the sink is out of reach
        }
    }
    return evaluate_delivery(path, g);
}

DeliveryOutcome evaluate_delivery(const std::vector<NodeId>& path, const NetworkGraph& g) {
    if (path.empty())
        throw InputError("delivery: empty path");
    for (NodeId id : path)
        if (id >= g.size())
            throw InputError("delivery: node id out of range");
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (path[i] == g.sink())
            throw InternalError("delivery: sink in the middle of a path");
        if (!g.has_link(path[i], path[i + 1]) || !g.link(path[i], path[i + 1]).reachable)
            throw InternalError("delivery: path uses a missing or dead link");
    }
    for (std::size_t i = 0; i < path.size(); ++i)
        for (std::size_t j = i + 1; j < path.size(); ++j)
            if (path[i] == path[j])
                throw InternalError("delivery: path revisits a node");

    DeliveryOutcome out;
    out.source = path.front();
    out.path = path;
    out.hops = static_cast<std::uint32_t>(path.size() - 1);
    out.delivered = path.back() == g.sink();
    if (out.delivered) {
        double success = 1.0;
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            success *= 1.0 - g.link(path[i], path[i + 1]).per;
        out.end_to_end_success = success;
    }
    return out;
}

double monte_carlo_success(const std::vector<NodeId>& path, const NetworkGraph& g,
                           RngStream& rng, int packets) {
    if (packets <= 0)
        throw InputError("monte carlo: packet count must be > 0");
    const DeliveryOutcome analytic = evaluate_delivery(path, g);
    if (!analytic.delivered)
        return 0.0;
    int survived = 0;
    for (int k = 0; k < packets; ++k) {
        bool alive = true;
        for (std::size_t i = 0; alive && i + 1 < path.size(); ++i)
            alive = rng.uniform01() >= g.link(path[i], path[i + 1]).per;
        survived += alive ? 1 : 0;
    }
    return static_cast<double>(survived) / packets;
}

} // namespace flbra::protocols

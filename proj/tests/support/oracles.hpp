// SPDX-License-Identifier: Apache-2.0
#pragma once

// Independent reference implementations used only by tests. They share no
// code with the production integration path (no precomputed grid tables, no
// simd kernels, long-double serial accumulation) so agreement is meaningful.

#include "flbra/membership.hpp"
#include "flbra/topology.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace flbra::test {

// Center of area of max_k min(clip[k], mu_k(x)) over the variable's universe
// by serial trapezoid integration at the given number of points.
inline double centroid_oracle(const fuzzy::FuzzyVariable& cost, const double clip[3],
                              std::size_t points) {
    const double lo = cost.lo();
    const double hi = cost.hi();
    const double dx = (hi - lo) / double(points - 1);
    long double area = 0.0L;
    long double moment = 0.0L;
    for (std::size_t i = 0; i < points; ++i) {
        const double x = lo + double(i) * dx;
        double m = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double d = cost.sets()[std::size_t(k)].degree_at(x);
            const double c = clip[k] < d ? clip[k] : d;
            if (c > m) m = c;
        }
        const double w = (i == 0 || i + 1 == points) ? dx / 2.0 : dx;
        area += (long double)(w) * m;
        moment += (long double)(w * x) * m;
    }
    if (area == 0.0L) return (lo + hi) / 2.0;
    return double(moment / area);
}

// Brute-force single-destination shortest path by enumerating every simple
// path to the sink. Costs fold sink-outward (link cost + accumulated tail),
// matching the library's summation order, so equality checks are exact.
struct PathOracle {
    double cost = std::numeric_limits<double>::infinity();
    std::uint32_t hops = 0;
    topology::NodeId next = std::numeric_limits<topology::NodeId>::max();
    bool found = false;
};

inline PathOracle enumerate_best(const topology::NetworkGraph& g, topology::NodeId start) {
    using topology::NodeId;
    PathOracle best;
    const std::size_t n = g.size();
    std::vector<std::uint8_t> visited(n, 0);
    std::vector<NodeId> path{start};
    visited[start] = 1;

    auto consider = [&]() {
        double acc = 0.0;
        for (std::size_t i = path.size() - 1; i-- > 0;)
            acc = g.cost(path[i], path[i + 1]) + acc;
        const auto hops = static_cast<std::uint32_t>(path.size() - 1);
        const NodeId next = path.size() > 1 ? path[1] : start;
        const bool better =
            !best.found || acc < best.cost ||
            (acc == best.cost &&
             (hops < best.hops || (hops == best.hops && next < best.next)));
        if (better) {
            best = {acc, hops, next, true};
        }
    };

    std::function<void(NodeId)> dfs = [&](NodeId cur) {
        if (cur == g.sink()) {
            consider();
            return;
        }
        for (NodeId nxt : g.neighbors_out(cur)) {
            if (visited[nxt])
                continue;
            visited[nxt] = 1;
            path.push_back(nxt);
            dfs(nxt);
            path.pop_back();
            visited[nxt] = 0;
        }
    };
    dfs(start);
    return best;
}

} // namespace flbra::test

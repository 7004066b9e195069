// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate: ten end-to-end criteria, one verdict line each. Every
// tolerance is pinned right here; the program exits nonzero when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "flbra/errors.hpp"
#include "flbra/fuzzy_engine.hpp"
#include "flbra/link_model.hpp"
#include "flbra/metrics.hpp"
#include "flbra/outputs.hpp"
#include "flbra/protocols.hpp"
#include "flbra/rng.hpp"
#include "flbra/runner.hpp"
#include "flbra/sim_config.hpp"
#include "flbra/topology.hpp"

#include "support/oracles.hpp"

using namespace flbra;
using topology::NetworkGraph;
using topology::NodeId;

namespace {

constexpr double kRuntimeLimitSec = 300.0; // criterion 1
constexpr int kThetaPositiveNeeded = 4;    // criterion 1
constexpr double kHopSlack = 0.05;         // criterion 2
constexpr double kCentroidTol = 1e-4;      // criterion 3
constexpr double kMonotoneSlack = 1e-12;   // criterion 4b
constexpr double kPepTol = 1e-12;          // criterion 6

int failures = 0;

void verdict(int index, bool ok, const std::string& detail) {
    std::printf("[%s] %2d. %s\n", ok ? "PASS" : "FAIL", index, detail.c_str());
    if (!ok)
        ++failures;
}

template <typename Fn>
void criterion(int index, const std::string& name, Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        verdict(index, false, name + ": exception: " + e.what());
    }
}

linkmodel::LinkQuality quality(double rssi, double stddev = 1.0, double per = 0.1) {
    linkmodel::LinkQuality q;
    q.mean_rssi = rssi;
    q.rssi_stddev = stddev;
    q.per = per;
    q.reachable = true;
    return q;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

} // namespace

int main() {
    std::vector<runner::ScenarioResult> run1;
    std::vector<runner::ScenarioResult> run2;
    double runtime_sec = 0.0;

    // --- 1. directional superiority -------------------------------------
    criterion(1, "directional superiority", [&] {
        const config::RunConfig cfg = config::defaults(); // seed 42, 100 iterations
        const auto t0 = std::chrono::steady_clock::now();
        run1 = runner::run_suite(cfg);
        runtime_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                          .count();
        run2 = runner::run_suite(cfg);

        int fm_pos = 0;
        int theta_pos = 0;
        for (const runner::ScenarioResult& r : run1) {
            fm_pos += r.fm > 0.0 ? 1 : 0;
            theta_pos += (r.ci_valid && r.theta1 > 0.0) ? 1 : 0;
        }
        const bool ok = fm_pos == 6 && theta_pos >= kThetaPositiveNeeded &&
                        runtime_sec <= kRuntimeLimitSec;
        std::ostringstream os;
        os << "directional superiority: FM>0 on " << fm_pos << "/6 scenarios, theta1>0 on "
           << theta_pos << "/6 (need >= " << kThetaPositiveNeeded << "), suite run "
           << fmt("%.1f s (limit %.0f s)", runtime_sec, kRuntimeLimitSec);
        verdict(1, ok, os.str());
    });

    // --- 2. hop dominance ------------------------------------------------
    criterion(2, "hop dominance", [&] {
        if (run1.empty())
            throw InternalError("evaluation run unavailable");
        int avg_ok = 0;
        int far_ok = 0;
        double worst_excess = -1e9;
        for (const runner::ScenarioResult& r : run1) {
            const double excess = r.avg_hops_flbra - r.avg_hops_rbf;
            worst_excess = std::max(worst_excess, excess);
            avg_ok += excess <= kHopSlack ? 1 : 0;
            far_ok += r.farthest_flbra <= r.farthest_rbf ? 1 : 0;
        }
        const bool ok = avg_ok == 6 && far_ok == 6;
        std::ostringstream os;
        os << "hop dominance: avg within slack " << kHopSlack << " on " << avg_ok
           << "/6, farthest dominated on " << far_ok << "/6, worst avg excess "
           << fmt("%+.3f", worst_excess);
        verdict(2, ok, os.str());
    });

    // --- 3. fuzzy centroid vs integration oracle -------------------------
    criterion(3, "fuzzy oracle equivalence", [&] {
        const fuzzy::FuzzyEngine engine(fuzzy::FuzzyConfig::defaults());
        const std::size_t oracle_points =
            10 * static_cast<std::size_t>(engine.config().resolution - 1) + 1;
        double max_err = 0.0;
        for (std::uint64_t rep = 0; rep < 1000; ++rep) {
            RngStream rng(4242, 0, rep, StreamPurpose::Synthetic, 3);
            const double rssi = rng.uniform(-90.0, -20.0);
            const double sd = rng.uniform(0.0, 10.0);
            const double per = rng.uniform01();
            const fuzzy::ClippedAggregate agg =
                engine.infer(engine.fuzzify(fuzzy::InputVar::Rssi, rssi),
                             engine.fuzzify(fuzzy::InputVar::StdDev, sd),
                             engine.fuzzify(fuzzy::InputVar::Per, per));
            const double got = engine.defuzzify_centroid(agg);
            const double want =
                test::centroid_oracle(engine.config().cost, agg.clip.data(), oracle_points);
            max_err = std::max(max_err, std::fabs(got - want));
        }
        const bool ok = max_err <= kCentroidTol;
        verdict(3, ok,
                fmt("fuzzy oracle equivalence: max |centroid - oracle| = %.3g over 1000 "
                    "rule firings (tol %.0e)",
                    max_err, kCentroidTol));
    });

    // --- 4. rule-base semantics on the input grid ------------------------
    criterion(4, "rule-base semantics", [&] {
        const fuzzy::FuzzyEngine engine(fuzzy::FuzzyConfig::defaults());
        int high_checked = 0;
        int high_ok = 0;
        bool monotone = true;
        double worst_drop = 0.0;
        for (int i = 0; i <= 20; ++i) {
            const double rssi = -90.0 + 3.5 * i;
            for (int j = 0; j <= 20; ++j) {
                const double sd = 0.5 * j;
                double prev = -1.0;
                for (int k = 0; k <= 20; ++k) {
                    const double per = 0.05 * k;
                    const double cost = engine.link_cost(rssi, sd, per);
                    if (engine.fuzzify(fuzzy::InputVar::Per, per)[2] == 1.0) {
                        ++high_checked;
                        // Cost-High support is (0.6, 1]
                        high_ok += (cost > 0.6 && cost <= 1.0) ? 1 : 0;
                    }
                    if (prev >= 0.0 && cost < prev - kMonotoneSlack) {
                        monotone = false;
                        worst_drop = std::max(worst_drop, prev - cost);
                    }
                    prev = std::max(prev, cost);
                }
            }
        }
        const bool ok = high_checked == 21 * 21 * 15 && high_ok == high_checked && monotone;
        std::ostringstream os;
        os << "rule-base semantics: saturated-PER cost in Cost-High support on " << high_ok
           << "/" << high_checked << " grid points, PER-monotone "
           << (monotone ? "everywhere" : fmt("violated by %.3g", worst_drop))
           << fmt(" (slack %.0e)", kMonotoneSlack);
        verdict(4, ok, os.str());
    });

    // --- 5. dijkstra vs exhaustive enumeration ---------------------------
    criterion(5, "dijkstra oracle equivalence", [&] {
        int graphs = 0;
        int routed = 0;
        int mismatches = 0;
        for (std::uint64_t rep = 0; rep < 200; ++rep) {
            RngStream rng(31337, 0, rep, StreamPurpose::Synthetic, 0);
            const auto n = static_cast<std::size_t>(2 + rng.next_u64() % 7); // 2..8
            const NodeId sink = static_cast<NodeId>(rng.next_u64() % n);
            NetworkGraph g(n, sink);
            for (NodeId i = 0; i < n; ++i)
                g.set_position(i, {double(i), 0.0});
            for (NodeId u = 0; u < n; ++u)
                for (NodeId v = 0; v < n; ++v) {
                    if (u == v || rng.uniform01() < 0.5)
                        continue;
                    g.set_link(u, v, quality(-60.0));
                    g.set_cost(u, v, rng.uniform(0.01, 1.0));
                }
            ++graphs;
            const topology::RoutingTable rt = topology::dijkstra_routes(g);
            for (NodeId v = 0; v < n; ++v) {
                const test::PathOracle want = test::enumerate_best(g, v);
                if (rt.is_routed(v) != want.found) {
                    ++mismatches;
                    continue;
                }
                if (!want.found)
                    continue;
                ++routed;
                const bool same = rt.path_cost[v] == want.cost && rt.hops[v] == want.hops &&
                                  (v == sink || rt.next_hop[v] == want.next);
                mismatches += same ? 0 : 1;
            }
        }
        const bool ok = mismatches == 0 && graphs == 200;
        std::ostringstream os;
        os << "dijkstra oracle equivalence: " << mismatches
           << " mismatches over 200 graphs, " << routed
           << " routed nodes compared exactly";
        verdict(5, ok, os.str());
    });

    // --- 6. end-to-end error probability ---------------------------------
    criterion(6, "PEP properties", [&] {
        const double empty = metrics::pep({});
        const double pair = metrics::pep({0.1, 0.2});
        const bool pair_ok = std::fabs(pair - 0.28) <= kPepTol;
        bool monotone = true;
        for (std::uint64_t rep = 0; rep < 1000 && monotone; ++rep) {
            RngStream rng(606, 0, rep, StreamPurpose::Synthetic, 0);
            const auto len = static_cast<std::size_t>(1 + rng.next_u64() % 20);
            std::vector<double> pers;
            double prev = 0.0;
            for (std::size_t i = 0; i < len; ++i) {
                pers.push_back(rng.uniform01());
                const double cur = metrics::pep(pers);
                if (cur < prev)
                    monotone = false;
                prev = cur;
            }
        }
        const bool ok = empty == 0.0 && pair_ok && monotone;
        std::ostringstream os;
        os << "PEP properties: empty = " << empty << ", pep(0.1, 0.2) = "
           << fmt("%.17g (want 0.28 within %.0e)", pair, kPepTol)
           << ", append-monotone on 1000 sequences: " << (monotone ? "yes" : "NO");
        verdict(6, ok, os.str());
    });

    // --- 7. comparison parameter properties ------------------------------
    criterion(7, "F-parameter properties", [&] {
        bool self_zero = true;
        bool antisym = true;
        bool bounded = true;
        for (std::uint64_t rep = 0; rep < 1000; ++rep) {
            RngStream rng(707, 0, rep, StreamPurpose::Synthetic, 0);
            const auto len = static_cast<std::size_t>(1 + rng.next_u64() % 50);
            std::vector<double> a(len);
            std::vector<double> b(len);
            for (std::size_t i = 0; i < len; ++i) {
                a[i] = rng.uniform01();
                b[i] = rng.uniform01();
            }
            if (metrics::f_parameter(a, a) != 0.0)
                self_zero = false;
            const double fab = metrics::f_parameter(a, b);
            if (fab != -metrics::f_parameter(b, a))
                antisym = false;
            if (std::fabs(fab) > 1.0)
                bounded = false;
        }
        const bool ok = self_zero && antisym && bounded;
        std::ostringstream os;
        os << "F-parameter properties on 1000 pairs: F(a,a)==0 "
           << (self_zero ? "exact" : "VIOLATED") << ", F(a,b)==-F(b,a) "
           << (antisym ? "exact" : "VIOLATED") << ", |F|<=1 "
           << (bounded ? "holds" : "VIOLATED");
        verdict(7, ok, os.str());
    });

    // --- 8. protocol void behavior ---------------------------------------
    criterion(8, "void behavior", [&] {
        const fuzzy::FuzzyEngine engine(fuzzy::FuzzyConfig::defaults());

        // FLBRA never voids when every node has a directed path to the sink.
        int flbra_voids = 0;
        for (std::uint64_t rep = 0; rep < 100; ++rep) {
            RngStream rng(9001, 0, rep, StreamPurpose::Synthetic, 0);
            const auto n = static_cast<std::size_t>(3 + rng.next_u64() % 8); // 3..10
            NetworkGraph g(n, 0);
            for (NodeId i = 0; i < n; ++i)
                g.set_position(i, {double(i), 1.0});
            for (NodeId v = 1; v < n; ++v) { // spanning uplinks: sink always reachable
                const NodeId u = static_cast<NodeId>(rng.next_u64() % v);
                g.set_link(v, u,
                           quality(rng.uniform(-80.0, -40.0), rng.uniform(0.0, 6.0),
                                   rng.uniform(0.0, 0.3)));
            }
            for (NodeId u = 0; u < n; ++u)
                for (NodeId v = 0; v < n; ++v) {
                    if (u == v || g.has_link(u, v) || rng.uniform01() >= 0.3)
                        continue;
                    g.set_link(u, v,
                               quality(rng.uniform(-80.0, -40.0), rng.uniform(0.0, 6.0),
                                       rng.uniform(0.0, 0.3)));
                }
            const protocols::SetupResult setup = protocols::flbra_setup(g, engine);
            for (NodeId v = 1; v < n; ++v) {
                if (!setup.routing_table.is_routed(v) ||
                    !protocols::evaluate_delivery(setup.routing_table.full_path[v], g)
                         .delivered)
                    ++flbra_voids;
            }
        }

        // RBF walks into a local maximum: node 2 hears the sink beacon but
        // its uplink is dead, and node 1 hears nothing at all. FLBRA routes
        // the same network completely via 1 -> 3 -> 0.
        NetworkGraph adv(4, 0);
        for (NodeId i = 0; i < 4; ++i)
            adv.set_position(i, {double(i), 0.0});
        adv.set_link(1, 2, quality(-55.0));
        adv.set_link(2, 1, quality(-55.0));
        adv.set_link(1, 3, quality(-60.0));
        adv.set_link(3, 1, quality(-60.0));
        adv.set_link(3, 0, quality(-58.0));
        adv.set_link(0, 2, quality(-50.0)); // beacon heard only by node 2
        int rbf_voids = 0;
        for (NodeId v = 1; v < 4; ++v)
            rbf_voids += protocols::rbf_route(adv, v).delivered ? 0 : 1;
        int adv_flbra_voids = 0;
        const protocols::SetupResult adv_setup = protocols::flbra_setup(adv, engine);
        for (NodeId v = 1; v < 4; ++v)
            adv_flbra_voids += adv_setup.routing_table.is_routed(v) ? 0 : 1;

        const bool ok = flbra_voids == 0 && rbf_voids >= 1 && adv_flbra_voids == 0;
        std::ostringstream os;
        os << "void behavior: FLBRA voids on 100 connected graphs = " << flbra_voids
           << ", adversarial RBF voids = " << rbf_voids
           << " (need >= 1), FLBRA voids on the same adversarial graph = "
           << adv_flbra_voids;
        verdict(8, ok, os.str());
    });

    // --- 9. operation-phase health check ---------------------------------
    criterion(9, "network check behavior", [&] {
        const fuzzy::FuzzyEngine engine(fuzzy::FuzzyConfig::defaults());

        // (a) zero drift: 100 consecutive checks stay operational and the
        // routing table is bit-for-bit reproducible afterwards.
        const config::RunConfig cfg = config::defaults();
        NetworkGraph g = topology::build_grid(cfg.scenarios[0]);
        topology::populate_links(g, cfg.propagation,
                                 topology::StreamKey{cfg.master_seed, 0, 0});
        const protocols::SetupResult setup = protocols::flbra_setup(g, engine);
        const protocols::ProtocolState state{protocols::Phase::Operational,
                                             setup.routing_table, setup.info};
        int operational = 0;
        for (int i = 0; i < 100; ++i)
            operational += protocols::flbra_network_check(state, g, engine,
                                                          cfg.cost_tolerance) ==
                                   protocols::CheckStatus::Operational
                               ? 1
                               : 0;
        const protocols::SetupResult again = protocols::flbra_setup(g, engine);
        const bool table_stable =
            again.routing_table.next_hop == setup.routing_table.next_hop &&
            again.routing_table.path_cost == setup.routing_table.path_cost &&
            again.routing_table.hops == setup.routing_table.hops;

        // (b) PER spike on the cheap branch of a diamond: the check flags
        // the change and the re-run setup picks the brute-force optimum.
        NetworkGraph dia(4, 0);
        for (NodeId i = 0; i < 4; ++i)
            dia.set_position(i, {double(i), 2.0});
        const linkmodel::LinkQuality good = quality(-40.0, 0.5, 0.0); // crisp cost ~0.147
        const linkmodel::LinkQuality med = quality(-67.5, 4.0, 0.0);  // crisp cost 0.5
        dia.set_link(3, 1, good);
        dia.set_link(1, 0, good);
        dia.set_link(3, 2, med);
        dia.set_link(2, 0, med);
        const protocols::SetupResult before = protocols::flbra_setup(dia, engine);
        const bool pre_via_1 = before.routing_table.next_hop[3] == 1;

        NetworkGraph spiked = dia;
        linkmodel::DriftOffsets spike;
        spike.per = 0.5; // both links of the active path degrade hard
        spiked.set_link(3, 1, linkmodel::drift(good, spike, cfg.propagation.sensitivity_dbm));
        spiked.set_link(1, 0, linkmodel::drift(good, spike, cfg.propagation.sensitivity_dbm));

        const protocols::ProtocolState dia_state{protocols::Phase::Operational,
                                                 before.routing_table, before.info};
        const bool flagged = protocols::flbra_network_check(dia_state, spiked, engine,
                                                            cfg.cost_tolerance) ==
                             protocols::CheckStatus::Faulty;

        const protocols::SetupResult after = protocols::flbra_setup(spiked, engine);
        NetworkGraph with_costs = spiked;
        for (const protocols::KnownLink& kl : after.info.known_links)
            with_costs.set_cost(kl.from, kl.to, kl.cost);
        const test::PathOracle want = test::enumerate_best(with_costs, 3);
        const bool rerouted = after.routing_table.next_hop[3] == 2 &&
                              want.found && want.next == 2 &&
                              after.routing_table.path_cost[3] == want.cost;

        const bool ok = operational == 100 && table_stable && pre_via_1 && flagged &&
                        rerouted;
        std::ostringstream os;
        os << "network check: zero-drift operational " << operational
           << "/100, table stable " << (table_stable ? "yes" : "NO")
           << ", diamond pre-drift via 1 " << (pre_via_1 ? "yes" : "NO")
           << ", spike flagged " << (flagged ? "yes" : "NO") << ", reroute optimal "
           << (rerouted ? "yes" : "NO");
        verdict(9, ok, os.str());
    });

    // --- 10. determinism --------------------------------------------------
    criterion(10, "determinism", [&] {
        if (run1.empty() || run2.empty())
            throw InternalError("evaluation runs unavailable");
        outputs::emit_outputs("acceptance_out/run1", run1);
        outputs::emit_outputs("acceptance_out/run2", run2);
        auto read = [](const std::string& p) {
            std::string content;
            FILE* f = std::fopen(p.c_str(), "rb");
            if (!f)
                throw IoError("cannot reopen " + p);
            char buf[4096];
            std::size_t got;
            while ((got = std::fread(buf, 1, sizeof(buf), f)) > 0)
                content.append(buf, got);
            std::fclose(f);
            return content;
        };
        const bool summary_same =
            read("acceptance_out/run1/summary.csv") == read("acceptance_out/run2/summary.csv");
        const bool iters_same = read("acceptance_out/run1/iterations.csv") ==
                                read("acceptance_out/run2/iterations.csv");
        const bool ok = summary_same && iters_same;
        std::ostringstream os;
        os << "determinism: identical seed and config give byte-identical summary.csv ("
           << (summary_same ? "yes" : "NO") << ") and iterations.csv ("
           << (iters_same ? "yes" : "NO") << ")";
        verdict(10, ok, os.str());
    });

    if (failures == 0)
        std::printf("acceptance: all 10 criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}

// SPDX-License-Identifier: Apache-2.0
#include "flbra/runner.hpp"

#include <string>

#include "flbra/errors.hpp"
#include "flbra/rng.hpp"

namespace flbra::runner {

namespace {

using protocols::DeliveryOutcome;

DeliveryOutcome void_outcome(NodeId source) {
    DeliveryOutcome o;
    o.source = source;
    o.delivered = false;
    o.hops = 0;
    o.end_to_end_success = 0.0;
    return o;
}

// Replaces the analytic success rate with a Bernoulli estimate when the
// cross-validation mode is on. Element ids keep the two protocols' streams
// disjoint per node.
double mc_success(const DeliveryOutcome& o, const topology::NetworkGraph& g,
                  const config::RunConfig& cfg, std::uint64_t scenario_index,
                  std::uint64_t iteration, std::uint64_t element) {
    if (!o.delivered)
        return 0.0;
    RngStream rng(cfg.master_seed, scenario_index, iteration, StreamPurpose::Delivery,
                  element);
    return protocols::monte_carlo_success(o.path, g, rng, cfg.monte_carlo.packets);
}

} // namespace

IterationRecord run_iteration(const topology::Scenario& s, const config::RunConfig& cfg,
                              const fuzzy::FuzzyEngine& engine,
                              std::uint64_t scenario_index, std::uint64_t iteration,
                              const protocols::TraceFn& trace) {
    topology::NetworkGraph g = topology::build_grid(s);
    topology::populate_links(g, cfg.propagation,
                             topology::StreamKey{cfg.master_seed, scenario_index, iteration});

    // Both protocols must observe the identical network.
    const std::uint64_t fingerprint = g.checksum();

    protocols::SetupResult setup;
    try {
        setup = protocols::flbra_setup(g, engine, cfg.round_budget, trace);
    } catch (const protocols::SetupIncompleteError& e) {
        throw protocols::SetupIncompleteError(
            "scenario " + s.name + " iteration " + std::to_string(iteration) + ": " +
                e.what(),
            e.partial());
    }
    if (g.checksum() != fingerprint)
        throw InternalError("runner: setup mutated the sampled graph");

    const std::size_t n = g.size();
    const NodeId sink = g.sink();
    std::vector<DeliveryOutcome> flbra_outcomes;
    std::vector<DeliveryOutcome> rbf_outcomes;
    flbra_outcomes.reserve(n - 1);
    rbf_outcomes.reserve(n - 1);

    for (NodeId v = 0; v < n; ++v) {
        if (v == sink)
            continue;
        if (setup.routing_table.is_routed(v))
            flbra_outcomes.push_back(
                protocols::evaluate_delivery(setup.routing_table.full_path[v], g));
        else
            flbra_outcomes.push_back(void_outcome(v));
    }
    if (g.checksum() != fingerprint)
        throw InternalError("runner: delivery evaluation mutated the sampled graph");

    for (NodeId v = 0; v < n; ++v) {
        if (v == sink)
            continue;
        rbf_outcomes.push_back(protocols::rbf_route(g, v));
    }
    if (g.checksum() != fingerprint)
        throw InternalError("runner: rbf mutated the sampled graph");

    IterationRecord rec;
    rec.iteration = iteration;
    rec.setup_rounds = setup.rounds;
    rec.nodes.reserve(flbra_outcomes.size());

    std::vector<double> s_flbra(flbra_outcomes.size());
    std::vector<double> s_rbf(rbf_outcomes.size());
    for (std::size_t i = 0; i < flbra_outcomes.size(); ++i) {
        const DeliveryOutcome& fo = flbra_outcomes[i];
        const DeliveryOutcome& ro = rbf_outcomes[i];
        NodeRecord nr;
        nr.node = fo.source;
        if (cfg.monte_carlo.enabled) {
            nr.s_flbra = mc_success(fo, g, cfg, scenario_index, iteration,
                                    2ull * fo.source);
            nr.s_rbf = mc_success(ro, g, cfg, scenario_index, iteration,
                                  2ull * ro.source + 1);
        } else {
            nr.s_flbra = metrics::success_rate(fo);
            nr.s_rbf = metrics::success_rate(ro);
        }
        nr.flbra_delivered = fo.delivered;
        nr.rbf_delivered = ro.delivered;
        nr.flbra_hops = fo.hops;
        nr.rbf_hops = ro.hops;
        s_flbra[i] = nr.s_flbra;
        s_rbf[i] = nr.s_rbf;
        rec.nodes.push_back(nr);
    }

    rec.f = metrics::f_parameter(s_flbra, s_rbf);
    rec.flbra = metrics::hop_stats(flbra_outcomes);
    rec.rbf = metrics::hop_stats(rbf_outcomes);
    return rec;
}

std::vector<ScenarioResult> run_suite(const config::RunConfig& cfg,
                                      const TraceFactory& traces) {
    std::vector<std::size_t> all(cfg.scenarios.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = i;
    return run_suite(cfg, all, traces);
}

std::vector<ScenarioResult> run_suite(const config::RunConfig& cfg,
                                      const std::vector<std::size_t>& scenario_indices,
                                      const TraceFactory& traces) {
    config::validate(cfg);
    if (scenario_indices.empty())
        throw InputError("run_suite: no scenarios selected");
    for (std::size_t si : scenario_indices)
        if (si >= cfg.scenarios.size())
            throw InputError("run_suite: scenario index out of range");
    const fuzzy::FuzzyEngine engine(cfg.fuzzy);

    std::vector<ScenarioResult> results;
    results.reserve(scenario_indices.size());
    for (std::size_t si : scenario_indices) {
        const topology::Scenario& s = cfg.scenarios[si];
        protocols::TraceFn scenario_trace;
        if (traces)
            scenario_trace = traces(s.name);

        ScenarioResult res;
        res.scenario = s;
        res.iterations.reserve(static_cast<std::size_t>(cfg.iterations));

        std::vector<double> fs;
        fs.reserve(static_cast<std::size_t>(cfg.iterations));
        double hops_flbra = 0.0, hops_rbf = 0.0;
        std::size_t delivered_flbra = 0, delivered_rbf = 0;
        double far_flbra = 0.0, far_rbf = 0.0;

        for (int it = 0; it < cfg.iterations; ++it) {
            protocols::TraceFn iter_trace;
            if (scenario_trace) {
                const std::string prefix = "iter=" + std::to_string(it) + " ";
                iter_trace = [prefix, &scenario_trace](const std::string& line) {
                    scenario_trace(prefix + line);
                };
            }
            IterationRecord rec = run_iteration(s, cfg, engine, si,
                                                static_cast<std::uint64_t>(it),
                                                iter_trace);
            fs.push_back(rec.f);
            for (const NodeRecord& nr : rec.nodes) {
                if (nr.flbra_delivered) {
                    hops_flbra += nr.flbra_hops;
                    ++delivered_flbra;
                }
                if (nr.rbf_delivered) {
                    hops_rbf += nr.rbf_hops;
                    ++delivered_rbf;
                }
            }
            far_flbra += rec.flbra.farthest;
            far_rbf += rec.rbf.farthest;
            res.voids_flbra += rec.flbra.voids;
            res.voids_rbf += rec.rbf.voids;
            res.iterations.push_back(std::move(rec));
        }

        if (fs.size() >= 2) {
            const metrics::ConfidenceInterval ci = metrics::confidence_interval(fs);
            res.fm = ci.mean;
            res.theta1 = ci.theta1;
            res.theta2 = ci.theta2;
            res.ci_valid = true;
        } else {
            res.fm = fs[0];
            res.ci_valid = false;
        }
        res.avg_hops_flbra =
            delivered_flbra ? hops_flbra / static_cast<double>(delivered_flbra) : 0.0;
        res.avg_hops_rbf =
            delivered_rbf ? hops_rbf / static_cast<double>(delivered_rbf) : 0.0;
        const auto iters = static_cast<double>(res.iterations.size());
        res.farthest_flbra = far_flbra / iters;
        res.farthest_rbf = far_rbf / iters;
        results.push_back(std::move(res));
    }
    return results;
}

} // namespace flbra::runner

// SPDX-License-Identifier: Apache-2.0
//
// flbra-sim: command line front end of the simulator.
//
//   run              full comparative evaluation, CSV outputs
//   drift            one drifted network through the health check
//   dump-graph       one sampled network as an edge list
//   validate-config  parse + semantic checks, echo the effective settings

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "flbra/errors.hpp"
#include "flbra/outputs.hpp"
#include "flbra/protocols.hpp"
#include "flbra/rng.hpp"
#include "flbra/runner.hpp"
#include "flbra/sim_config.hpp"

namespace {

using namespace flbra;

struct CommonOpts {
    std::string config_path;
    std::int64_t seed = -1; // -1 = keep the config's seed
    std::string scenario;   // empty = no filter / first scenario
};

config::RunConfig load_config(const CommonOpts& o) {
    config::RunConfig cfg =
        o.config_path.empty() ? config::defaults() : config::load_file(o.config_path);
    if (o.seed >= 0)
        cfg.master_seed = static_cast<std::uint64_t>(o.seed);
    return cfg;
}

// Position of the named scenario in the config list; empty name = index 0.
std::size_t scenario_index(const config::RunConfig& cfg, const std::string& name) {
    if (name.empty())
        return 0;
    for (std::size_t i = 0; i < cfg.scenarios.size(); ++i)
        if (cfg.scenarios[i].name == name)
            return i;
    throw InputError("unknown scenario \"" + name + "\"");
}

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON config file (default: built-ins)");
    cmd->add_option("--seed", o.seed, "override the master seed");
}

topology::NetworkGraph sampled_graph(const config::RunConfig& cfg, std::size_t si,
                                     std::uint64_t iteration) {
    topology::NetworkGraph g = topology::build_grid(cfg.scenarios[si]);
    topology::populate_links(g, cfg.propagation,
                             topology::StreamKey{cfg.master_seed, si, iteration});
    return g;
}

int cmd_run(const CommonOpts& common, const std::vector<std::string>& only,
            int iterations_override, const std::string& out_override, bool trace,
            bool monte_carlo) {
    config::RunConfig cfg = load_config(common);
    if (iterations_override > 0)
        cfg.iterations = iterations_override;
    if (!out_override.empty())
        cfg.out_dir = out_override;
    if (trace)
        cfg.trace = true;
    if (monte_carlo)
        cfg.monte_carlo.enabled = true;

    std::vector<std::size_t> indices;
    if (only.empty()) {
        for (std::size_t i = 0; i < cfg.scenarios.size(); ++i)
            indices.push_back(i);
    } else {
        for (const std::string& name : only)
            indices.push_back(scenario_index(cfg, name));
    }

    runner::TraceFactory traces;
    if (cfg.trace) {
        std::filesystem::create_directories(cfg.out_dir);
        const std::string dir = cfg.out_dir;
        traces = [dir](const std::string& name) -> protocols::TraceFn {
            auto f = std::make_shared<std::ofstream>(dir + "/trace_" + name + ".log",
                                                     std::ios::trunc);
            if (!*f)
                throw IoError("cannot open trace file for scenario " + name);
            return [f](const std::string& line) { *f << line << '\n'; };
        };
    }

    const std::vector<runner::ScenarioResult> results =
        runner::run_suite(cfg, indices, traces);

    std::printf("%-10s %6s %9s %22s %13s %14s %9s\n", "scenario", "nodes", "F",
                "95% CI", "hops F/R", "farthest F/R", "voids F/R");
    for (const runner::ScenarioResult& r : results) {
        char ci[32];
        if (r.ci_valid)
            std::snprintf(ci, sizeof(ci), "[%+.4f, %+.4f]", r.theta1, r.theta2);
        else
            std::snprintf(ci, sizeof(ci), "[n/a]");
        std::printf("%-10s %6d %+9.4f %22s %6.2f/%-6.2f %6.1f/%-6.1f %4zu/%-4zu\n",
                    r.scenario.name.c_str(), r.scenario.node_count, r.fm, ci,
                    r.avg_hops_flbra, r.avg_hops_rbf, r.farthest_flbra, r.farthest_rbf,
                    r.voids_flbra, r.voids_rbf);
    }

    outputs::emit_outputs(cfg.out_dir, results);
    std::printf("wrote %s/summary.csv and %s/iterations.csv\n", cfg.out_dir.c_str(),
                cfg.out_dir.c_str());
    return 0;
}

int cmd_drift(const CommonOpts& common, const std::string& out_override) {
    config::RunConfig cfg = load_config(common);
    config::validate(cfg);
    if (!out_override.empty())
        cfg.out_dir = out_override;
    const std::size_t si = scenario_index(cfg, common.scenario);
    const fuzzy::FuzzyEngine engine(cfg.fuzzy);

    const topology::NetworkGraph g = sampled_graph(cfg, si, 0);
    const protocols::SetupResult setup =
        protocols::flbra_setup(g, engine, cfg.round_budget);
    const protocols::ProtocolState state{protocols::Phase::Operational,
                                         setup.routing_table, setup.info};

    // Every sampled link drifts by its own uniform offsets; the stream is
    // keyed by the directed pair, so the drawing order is irrelevant.
    topology::NetworkGraph drifted = g;
    const std::size_t n = g.size();
    std::string csv = "src,dst,rssi_before,rssi_after,stddev_before,stddev_after,"
                      "per_before,per_after,reachable_before,reachable_after\n";
    for (topology::NodeId u = 0; u < n; ++u) {
        for (topology::NodeId v = 0; v < n; ++v) {
            if (u == v || !g.has_link(u, v))
                continue;
            RngStream rng(cfg.master_seed, si, 0, StreamPurpose::Drift,
                          static_cast<std::uint64_t>(u) * n + v);
            linkmodel::DriftOffsets off;
            off.rssi_db = (2.0 * rng.uniform01() - 1.0) * cfg.drift.rssi_delta_db;
            off.stddev_db = (2.0 * rng.uniform01() - 1.0) * cfg.drift.stddev_delta_db;
            off.per = (2.0 * rng.uniform01() - 1.0) * cfg.drift.per_delta;
            const linkmodel::LinkQuality& before = g.link(u, v);
            const linkmodel::LinkQuality after =
                linkmodel::drift(before, off, cfg.propagation.sensitivity_dbm);
            drifted.set_link(u, v, after);
            csv += std::to_string(u) + ',' + std::to_string(v) + ',' +
                   outputs::format_double(before.mean_rssi) + ',' +
                   outputs::format_double(after.mean_rssi) + ',' +
                   outputs::format_double(before.rssi_stddev) + ',' +
                   outputs::format_double(after.rssi_stddev) + ',' +
                   outputs::format_double(before.per) + ',' +
                   outputs::format_double(after.per) + ',' +
                   (before.reachable ? "1" : "0") + ',' + (after.reachable ? "1" : "0") +
                   '\n';
        }
    }

    const protocols::TraceFn echo = [](const std::string& line) {
        std::printf("%s\n", line.c_str());
    };
    const protocols::CheckStatus status =
        protocols::flbra_network_check(state, drifted, engine, cfg.cost_tolerance, echo);

    if (status == protocols::CheckStatus::Faulty) {
        const protocols::SetupResult redo =
            protocols::flbra_setup(drifted, engine, cfg.round_budget);
        std::size_t routed = 0;
        for (topology::NodeId v = 0; v < n; ++v)
            if (v != g.sink() && redo.routing_table.is_routed(v))
                ++routed;
        std::printf("re-setup: rounds=%u routed=%zu\n", redo.rounds, routed);
    } else {
        std::printf("network unchanged within tolerance %g\n", cfg.cost_tolerance);
    }

    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + cfg.out_dir + ": " +
                      ec.message());
    outputs::write_file(cfg.out_dir + "/drift.csv", csv);
    std::printf("wrote %s/drift.csv\n", cfg.out_dir.c_str());
    return 0;
}

int cmd_dump_graph(const CommonOpts& common, std::uint64_t iteration,
                   const std::string& out_file) {
    config::RunConfig cfg = load_config(common);
    config::validate(cfg);
    const std::size_t si = scenario_index(cfg, common.scenario);
    const fuzzy::FuzzyEngine engine(cfg.fuzzy);

    topology::NetworkGraph g = sampled_graph(cfg, si, iteration);
    const protocols::SetupResult setup =
        protocols::flbra_setup(g, engine, cfg.round_budget);
    for (const protocols::KnownLink& kl : setup.info.known_links)
        g.set_cost(kl.from, kl.to, kl.cost);

    const std::string csv = outputs::edge_list_csv(g);
    if (out_file.empty())
        std::fputs(csv.c_str(), stdout);
    else
        outputs::write_file(out_file, csv);
    return 0;
}

int cmd_validate(const std::string& path) {
    const config::RunConfig cfg = config::load_file(path);
    config::validate(cfg);
    std::fputs(config::describe(cfg).c_str(), stdout);
    std::printf("config ok\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic indoor sensor network routing simulator: fuzzy "
                 "link-cost routing (FLBRA) vs greedy beacon following (RBF)"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    std::vector<std::string> run_only;
    int run_iterations = 0;
    std::string run_out;
    bool run_trace = false;
    bool run_mc = false;
    CLI::App* run = app.add_subcommand("run", "run the comparative evaluation");
    add_common(run, run_opts);
    run->add_option("--scenario", run_only,
                    "run only the named scenario(s), keeping their config positions");
    run->add_option("--iterations", run_iterations, "override the iteration count");
    run->add_option("--out", run_out, "override the output directory");
    run->add_flag("--trace", run_trace, "write per-scenario protocol traces");
    run->add_flag("--monte-carlo-delivery", run_mc,
                  "estimate delivery success by packet simulation");

    CommonOpts drift_opts;
    std::string drift_out;
    CLI::App* drift = app.add_subcommand("drift", "drift one network, run the check");
    add_common(drift, drift_opts);
    drift->add_option("--scenario", drift_opts.scenario,
                      "scenario name (default: first in the config)");
    drift->add_option("--out", drift_out, "override the output directory");

    CommonOpts dump_opts;
    std::uint64_t dump_iteration = 0;
    std::string dump_out;
    CLI::App* dump = app.add_subcommand("dump-graph", "export one sampled network");
    add_common(dump, dump_opts);
    dump->add_option("--scenario", dump_opts.scenario,
                     "scenario name (default: first in the config)");
    dump->add_option("--iteration", dump_iteration, "iteration index (default 0)");
    dump->add_option("--out", dump_out, "output file (default: stdout)");

    std::string validate_path;
    CLI::App* validate =
        app.add_subcommand("validate-config", "check a config file and echo it");
    validate->add_option("--config", validate_path, "JSON config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(run_opts, run_only, run_iterations, run_out, run_trace,
                           run_mc);
        if (drift->parsed())
            return cmd_drift(drift_opts, drift_out);
        if (dump->parsed())
            return cmd_dump_graph(dump_opts, dump_iteration, dump_out);
        if (validate->parsed())
            return cmd_validate(validate_path);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

// SPDX-License-Identifier: Apache-2.0
#include "flbra/outputs.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "flbra/errors.hpp"

namespace flbra::outputs {

std::string format_double(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string summary_csv(const std::vector<runner::ScenarioResult>& results) {
    std::string out = "name,fm,theta1,theta2,avg_hops_flbra,avg_hops_rbf,"
                      "farthest_flbra,farthest_rbf,void_count_rbf\n";
    for (const runner::ScenarioResult& r : results) {
        out += r.scenario.name;
        out += ',';
        out += format_double(r.fm);
        out += ',';
        out += r.ci_valid ? format_double(r.theta1) : "n/a";
        out += ',';
        out += r.ci_valid ? format_double(r.theta2) : "n/a";
        out += ',';
        out += format_double(r.avg_hops_flbra);
        out += ',';
        out += format_double(r.avg_hops_rbf);
        out += ',';
        out += format_double(r.farthest_flbra);
        out += ',';
        out += format_double(r.farthest_rbf);
        out += ',';
        out += std::to_string(r.voids_rbf);
        out += '\n';
    }
    return out;
}

std::string iterations_csv(const std::vector<runner::ScenarioResult>& results) {
    std::string out = "scenario,iteration,f,avg_hops_flbra,avg_hops_rbf,"
                      "farthest_hops_flbra,farthest_hops_rbf,voids_flbra,voids_rbf,"
                      "setup_rounds\n";
    for (const runner::ScenarioResult& r : results) {
        for (const runner::IterationRecord& it : r.iterations) {
            out += r.scenario.name;
            out += ',';
            out += std::to_string(it.iteration);
            out += ',';
            out += format_double(it.f);
            out += ',';
            out += format_double(it.flbra.avg);
            out += ',';
            out += format_double(it.rbf.avg);
            out += ',';
            out += std::to_string(it.flbra.farthest);
            out += ',';
            out += std::to_string(it.rbf.farthest);
            out += ',';
            out += std::to_string(it.flbra.voids);
            out += ',';
            out += std::to_string(it.rbf.voids);
            out += ',';
            out += std::to_string(it.setup_rounds);
            out += '\n';
        }
    }
    return out;
}

std::string edge_list_csv(const topology::NetworkGraph& g) {
    std::string out = "src,dst,mean_rssi,stddev,per,cost\n";
    const std::size_t n = g.size();
    for (topology::NodeId u = 0; u < n; ++u) {
        for (topology::NodeId v : g.neighbors_out(u)) {
            const linkmodel::LinkQuality& q = g.link(u, v);
            out += std::to_string(u);
            out += ',';
            out += std::to_string(v);
            out += ',';
            out += format_double(q.mean_rssi);
            out += ',';
            out += format_double(q.rssi_stddev);
            out += ',';
            out += format_double(q.per);
            out += ',';
            if (g.has_cost(u, v))
                out += format_double(g.cost(u, v));
            out += '\n';
        }
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoError("cannot open for writing: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f)
        throw IoError("short write: " + path);
}

void emit_outputs(const std::string& out_dir,
                  const std::vector<runner::ScenarioResult>& results) {
    if (results.empty())
        throw InputError("emit_outputs: no scenario results to write");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + out_dir + ": " + ec.message());
    write_file(out_dir + "/summary.csv", summary_csv(results));
    write_file(out_dir + "/iterations.csv", iterations_csv(results));
}

} // namespace flbra::outputs

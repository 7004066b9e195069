// SPDX-License-Identifier: Apache-2.0
#include "flbra/sim_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "flbra/errors.hpp"

namespace flbra::config {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok)
            throw ConfigError("config: unknown key \"" + it.key() + "\" in " + where);
    }
}

double as_number(const json& v, const std::string& where) {
    if (!v.is_number())
        throw ConfigError("config: " + where + " must be a number");
    return v.get<double>();
}

void read_num(const json& obj, const char* key, double& out, const std::string& where) {
    if (obj.contains(key))
        out = as_number(obj.at(key), where + "." + key);
}

void read_int(const json& obj, const char* key, int& out, const std::string& where) {
    if (!obj.contains(key))
        return;
    const json& v = obj.at(key);
    if (!v.is_number_integer() && !v.is_number_unsigned())
        throw ConfigError("config: " + where + "." + key + " must be an integer");
    out = v.get<int>();
}

void read_bool(const json& obj, const char* key, bool& out, const std::string& where) {
    if (!obj.contains(key))
        return;
    const json& v = obj.at(key);
    if (!v.is_boolean())
        throw ConfigError("config: " + where + "." + key + " must be a boolean");
    out = v.get<bool>();
}

// A set is either a trapezoid [a,b,c,d] or explicit [[x, degree], ...].
fuzzy::MembershipFunction parse_set(const std::string& label, const json& v,
                                    const std::string& where) {
    if (!v.is_array() || v.empty())
        throw ConfigError("config: " + where + " must be a nonempty array");
    if (v[0].is_number()) {
        if (v.size() != 4)
            throw ConfigError("config: trapezoid " + where + " needs [a,b,c,d]");
        return fuzzy::MembershipFunction::trapezoid(
            label, as_number(v[0], where), as_number(v[1], where),
            as_number(v[2], where), as_number(v[3], where));
    }
    std::vector<fuzzy::Breakpoint> pts;
    for (const json& bp : v) {
        if (!bp.is_array() || bp.size() != 2)
            throw ConfigError("config: breakpoints in " + where +
                              " must be [x, degree] pairs");
        pts.push_back({as_number(bp[0], where), as_number(bp[1], where)});
    }
    return fuzzy::MembershipFunction(label, std::move(pts));
}

fuzzy::FuzzyVariable parse_variable(const std::string& name, const json& obj,
                                    std::initializer_list<const char*> labels,
                                    const std::string& where) {
    if (!obj.is_object())
        throw ConfigError("config: " + where + " must be an object");
    std::vector<const char*> known{"universe"};
    known.insert(known.end(), labels.begin(), labels.end());
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k)
                ok = true;
        if (!ok)
            throw ConfigError("config: unknown key \"" + it.key() + "\" in " + where);
    }
    if (!obj.contains("universe") || !obj.at("universe").is_array() ||
        obj.at("universe").size() != 2)
        throw ConfigError("config: " + where + ".universe must be [lo, hi]");
    const double lo = as_number(obj.at("universe")[0], where + ".universe");
    const double hi = as_number(obj.at("universe")[1], where + ".universe");

    std::vector<fuzzy::MembershipFunction> sets;
    for (const char* label : labels) {
        if (!obj.contains(label))
            throw ConfigError("config: " + where + " is missing set \"" + label + "\"");
        sets.push_back(parse_set(label, obj.at(label), where + "." + label));
    }
    return fuzzy::FuzzyVariable(name, lo, hi, std::move(sets));
}

fuzzy::FuzzyConfig parse_fuzzy(const json& obj, fuzzy::FuzzyConfig base) {
    reject_unknown(obj, {"resolution", "rssi", "stddev", "per", "cost"}, "fuzzy");
    if (obj.contains("resolution")) {
        int res = base.resolution;
        read_int(obj, "resolution", res, "fuzzy");
        base.resolution = res;
    }
    if (obj.contains("rssi"))
        base.rssi = parse_variable("RSSI", obj.at("rssi"),
                                   {"Weak", "Average", "Strong"}, "fuzzy.rssi");
    if (obj.contains("stddev"))
        base.stddev = parse_variable("StdDev", obj.at("stddev"),
                                     {"Good", "Average", "Bad"}, "fuzzy.stddev");
    if (obj.contains("per"))
        base.per = parse_variable("PER", obj.at("per"), {"Low", "Medium", "High"},
                                  "fuzzy.per");
    if (obj.contains("cost"))
        base.cost = parse_variable("Cost", obj.at("cost"), {"Low", "Medium", "High"},
                                   "fuzzy.cost");
    return base;
}

std::vector<topology::Scenario> parse_scenarios(const json& arr) {
    if (!arr.is_array() || arr.empty())
        throw ConfigError("config: scenarios must be a nonempty array");
    std::vector<topology::Scenario> out;
    for (const json& s : arr) {
        if (!s.is_object())
            throw ConfigError("config: each scenario must be an object");
        reject_unknown(s, {"name", "node_count", "area_m2", "spacing_m"}, "scenario");
        topology::Scenario sc;
        if (!s.contains("name") || !s.at("name").is_string())
            throw ConfigError("config: scenario.name must be a string");
        sc.name = s.at("name").get<std::string>();
        read_int(s, "node_count", sc.node_count, "scenario " + sc.name);
        read_num(s, "area_m2", sc.area_m2, "scenario " + sc.name);
        read_num(s, "spacing_m", sc.spacing_m, "scenario " + sc.name);
        out.push_back(std::move(sc));
    }
    return out;
}

linkmodel::PropagationParams parse_propagation(const json& obj,
                                               linkmodel::PropagationParams base) {
    reject_unknown(obj,
                   {"ref_rssi_dbm", "ref_distance_m", "path_loss_exponent",
                    "shadow_sigma_db", "sensitivity_dbm", "samples_per_link",
                    "per_min", "per_max"},
                   "propagation");
    read_num(obj, "ref_rssi_dbm", base.ref_rssi_dbm, "propagation");
    read_num(obj, "ref_distance_m", base.ref_distance_m, "propagation");
    read_num(obj, "path_loss_exponent", base.path_loss_exponent, "propagation");
    read_num(obj, "shadow_sigma_db", base.shadow_sigma_db, "propagation");
    read_num(obj, "sensitivity_dbm", base.sensitivity_dbm, "propagation");
    read_int(obj, "samples_per_link", base.samples_per_link, "propagation");
    read_num(obj, "per_min", base.per_min, "propagation");
    read_num(obj, "per_max", base.per_max, "propagation");
    return base;
}

} // namespace

RunConfig defaults() {
    RunConfig cfg;
    cfg.scenarios = topology::stock_scenarios();
    return cfg;
}

RunConfig parse_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!root.is_object())
        throw ConfigError("config: top level must be a JSON object");
    reject_unknown(root,
                   {"scenarios", "iterations", "master_seed", "propagation", "fuzzy",
                    "round_budget", "cost_tolerance", "check_interval", "drift",
                    "out_dir", "trace", "monte_carlo"},
                   "top level");

    RunConfig cfg = defaults();
    if (root.contains("scenarios"))
        cfg.scenarios = parse_scenarios(root.at("scenarios"));
    read_int(root, "iterations", cfg.iterations, "top level");
    if (root.contains("master_seed")) {
        const json& v = root.at("master_seed");
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
            throw ConfigError("config: master_seed must be a nonnegative integer");
        cfg.master_seed = v.get<std::uint64_t>();
    }
    if (root.contains("propagation"))
        cfg.propagation = parse_propagation(root.at("propagation"), cfg.propagation);
    if (root.contains("fuzzy"))
        cfg.fuzzy = parse_fuzzy(root.at("fuzzy"), cfg.fuzzy);
    if (root.contains("round_budget")) {
        int b = 0;
        read_int(root, "round_budget", b, "top level");
        if (b < 0)
            throw ConfigError("config: round_budget must be >= 0");
        cfg.round_budget = static_cast<std::uint32_t>(b);
    }
    read_num(root, "cost_tolerance", cfg.cost_tolerance, "top level");
    read_int(root, "check_interval", cfg.check_interval, "top level");
    if (root.contains("drift")) {
        const json& d = root.at("drift");
        reject_unknown(d, {"rssi_delta_db", "stddev_delta_db", "per_delta"}, "drift");
        read_num(d, "rssi_delta_db", cfg.drift.rssi_delta_db, "drift");
        read_num(d, "stddev_delta_db", cfg.drift.stddev_delta_db, "drift");
        read_num(d, "per_delta", cfg.drift.per_delta, "drift");
    }
    if (root.contains("out_dir")) {
        if (!root.at("out_dir").is_string())
            throw ConfigError("config: out_dir must be a string");
        cfg.out_dir = root.at("out_dir").get<std::string>();
    }
    read_bool(root, "trace", cfg.trace, "top level");
    if (root.contains("monte_carlo")) {
        const json& m = root.at("monte_carlo");
        reject_unknown(m, {"enabled", "packets"}, "monte_carlo");
        read_bool(m, "enabled", cfg.monte_carlo.enabled, "monte_carlo");
        read_int(m, "packets", cfg.monte_carlo.packets, "monte_carlo");
    }
    return cfg;
}

RunConfig load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("config: cannot read \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

void validate(const RunConfig& cfg) {
    if (cfg.scenarios.empty())
        throw ConfigError("config: scenario list is empty");
    if (cfg.iterations < 1)
        throw ConfigError("config: iterations must be >= 1");
    if (!(cfg.cost_tolerance >= 0.0) || !std::isfinite(cfg.cost_tolerance))
        throw ConfigError("config: cost_tolerance must be >= 0");
    if (cfg.check_interval < 1)
        throw ConfigError("config: check_interval must be >= 1");
    if (!(cfg.drift.rssi_delta_db >= 0.0) || !(cfg.drift.stddev_delta_db >= 0.0) ||
        !(cfg.drift.per_delta >= 0.0))
        throw ConfigError("config: drift deltas must be >= 0");
    if (cfg.monte_carlo.packets < 1)
        throw ConfigError("config: monte_carlo.packets must be >= 1");
    if (cfg.out_dir.empty())
        throw ConfigError("config: out_dir must not be empty");
    linkmodel::validate(cfg.propagation);
    for (const auto& s : cfg.scenarios)
        (void)topology::build_grid(s); // grid feasibility, throws ScenarioError
    (void)fuzzy::FuzzyEngine(cfg.fuzzy); // shape constraints
}

std::string describe(const RunConfig& cfg) {
    std::ostringstream os;
    os << "scenarios: " << cfg.scenarios.size() << " (";
    for (std::size_t i = 0; i < cfg.scenarios.size(); ++i)
        os << (i ? ", " : "") << cfg.scenarios[i].name;
    os << ")\n";
    os << "iterations: " << cfg.iterations << "\n";
    os << "master_seed: " << cfg.master_seed << "\n";
    os << "propagation: ref " << cfg.propagation.ref_rssi_dbm << " dBm @ "
       << cfg.propagation.ref_distance_m << " m, exponent "
       << cfg.propagation.path_loss_exponent << ", shadow sigma "
       << cfg.propagation.shadow_sigma_db << " dB, sensitivity "
       << cfg.propagation.sensitivity_dbm << " dBm, " << cfg.propagation.samples_per_link
       << " samples/link, PER [" << cfg.propagation.per_min << ", "
       << cfg.propagation.per_max << "]\n";
    os << "fuzzy resolution: " << cfg.fuzzy.resolution << "\n";
    os << "round_budget: " << cfg.round_budget << " (0 = node count)\n";
    os << "cost_tolerance: " << cfg.cost_tolerance << "\n";
    os << "check_interval: " << cfg.check_interval << "\n";
    os << "drift: rssi +/-" << cfg.drift.rssi_delta_db << " dB, stddev +/-"
       << cfg.drift.stddev_delta_db << " dB, per +/-" << cfg.drift.per_delta << "\n";
    os << "monte_carlo: " << (cfg.monte_carlo.enabled ? "on" : "off") << ", "
       << cfg.monte_carlo.packets << " packets\n";
    os << "out_dir: " << cfg.out_dir << "\n";
    os << "trace: " << (cfg.trace ? "on" : "off") << "\n";
    return os.str();
}

} // namespace flbra::config

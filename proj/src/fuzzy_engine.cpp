// SPDX-License-Identifier: Apache-2.0

#include "flbra/fuzzy_engine.hpp"

#include "flbra/errors.hpp"
#include "flbra/simd_kernels.hpp"

#include <algorithm>
#include <cmath>

namespace flbra::fuzzy {

namespace {

constexpr int kWeak = 0, kAvgRssi = 1, kStrong = 2;
constexpr int kGood = 0, kAvgSd = 1, kBad = 2;
constexpr int kLowPer = 0, kMedPer = 1, kHighPer = 2;
constexpr int kLowCost = 0, kMedCost = 1, kHighCost = 2;

std::vector<FuzzyRule> build_rule_base() {
    using V = InputVar;
    std::vector<FuzzyRule> rules;
    rules.push_back({{{V::Per, kHighPer}}, kHighCost});
    rules.push_back({{{V::Per, kMedPer}}, kHighCost});
    const struct {
        int rssi, sd, cost;
    } low_per_rows[] = {
        {kWeak, kBad, kHighCost},    {kWeak, kAvgSd, kMedCost},   {kWeak, kGood, kLowCost},
        {kAvgRssi, kBad, kHighCost}, {kAvgRssi, kAvgSd, kMedCost}, {kAvgRssi, kGood, kLowCost},
        {kStrong, kBad, kHighCost},  {kStrong, kAvgSd, kLowCost},  {kStrong, kGood, kLowCost},
    };
    for (const auto& row : low_per_rows) {
        rules.push_back({{{V::Per, kLowPer}, {V::Rssi, row.rssi}, {V::StdDev, row.sd}}, row.cost});
    }
    return rules;
}

} // namespace

const std::vector<FuzzyRule>& rule_base() {
    static const std::vector<FuzzyRule> rules = build_rule_base();
    return rules;
}

FuzzyConfig FuzzyConfig::defaults() {
    using MF = MembershipFunction;
    FuzzyVariable rssi("rssi", -90.0, -20.0,
                       {MF::trapezoid("Weak", -90.0, -90.0, -75.0, -60.0),
                        MF::trapezoid("Average", -75.0, -60.0, -50.0, -40.0),
                        MF::trapezoid("Strong", -50.0, -40.0, -20.0, -20.0)});
    FuzzyVariable stddev("stddev", 0.0, 10.0,
                         {MF::trapezoid("Good", 0.0, 0.0, 1.0, 3.0),
                          MF::trapezoid("Average", 1.0, 3.0, 5.0, 7.0),
                          MF::trapezoid("Bad", 5.0, 7.0, 10.0, 10.0)});
    // Neighboring plateaus tile the PER universe (each handoff overlaps at
    // full membership). Ramp crossings below full membership would dent the
    // Cost-High clip, because Medium and High PER share that consequent, and
    // crisp cost would stop being monotone in PER.
    FuzzyVariable per("per", 0.0, 1.0,
                      {MF::trapezoid("Low", 0.0, 0.0, 0.05, 0.15),
                       MF::trapezoid("Medium", 0.0, 0.05, 0.3, 0.5),
                       MF::trapezoid("High", 0.15, 0.3, 1.0, 1.0)});
    FuzzyVariable cost("cost", 0.0, 1.0,
                       {MF::trapezoid("Low", 0.0, 0.0, 0.2, 0.4),
                        MF::trapezoid("Medium", 0.2, 0.4, 0.6, 0.8),
                        MF::trapezoid("High", 0.6, 0.8, 1.0, 1.0)});
    return FuzzyConfig{std::move(rssi), std::move(stddev), std::move(per), std::move(cost), 1001};
}

double ClippedAggregate::operator()(double x) const {
    const auto& sets = cost->sets();
    double best = 0.0;
    for (int k = 0; k < 3; ++k) {
        best = std::max(best, std::min(clip[std::size_t(k)], sets[std::size_t(k)].degree_at(x)));
    }
    return best;
}

FuzzyEngine::FuzzyEngine(FuzzyConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.resolution < 2) {
        throw ConfigError("fuzzy resolution must be at least 2");
    }
    const std::size_t n = std::size_t(cfg_.resolution);
    const double lo = cfg_.cost.lo();
    const double dx = (cfg_.cost.hi() - lo) / double(cfg_.resolution - 1);
    grid_w_.resize(n);
    grid_wx_.resize(n);
    for (int k = 0; k < 3; ++k) mu_[std::size_t(k)].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = lo + double(i) * dx;
        const double w = (i == 0 || i + 1 == n) ? dx / 2.0 : dx;
        grid_w_[i] = w;
        grid_wx_[i] = w * x;
        for (int k = 0; k < 3; ++k) {
            mu_[std::size_t(k)][i] = cfg_.cost.sets()[std::size_t(k)].degree_at(x);
        }
    }
}

std::array<double, 3> FuzzyEngine::fuzzify(InputVar v, double x) const {
    switch (v) {
    case InputVar::Rssi: return cfg_.rssi.fuzzify(x);
    case InputVar::StdDev: return cfg_.stddev.fuzzify(x);
    case InputVar::Per: return cfg_.per.fuzzify(x);
    }
    throw InternalError("unknown input variable");
}

ClippedAggregate FuzzyEngine::infer(const std::array<double, 3>& rssi_deg,
                                    const std::array<double, 3>& stddev_deg,
                                    const std::array<double, 3>& per_deg) const {
    ClippedAggregate agg{&cfg_.cost, {0.0, 0.0, 0.0}};
    for (const auto& rule : rule_base()) {
        double strength = 1.0;
        for (const auto& ant : rule.antecedents) {
            const std::size_t s = std::size_t(ant.set);
            switch (ant.var) {
            case InputVar::Rssi: strength = std::min(strength, rssi_deg[s]); break;
            case InputVar::StdDev: strength = std::min(strength, stddev_deg[s]); break;
            case InputVar::Per: strength = std::min(strength, per_deg[s]); break;
            }
        }
        auto& clip = agg.clip[std::size_t(rule.consequent)];
        clip = std::max(clip, strength);
    }
    return agg;
}

double FuzzyEngine::defuzzify_centroid(const ClippedAggregate& agg) const {
    if (agg.cost != &cfg_.cost) {
        throw InternalError("aggregate does not belong to this engine's cost variable");
    }
    const auto sums = simd::centroid_accumulate(mu_[0].data(), mu_[1].data(), mu_[2].data(),
                                                grid_w_.data(), grid_wx_.data(), grid_w_.size(),
                                                agg.clip[0], agg.clip[1], agg.clip[2]);
    if (sums.area == 0.0) {
        zero_area_.fetch_add(1, std::memory_order_relaxed);
        return (cfg_.cost.lo() + cfg_.cost.hi()) / 2.0;
    }
    return sums.moment / sums.area;
}

double FuzzyEngine::link_cost(double mean_rssi, double rssi_stddev, double per) const {
    if (!std::isfinite(mean_rssi) || !std::isfinite(rssi_stddev) || !std::isfinite(per)) {
        throw InvalidMeasurementError("link_cost needs finite measurements");
    }
    if (per < 0.0 || per > 1.0) {
        throw InvalidMeasurementError("per outside [0,1]");
    }
    const auto rssi_deg = cfg_.rssi.fuzzify(cfg_.rssi.clamp(mean_rssi));
    const auto sd_deg = cfg_.stddev.fuzzify(cfg_.stddev.clamp(rssi_stddev));
    const auto per_deg = cfg_.per.fuzzify(cfg_.per.clamp(per));
    return defuzzify_centroid(infer(rssi_deg, sd_deg, per_deg));
}

} // namespace flbra::fuzzy

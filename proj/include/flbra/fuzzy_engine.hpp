// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "flbra/membership.hpp"

#include <array>
#include <atomic>
#include <cstdint>
#include <vector>

// Mamdani fuzzy link-cost evaluator: min for AND, consequent clipping at the
// firing strength, pointwise-max aggregation, center-of-area defuzzification
// on a fixed grid over the cost universe.

namespace flbra::fuzzy {

enum class InputVar { Rssi = 0, StdDev = 1, Per = 2 };

struct Antecedent {
    InputVar var;
    int set; // index into the variable's sets
};

struct FuzzyRule {
    std::vector<Antecedent> antecedents;
    int consequent; // index into the cost variable's sets
};

// The fixed link-quality rule base: any non-Low packet error rate forces
// High cost on its own; with Low PER the signal strength and its stability
// decide. Eleven rules total.
const std::vector<FuzzyRule>& rule_base();

struct FuzzyConfig {
    FuzzyVariable rssi;
    FuzzyVariable stddev;
    FuzzyVariable per;
    FuzzyVariable cost;
    int resolution = 1001; // grid points across the cost universe

    static FuzzyConfig defaults();
};

// Aggregated output membership: max over cost sets of min(clip, mu_set(x)).
// Valid only as long as the engine that produced it is alive.
struct ClippedAggregate {
    const FuzzyVariable* cost;
    std::array<double, 3> clip;

    double operator()(double x) const;
};

class FuzzyEngine {
public:
    explicit FuzzyEngine(FuzzyConfig cfg);

    const FuzzyConfig& config() const { return cfg_; }

    // Degrees of the three sets of one input variable. Throws
    // InvalidMeasurementError on non-finite input.
    std::array<double, 3> fuzzify(InputVar v, double x) const;

    // Rule evaluation: strength = min over antecedent degrees, consequent
    // clip = max strength per cost set.
    ClippedAggregate infer(const std::array<double, 3>& rssi_deg,
                           const std::array<double, 3>& stddev_deg,
                           const std::array<double, 3>& per_deg) const;

    // Center of area over the precomputed grid. A zero-area aggregate falls
    // back to the universe midpoint and bumps the diagnostic counter.
    double defuzzify_centroid(const ClippedAggregate& agg) const;

    // Full pipeline. Inputs must be finite and per must lie in [0,1]
    // (InvalidMeasurementError otherwise); values are clamped into their
    // universes before fuzzification.
    double link_cost(double mean_rssi, double rssi_stddev, double per) const;

    std::uint64_t zero_area_fallbacks() const { return zero_area_.load(); }

private:
    FuzzyConfig cfg_;
    std::vector<double> grid_w_;
    std::vector<double> grid_wx_;
    std::array<std::vector<double>, 3> mu_;
    mutable std::atomic<std::uint64_t> zero_area_{0};
};

} // namespace flbra::fuzzy

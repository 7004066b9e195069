// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "flbra/protocols.hpp"

namespace flbra::metrics {

// Per-node success rate: the end-to-end delivery probability of the node's
// route; voids score 0. Validates internal consistency of the outcome.
double success_rate(const protocols::DeliveryOutcome& outcome);

// End-to-end packet error probability of a chain of links:
// 1 - product(1 - per_i). Empty chains are error-free.
double pep(const std::vector<double>& link_pers);

// Comparison parameter: mean over aligned nodes of (S_flbra - S_rbf).
// Lists must be equal-length, nonempty, with every entry in [0,1]; the
// result is asserted to stay in [-1, 1].
double f_parameter(const std::vector<double>& s_flbra, const std::vector<double>& s_rbf);

struct ConfidenceInterval {
    double theta1 = 0.0; // lower 95% bound
    double mean = 0.0;
    double theta2 = 0.0; // upper 95% bound
};

// Normal-approximation interval mean -/+ z * s / sqrt(n) with z = 1.959964
// and s the (n-1)-divisor sample standard deviation. Only the 95% level is
// supported; fewer than two values is a statistics error.
ConfidenceInterval confidence_interval(const std::vector<double>& values,
                                       double level = 0.95);

struct HopStats {
    double avg = 0.0;            // mean hops over delivered outcomes
    std::uint32_t farthest = 0;  // max hops among delivered outcomes
    std::size_t delivered = 0;
    std::size_t voids = 0;
};

// Hop statistics of one protocol's outcomes; averages cover delivered nodes
// only, voids are counted separately. Empty input is an input error.
HopStats hop_stats(const std::vector<protocols::DeliveryOutcome>& outcomes);

} // namespace flbra::metrics

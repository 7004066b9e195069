// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "flbra/rng.hpp"

namespace flbra::linkmodel {

// Log-distance path loss with zero-mean gaussian shadowing.
struct PropagationParams {
    double ref_rssi_dbm = -40.0; // received power at ref_distance_m
    double ref_distance_m = 1.0;
    double path_loss_exponent = 3.0;
    double shadow_sigma_db = 4.0;
    double sensitivity_dbm = -90.0;
    int samples_per_link = 30;
    double per_min = 0.0; // packet error rate drawn uniform in [per_min, per_max]
    double per_max = 0.3;
};

// Throws ConfigError when a field is out of range.
void validate(const PropagationParams& params);

// What one receiver knows about one directed link.
// Invariant: reachable == (mean_rssi >= sensitivity), and per == 1.0 whenever
// the link is unreachable.
struct LinkQuality {
    double mean_rssi = 0.0;
    double rssi_stddev = 0.0;
    double per = 0.0;
    bool reachable = false;
};

// Deterministic part of the model. Throws GeometryError for distance <= 0.
double rssi_at_distance(const PropagationParams& params, double distance_m);

// Draws samples_per_link shadowed readings, reduces them to sample mean and
// (n-1)-divisor standard deviation, then draws the PER. A mean below the
// sensitivity floor forces per = 1.0 and marks the link unreachable. Draw
// order is fixed: all RSSI samples first, then one PER uniform.
LinkQuality sample_link(const PropagationParams& params, double distance_m, RngStream& rng);

// Additive perturbation applied by the operation-phase drift model.
struct DriftOffsets {
    double rssi_db = 0.0;
    double stddev_db = 0.0;
    double per = 0.0;
};

// Applies offsets, clamps stddev to >= 0 and per to [0,1], and re-evaluates
// reachability against the sensitivity floor (forcing per = 1.0 when the
// link falls below it). Zero offsets return the input unchanged.
LinkQuality drift(const LinkQuality& q, const DriftOffsets& offsets, double sensitivity_dbm);

} // namespace flbra::linkmodel

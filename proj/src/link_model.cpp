// SPDX-License-Identifier: Apache-2.0
#include "flbra/link_model.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "flbra/errors.hpp"
#include "flbra/simd_kernels.hpp"

namespace flbra::linkmodel {

void validate(const PropagationParams& p) {
    if (!std::isfinite(p.ref_rssi_dbm) || !std::isfinite(p.sensitivity_dbm))
        throw ConfigError("propagation: reference rssi and sensitivity must be finite");
    if (!(p.ref_distance_m > 0.0) || !std::isfinite(p.ref_distance_m))
        throw ConfigError("propagation: ref_distance_m must be > 0");
    if (!(p.path_loss_exponent > 0.0) || !std::isfinite(p.path_loss_exponent))
        throw ConfigError("propagation: path_loss_exponent must be > 0");
    if (!(p.shadow_sigma_db >= 0.0) || !std::isfinite(p.shadow_sigma_db))
        throw ConfigError("propagation: shadow_sigma_db must be >= 0");
    if (p.samples_per_link < 2)
        throw ConfigError("propagation: samples_per_link must be >= 2");
    if (!(0.0 <= p.per_min && p.per_min <= p.per_max && p.per_max <= 1.0))
        throw ConfigError("propagation: need 0 <= per_min <= per_max <= 1");
}

double rssi_at_distance(const PropagationParams& p, double distance_m) {
    if (!(distance_m > 0.0) || !std::isfinite(distance_m))
        throw GeometryError("rssi_at_distance: distance must be > 0");
    return p.ref_rssi_dbm -
           10.0 * p.path_loss_exponent * std::log10(distance_m / p.ref_distance_m);
}

LinkQuality sample_link(const PropagationParams& p, double distance_m, RngStream& rng) {
    validate(p);
    const double base = rssi_at_distance(p, distance_m);

    const std::size_t n = static_cast<std::size_t>(p.samples_per_link);
    std::vector<double> samples(n);
    for (std::size_t i = 0; i < n; ++i)
        samples[i] = base + rng.gaussian(0.0, p.shadow_sigma_db);

    LinkQuality q;
    q.mean_rssi = simd::block_sum(samples.data(), n) / static_cast<double>(n);
    q.rssi_stddev = std::sqrt(simd::block_sum_sq_diff(samples.data(), n, q.mean_rssi) /
                              static_cast<double>(n - 1));
    q.per = rng.uniform(p.per_min, p.per_max);
    q.reachable = q.mean_rssi >= p.sensitivity_dbm;
    if (!q.reachable)
        q.per = 1.0;
    return q;
}

LinkQuality drift(const LinkQuality& q, const DriftOffsets& o, double sensitivity_dbm) {
    LinkQuality out = q;
    out.mean_rssi = q.mean_rssi + o.rssi_db;
    out.rssi_stddev = std::max(0.0, q.rssi_stddev + o.stddev_db);
    out.per = std::clamp(q.per + o.per, 0.0, 1.0);
    out.reachable = out.mean_rssi >= sensitivity_dbm;
    if (!out.reachable)
        out.per = 1.0;
    return out;
}

} // namespace flbra::linkmodel

// SPDX-License-Identifier: Apache-2.0
#include "flbra/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "flbra/errors.hpp"
#include "flbra/simd_kernels.hpp"

namespace flbra::metrics {

double success_rate(const protocols::DeliveryOutcome& o) {
    if (!o.delivered && o.end_to_end_success != 0.0)
        throw InternalError("metrics: void outcome carries a nonzero success");
    if (!(o.end_to_end_success >= 0.0 && o.end_to_end_success <= 1.0))
        throw InternalError("metrics: success rate outside [0,1]");
    return o.end_to_end_success;
}

double pep(const std::vector<double>& link_pers) {
    double survive = 1.0;
    for (double p : link_pers) {
        if (!(p >= 0.0 && p <= 1.0))
            throw InputError("metrics: PER values must lie in [0,1]");
        survive *= 1.0 - p;
    }
    return 1.0 - survive;
}

double f_parameter(const std::vector<double>& s_flbra, const std::vector<double>& s_rbf) {
    if (s_flbra.empty() || s_flbra.size() != s_rbf.size())
        throw InputError("metrics: success lists must be nonempty and aligned");
    const std::size_t n = s_flbra.size();
    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(s_flbra[i] >= 0.0 && s_flbra[i] <= 1.0) ||
            !(s_rbf[i] >= 0.0 && s_rbf[i] <= 1.0))
            throw InputError("metrics: success rates must lie in [0,1]");
        diff[i] = s_flbra[i] - s_rbf[i];
    }
    const double f = simd::block_sum(diff.data(), n) / static_cast<double>(n);
    if (!(std::abs(f) <= 1.0 + 1e-12))
        throw InternalError("metrics: F escaped [-1,1]");
    return f;
}

ConfidenceInterval confidence_interval(const std::vector<double>& values, double level) {
    if (std::abs(level - 0.95) > 1e-12)
        throw InputError("metrics: only the 95% confidence level is supported");
    if (values.size() < 2)
        throw StatisticsError("metrics: confidence interval needs at least 2 values");
    for (double v : values)
        if (!std::isfinite(v))
            throw InputError("metrics: confidence interval input must be finite");

    constexpr double kZ975 = 1.959964;
    const auto n = static_cast<double>(values.size());
    ConfidenceInterval ci;
    ci.mean = simd::block_sum(values.data(), values.size()) / n;
    const double var =
        simd::block_sum_sq_diff(values.data(), values.size(), ci.mean) / (n - 1.0);
    const double half = kZ975 * std::sqrt(var) / std::sqrt(n);
    ci.theta1 = ci.mean - half;
    ci.theta2 = ci.mean + half;
    return ci;
}

HopStats hop_stats(const std::vector<protocols::DeliveryOutcome>& outcomes) {
    if (outcomes.empty())
        throw InputError("metrics: hop stats need at least one outcome");
    HopStats st;
    double hop_sum = 0.0;
    for (const auto& o : outcomes) {
        if (!o.delivered) {
            ++st.voids;
            continue;
        }
        ++st.delivered;
        hop_sum += o.hops;
        st.farthest = std::max(st.farthest, o.hops);
    }
    if (st.delivered > 0)
        st.avg = hop_sum / static_cast<double>(st.delivered);
    return st;
}

} // namespace flbra::metrics

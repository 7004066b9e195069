// SPDX-License-Identifier: Apache-2.0
//
// NEON kernels for aarch64. NEON registers hold two doubles, so two vector
// accumulators emulate the four reference lanes: vacc01 carries lanes 0/1 and
// vacc23 lanes 2/3. Per-lane addition order then matches the reference, and
// the scalar tail plus the (acc0+acc1)+(acc2+acc3) reduction are shared
// verbatim. vminq_f64/vmaxq_f64 are IEEE minNum/maxNum; ties and signed zeros
// are unobservable here for the same reason as in the AVX2 variant.

#include "flbra/simd_kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <algorithm>

namespace flbra::simd::detail {

namespace {

inline double clip_max3(double mu0, double mu1, double mu2,
                        double c0, double c1, double c2) {
    const double m0 = std::min(c0, mu0);
    const double m1 = std::min(c1, mu1);
    const double m2 = std::min(c2, mu2);
    return std::max(std::max(m0, m1), m2);
}

} // namespace

CentroidSums centroid_accumulate_neon(const double* mu0, const double* mu1, const double* mu2,
                                      const double* w, const double* wx, std::size_t n,
                                      double clip0, double clip1, double clip2) {
    const float64x2_t vc0 = vdupq_n_f64(clip0);
    const float64x2_t vc1 = vdupq_n_f64(clip1);
    const float64x2_t vc2 = vdupq_n_f64(clip2);
    float64x2_t varea01 = vdupq_n_f64(0.0);
    float64x2_t varea23 = vdupq_n_f64(0.0);
    float64x2_t vmom01 = vdupq_n_f64(0.0);
    float64x2_t vmom23 = vdupq_n_f64(0.0);
    const std::size_t n4 = n & ~std::size_t(3);
    std::size_t i = 0;
    for (; i < n4; i += 4) {
        const float64x2_t a0 = vmaxq_f64(
            vmaxq_f64(vminq_f64(vc0, vld1q_f64(mu0 + i)), vminq_f64(vc1, vld1q_f64(mu1 + i))),
            vminq_f64(vc2, vld1q_f64(mu2 + i)));
        const float64x2_t a1 = vmaxq_f64(
            vmaxq_f64(vminq_f64(vc0, vld1q_f64(mu0 + i + 2)), vminq_f64(vc1, vld1q_f64(mu1 + i + 2))),
            vminq_f64(vc2, vld1q_f64(mu2 + i + 2)));
        varea01 = vaddq_f64(varea01, vmulq_f64(vld1q_f64(w + i), a0));
        varea23 = vaddq_f64(varea23, vmulq_f64(vld1q_f64(w + i + 2), a1));
        vmom01 = vaddq_f64(vmom01, vmulq_f64(vld1q_f64(wx + i), a0));
        vmom23 = vaddq_f64(vmom23, vmulq_f64(vld1q_f64(wx + i + 2), a1));
    }
    double area[4] = {vgetq_lane_f64(varea01, 0), vgetq_lane_f64(varea01, 1),
                      vgetq_lane_f64(varea23, 0), vgetq_lane_f64(varea23, 1)};
    double mom[4] = {vgetq_lane_f64(vmom01, 0), vgetq_lane_f64(vmom01, 1),
                     vgetq_lane_f64(vmom23, 0), vgetq_lane_f64(vmom23, 1)};
    for (; i < n; ++i) {
        const double m = clip_max3(mu0[i], mu1[i], mu2[i], clip0, clip1, clip2);
        area[i - n4] += w[i] * m;
        mom[i - n4] += wx[i] * m;
    }
    return CentroidSums{(area[0] + area[1]) + (area[2] + area[3]),
                        (mom[0] + mom[1]) + (mom[2] + mom[3])};
}

double block_sum_neon(const double* x, std::size_t n) {
    float64x2_t vacc01 = vdupq_n_f64(0.0);
    float64x2_t vacc23 = vdupq_n_f64(0.0);
    const std::size_t n4 = n & ~std::size_t(3);
    std::size_t i = 0;
    for (; i < n4; i += 4) {
        vacc01 = vaddq_f64(vacc01, vld1q_f64(x + i));
        vacc23 = vaddq_f64(vacc23, vld1q_f64(x + i + 2));
    }
    double acc[4] = {vgetq_lane_f64(vacc01, 0), vgetq_lane_f64(vacc01, 1),
                     vgetq_lane_f64(vacc23, 0), vgetq_lane_f64(vacc23, 1)};
    for (; i < n; ++i) {
        acc[i - n4] += x[i];
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double block_sum_sq_diff_neon(const double* x, std::size_t n, double mean) {
    const float64x2_t vmean = vdupq_n_f64(mean);
    float64x2_t vacc01 = vdupq_n_f64(0.0);
    float64x2_t vacc23 = vdupq_n_f64(0.0);
    const std::size_t n4 = n & ~std::size_t(3);
    std::size_t i = 0;
    for (; i < n4; i += 4) {
        const float64x2_t d0 = vsubq_f64(vld1q_f64(x + i), vmean);
        const float64x2_t d1 = vsubq_f64(vld1q_f64(x + i + 2), vmean);
        vacc01 = vaddq_f64(vacc01, vmulq_f64(d0, d0));
        vacc23 = vaddq_f64(vacc23, vmulq_f64(d1, d1));
    }
    double acc[4] = {vgetq_lane_f64(vacc01, 0), vgetq_lane_f64(vacc01, 1),
                     vgetq_lane_f64(vacc23, 0), vgetq_lane_f64(vacc23, 1)};
    for (; i < n; ++i) {
        const double d = x[i] - mean;
        acc[i - n4] += d * d;
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

} // namespace flbra::simd::detail

#endif // __aarch64__

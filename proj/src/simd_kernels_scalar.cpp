// SPDX-License-Identifier: Apache-2.0
//
// Scalar reference kernels. This file defines the blocked-summation contract
// the vector backends must reproduce bit for bit:
//   - four accumulator lanes, filled round-robin in blocks of four,
//   - tail elements added into lanes 0..tail-1,
//   - final reduction (acc0+acc1)+(acc2+acc3),
//   - plain mul/add only, no FMA contraction.
// The build pins -ffp-contract=off so no target (notably aarch64, where FMA
// is in the base ISA) may fuse the mul/add pairs below.

#include "flbra/simd_kernels.hpp"

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

CentroidSums centroid_accumulate_scalar(const double* mu0, const double* mu1, const double* mu2,
                                        const double* w, const double* wx, std::size_t n,
                                        double clip0, double clip1, double clip2) {
    double area[4] = {0.0, 0.0, 0.0, 0.0};
    double mom[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t n4 = n & ~std::size_t(3);
    std::size_t i = 0;
    for (; i < n4; i += 4) {
        for (std::size_t j = 0; j < 4; ++j) {
            const double m = clip_max3(mu0[i + j], mu1[i + j], mu2[i + j], clip0, clip1, clip2);
            area[j] += w[i + j] * m;
            mom[j] += wx[i + j] * m;
        }
    }
    for (; i < n; ++i) {
        const double m = clip_max3(mu0[i], mu1[i], mu2[i], clip0, clip1, clip2);
        area[i - n4] += w[i] * m;
        mom[i - n4] += wx[i] * m;
    }
    return CentroidSums{(area[0] + area[1]) + (area[2] + area[3]),
                        (mom[0] + mom[1]) + (mom[2] + mom[3])};
}

double block_sum_scalar(const double* x, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t n4 = n & ~std::size_t(3);
    std::size_t i = 0;
    for (; i < n4; i += 4) {
        acc[0] += x[i];
        acc[1] += x[i + 1];
        acc[2] += x[i + 2];
        acc[3] += x[i + 3];
    }
    for (; i < n; ++i) {
        acc[i - n4] += x[i];
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double block_sum_sq_diff_scalar(const double* x, std::size_t n, double mean) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t n4 = n & ~std::size_t(3);
    std::size_t i = 0;
    for (; i < n4; i += 4) {
        for (std::size_t j = 0; j < 4; ++j) {
            const double d = x[i + j] - mean;
            acc[j] += d * d;
        }
    }
    for (; i < n; ++i) {
        const double d = x[i] - mean;
        acc[i - n4] += d * d;
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

} // namespace flbra::simd::detail

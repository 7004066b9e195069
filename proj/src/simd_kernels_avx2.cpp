// SPDX-License-Identifier: Apache-2.0
//
// AVX2 kernels. One 4-lane vector register plays the role of the four scalar
// accumulator lanes, so per-lane addition order matches the reference exactly.
// The tail and the final reduction run in scalar code, in the same order as
// the reference. Entered only through the dispatcher after a cpu check.

#include "flbra/simd_kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>

namespace flbra::simd::detail {

namespace {

// Same expression as the scalar reference tail. _mm256_min_pd/_mm256_max_pd
// pick the other operand on ties, std::min/std::max the first; membership
// values and clips are >= +0.0 so tied operands are bit-identical and the
// difference is unobservable.
inline double clip_max3(double mu0, double mu1, double mu2,
                        double c0, double c1, double c2) {
    const double m0 = std::min(c0, mu0);
    const double m1 = std::min(c1, mu1);
    const double m2 = std::min(c2, mu2);
    return std::max(std::max(m0, m1), m2);
}

} // namespace

CentroidSums centroid_accumulate_avx2(const double* mu0, const double* mu1, const double* mu2,
                                      const double* w, const double* wx, std::size_t n,
                                      double clip0, double clip1, double clip2) {
    const __m256d vc0 = _mm256_set1_pd(clip0);
    const __m256d vc1 = _mm256_set1_pd(clip1);
    const __m256d vc2 = _mm256_set1_pd(clip2);
    __m256d varea = _mm256_setzero_pd();
    __m256d vmom = _mm256_setzero_pd();
    const std::size_t n4 = n & ~std::size_t(3);
    std::size_t i = 0;
    for (; i < n4; i += 4) {
        const __m256d m0 = _mm256_min_pd(vc0, _mm256_loadu_pd(mu0 + i));
        const __m256d m1 = _mm256_min_pd(vc1, _mm256_loadu_pd(mu1 + i));
        const __m256d m2 = _mm256_min_pd(vc2, _mm256_loadu_pd(mu2 + i));
        const __m256d m = _mm256_max_pd(_mm256_max_pd(m0, m1), m2);
        varea = _mm256_add_pd(varea, _mm256_mul_pd(_mm256_loadu_pd(w + i), m));
        vmom = _mm256_add_pd(vmom, _mm256_mul_pd(_mm256_loadu_pd(wx + i), m));
    }
    alignas(32) double area[4];
    alignas(32) double mom[4];
    _mm256_store_pd(area, varea);
    _mm256_store_pd(mom, vmom);
    for (; i < n; ++i) {
        const double m = clip_max3(mu0[i], mu1[i], mu2[i], clip0, clip1, clip2);
        area[i - n4] += w[i] * m;
        mom[i - n4] += wx[i] * m;
    }
    return CentroidSums{(area[0] + area[1]) + (area[2] + area[3]),
                        (mom[0] + mom[1]) + (mom[2] + mom[3])};
}

double block_sum_avx2(const double* x, std::size_t n) {
    __m256d vacc = _mm256_setzero_pd();
    const std::size_t n4 = n & ~std::size_t(3);
    std::size_t i = 0;
    for (; i < n4; i += 4) {
        vacc = _mm256_add_pd(vacc, _mm256_loadu_pd(x + i));
    }
    alignas(32) double acc[4];
    _mm256_store_pd(acc, vacc);
    for (; i < n; ++i) {
        acc[i - n4] += x[i];
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double block_sum_sq_diff_avx2(const double* x, std::size_t n, double mean) {
    const __m256d vmean = _mm256_set1_pd(mean);
    __m256d vacc = _mm256_setzero_pd();
    const std::size_t n4 = n & ~std::size_t(3);
    std::size_t i = 0;
    for (; i < n4; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), vmean);
        vacc = _mm256_add_pd(vacc, _mm256_mul_pd(d, d));
    }
    alignas(32) double acc[4];
    _mm256_store_pd(acc, vacc);
    for (; i < n; ++i) {
        const double d = x[i] - mean;
        acc[i - n4] += d * d;
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

} // namespace flbra::simd::detail

#endif // x86_64

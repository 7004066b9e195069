// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>

// Vectorised inner loops for the fuzzy cost pipeline, with a scalar reference
// implementation and runtime dispatch.
//
// Every backend follows the same blocked-summation contract: four independent
// accumulator lanes fed round-robin in blocks of four, a scalar tail written
// into lanes 0..tail-1, and the final reduction (acc0+acc1)+(acc2+acc3).
// No FMA anywhere. Under that contract the scalar, AVX2 and NEON variants
// produce bit-identical results, which the test suite asserts with exact
// equality and which keeps golden values independent of the machine.

namespace flbra::simd {

enum class Backend {
    Scalar,
    Avx2,
    Neon,
};

const char* backend_name(Backend b);

// True when the running CPU can execute the given backend.
bool backend_available(Backend b);

// Backend used by the dispatching entry points below. Detection order:
// explicit force_backend() call, then the FLBRA_KERNELS environment variable
// (scalar|avx2|neon), then the best available backend.
Backend active_backend();

// Throws InternalError if the backend is not available on this CPU.
void force_backend(Backend b);

// Drops any forced choice and re-runs detection.
void reset_backend();

struct CentroidSums {
    double area;
    double moment;
};

// Fused Mamdani aggregation and trapezoid integration over a precomputed
// grid of the three output membership functions.
//
// For each grid index i the aggregated membership is
//   m = max(min(clip0, mu0[i]), min(clip1, mu1[i]), min(clip2, mu2[i]))
// and the kernel accumulates area += w[i]*m, moment += wx[i]*m where w holds
// trapezoid weights and wx[i] = w[i]*x[i]. All five arrays have length n.
CentroidSums centroid_accumulate(const double* mu0, const double* mu1, const double* mu2,
                                 const double* w, const double* wx, std::size_t n,
                                 double clip0, double clip1, double clip2);

// Plain blocked sum of x[0..n).
double block_sum(const double* x, std::size_t n);

// Blocked sum of squared deviations from a precomputed mean.
double block_sum_sq_diff(const double* x, std::size_t n, double mean);

// Direct entry points for the equivalence tests; prefer the dispatching
// functions above everywhere else.
namespace detail {

CentroidSums centroid_accumulate_scalar(const double* mu0, const double* mu1, const double* mu2,
                                        const double* w, const double* wx, std::size_t n,
                                        double clip0, double clip1, double clip2);
double block_sum_scalar(const double* x, std::size_t n);
double block_sum_sq_diff_scalar(const double* x, std::size_t n, double mean);

#if defined(__x86_64__) || defined(_M_X64)
#define FLBRA_HAVE_AVX2_BACKEND 1
CentroidSums centroid_accumulate_avx2(const double* mu0, const double* mu1, const double* mu2,
                                      const double* w, const double* wx, std::size_t n,
                                      double clip0, double clip1, double clip2);
double block_sum_avx2(const double* x, std::size_t n);
double block_sum_sq_diff_avx2(const double* x, std::size_t n, double mean);
#endif

#if defined(__aarch64__)
#define FLBRA_HAVE_NEON_BACKEND 1
CentroidSums centroid_accumulate_neon(const double* mu0, const double* mu1, const double* mu2,
                                      const double* w, const double* wx, std::size_t n,
                                      double clip0, double clip1, double clip2);
double block_sum_neon(const double* x, std::size_t n);
double block_sum_sq_diff_neon(const double* x, std::size_t n, double mean);
#endif

} // namespace detail

} // namespace flbra::simd

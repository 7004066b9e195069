// SPDX-License-Identifier: Apache-2.0

#include "flbra/simd_kernels.hpp"

#include "flbra/errors.hpp"

#include <cstdlib>
#include <cstring>
#include <optional>

namespace flbra::simd {

namespace {

std::optional<Backend> g_forced;

Backend detect() {
    if (const char* env = std::getenv("FLBRA_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
        if (std::strcmp(env, "avx2") == 0 && backend_available(Backend::Avx2)) return Backend::Avx2;
        if (std::strcmp(env, "neon") == 0 && backend_available(Backend::Neon)) return Backend::Neon;
        // Unknown or unavailable request falls through to auto-detection.
    }
#if defined(FLBRA_HAVE_AVX2_BACKEND)
    if (backend_available(Backend::Avx2)) return Backend::Avx2;
#endif
#if defined(FLBRA_HAVE_NEON_BACKEND)
    if (backend_available(Backend::Neon)) return Backend::Neon;
#endif
    return Backend::Scalar;
}

Backend current() {
    if (g_forced) return *g_forced;
    static const Backend detected = detect();
    return detected;
}

} // namespace

const char* backend_name(Backend b) {
    switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
    }
    return "unknown";
}

bool backend_available(Backend b) {
    switch (b) {
    case Backend::Scalar:
        return true;
    case Backend::Avx2:
#if defined(FLBRA_HAVE_AVX2_BACKEND)
        return __builtin_cpu_supports("avx2") != 0;
#else
        return false;
#endif
    case Backend::Neon:
#if defined(FLBRA_HAVE_NEON_BACKEND)
        return true; // NEON is mandatory on aarch64.
#else
        return false;
#endif
    }
    return false;
}

Backend active_backend() {
    return current();
}

void force_backend(Backend b) {
    if (!backend_available(b)) {
        throw InternalError(std::string("kernel backend not available on this cpu: ") + backend_name(b));
    }
    g_forced = b;
}

void reset_backend() {
    g_forced.reset();
}

CentroidSums centroid_accumulate(const double* mu0, const double* mu1, const double* mu2,
                                 const double* w, const double* wx, std::size_t n,
                                 double clip0, double clip1, double clip2) {
    switch (current()) {
#if defined(FLBRA_HAVE_AVX2_BACKEND)
    case Backend::Avx2:
        return detail::centroid_accumulate_avx2(mu0, mu1, mu2, w, wx, n, clip0, clip1, clip2);
#endif
#if defined(FLBRA_HAVE_NEON_BACKEND)
    case Backend::Neon:
        return detail::centroid_accumulate_neon(mu0, mu1, mu2, w, wx, n, clip0, clip1, clip2);
#endif
    default:
        return detail::centroid_accumulate_scalar(mu0, mu1, mu2, w, wx, n, clip0, clip1, clip2);
    }
}

double block_sum(const double* x, std::size_t n) {
    switch (current()) {
#if defined(FLBRA_HAVE_AVX2_BACKEND)
    case Backend::Avx2:
        return detail::block_sum_avx2(x, n);
#endif
#if defined(FLBRA_HAVE_NEON_BACKEND)
    case Backend::Neon:
        return detail::block_sum_neon(x, n);
#endif
    default:
        return detail::block_sum_scalar(x, n);
    }
}

double block_sum_sq_diff(const double* x, std::size_t n, double mean) {
    switch (current()) {
#if defined(FLBRA_HAVE_AVX2_BACKEND)
    case Backend::Avx2:
        return detail::block_sum_sq_diff_avx2(x, n, mean);
#endif
#if defined(FLBRA_HAVE_NEON_BACKEND)
    case Backend::Neon:
        return detail::block_sum_sq_diff_neon(x, n, mean);
#endif
    default:
        return detail::block_sum_sq_diff_scalar(x, n, mean);
    }
}

} // namespace flbra::simd

#include "speclab/kernels.hpp"

// Compiled with -mavx2 -mfma (see CMakeLists); only reached after the
// runtime cpuid check in kernels_dispatch.cpp.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace speclab::kernels::detail {

namespace {

// complex<double> pairs packed [re0, im0, re1, im1]

inline __m256d swap_ri(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

// horizontal sums of even and odd lanes
inline void hsum_eo(__m256d v, double& even, double& odd) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    even = _mm_cvtsd_f64(s);
    odd = _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

void a_zaxpy(std::size_t n, cxd a, const cxd* x, cxd* y) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    auto* xp = reinterpret_cast<const double*>(x);
    auto* yp = reinterpret_cast<double*>(y);
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        __m256d t = _mm256_mul_pd(swap_ri(xv), ai);
        __m256d ax = _mm256_fmaddsub_pd(xv, ar, t);
        _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(yv, ax));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

cxd a_zdotc(std::size_t n, const cxd* x, const cxd* y) {
    __m256d acc1 = _mm256_setzero_pd(), acc2 = _mm256_setzero_pd();
    std::size_t i = 0;
    auto* xp = reinterpret_cast<const double*>(x);
    auto* yp = reinterpret_cast<const double*>(y);
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        acc1 = _mm256_fmadd_pd(xv, yv, acc1);
        acc2 = _mm256_fmadd_pd(swap_ri(xv), yv, acc2);
    }
    double e1, o1, e2, o2;
    hsum_eo(acc1, e1, o1);
    hsum_eo(acc2, e2, o2);
    double re = e1 + o1;   // xr*yr + xi*yi
    double im = o2 - e2;   // xr*yi - xi*yr
    for (; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

cxd a_zdotu(std::size_t n, const cxd* x, const cxd* y) {
    __m256d acc1 = _mm256_setzero_pd(), acc2 = _mm256_setzero_pd();
    std::size_t i = 0;
    auto* xp = reinterpret_cast<const double*>(x);
    auto* yp = reinterpret_cast<const double*>(y);
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        acc1 = _mm256_fmadd_pd(xv, yv, acc1);
        acc2 = _mm256_fmadd_pd(swap_ri(xv), yv, acc2);
    }
    double e1, o1, e2, o2;
    hsum_eo(acc1, e1, o1);
    hsum_eo(acc2, e2, o2);
    double re = e1 - o1;   // xr*yr - xi*yi
    double im = e2 + o2;   // xi*yr + xr*yi
    for (; i < n; ++i) {
        re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
    }
    return {re, im};
}

double a_znrm2sq(std::size_t n, const cxd* x) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    auto* xp = reinterpret_cast<const double*>(x);
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        acc = _mm256_fmadd_pd(xv, xv, acc);
    }
    double e, o;
    hsum_eo(acc, e, o);
    double s = e + o;
    for (; i < n; ++i)
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

void a_zscal(std::size_t n, cxd a, cxd* x) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    auto* xp = reinterpret_cast<double*>(x);
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d t = _mm256_mul_pd(swap_ri(xv), ai);
        _mm256_storeu_pd(xp + 2 * i, _mm256_fmaddsub_pd(xv, ar, t));
    }
    for (; i < n; ++i) x[i] *= a;
}

void a_zrot(std::size_t n, cxd* x, cxd* y, double c, cxd s) {
    const __m256d cv = _mm256_set1_pd(c);
    const __m256d sr = _mm256_set1_pd(s.real());
    const __m256d si = _mm256_set1_pd(s.imag());
    std::size_t i = 0;
    auto* xp = reinterpret_cast<double*>(x);
    auto* yp = reinterpret_cast<double*>(y);
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        // s*y
        __m256d t = _mm256_mul_pd(swap_ri(yv), si);
        __m256d sy = _mm256_fmaddsub_pd(yv, sr, t);
        // conj(s)*x
        __m256d u = _mm256_mul_pd(swap_ri(xv), si);
        __m256d csx = _mm256_fmsubadd_pd(xv, sr, u);
        _mm256_storeu_pd(xp + 2 * i, _mm256_fmadd_pd(xv, cv, sy));
        _mm256_storeu_pd(yp + 2 * i, _mm256_fmsub_pd(yv, cv, csx));
    }
    for (; i < n; ++i) {
        const cxd xi = x[i], yi = y[i];
        x[i] = c * xi + s * yi;
        y[i] = c * yi - std::conj(s) * xi;
    }
}

void a_daxpy(std::size_t n, double a, const double* x, double* y) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d yv = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

double a_ddot(std::size_t n, const double* x, const double* y) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    double e, o;
    hsum_eo(acc, e, o);
    double s = e + o;
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

}  // namespace

const Ops& avx2_ops() {
    static const Ops ops{a_zaxpy, a_zdotc, a_zdotu, a_znrm2sq,
                         a_zscal, a_zrot,  a_daxpy, a_ddot};
    return ops;
}

}  // namespace speclab::kernels::detail

#else

namespace speclab::kernels::detail {
const Ops& avx2_ops() { return scalar_ops(); }
}

#endif

#pragma once

#include <complex>
#include <cstddef>

// Low-level arithmetic kernels used by the dense linear algebra and the
// basis assembly inner loops. Every kernel has a scalar reference
// implementation and, on x86-64 with AVX2+FMA, a vectorized variant; the
// active variant is selected once at runtime. Set SPECLAB_KERNELS=scalar
// (or =avx2) to override the automatic choice.

namespace speclab::kernels {

using cxd = std::complex<double>;

// y[i] += a * x[i]
void zaxpy(std::size_t n, cxd a, const cxd* x, cxd* y);
// sum_i conj(x[i]) * y[i]
cxd zdotc(std::size_t n, const cxd* x, const cxd* y);
// sum_i x[i] * y[i]
cxd zdotu(std::size_t n, const cxd* x, const cxd* y);
// sum_i |x[i]|^2
double znrm2sq(std::size_t n, const cxd* x);
// x[i] *= a
void zscal(std::size_t n, cxd a, cxd* x);
// plane rotation with real cosine:
//   x[i] <- c*x[i] + s*y[i],  y[i] <- -conj(s)*x[i] + c*y[i]
void zrot(std::size_t n, cxd* x, cxd* y, double c, cxd s);

// real kernels for the quadrature Gram assembly
void daxpy(std::size_t n, double a, const double* x, double* y);
double ddot(std::size_t n, const double* x, const double* y);

enum class Isa { scalar, avx2 };
Isa active_isa();
const char* isa_name(Isa isa);

namespace detail {

struct Ops {
    void (*zaxpy)(std::size_t, cxd, const cxd*, cxd*);
    cxd (*zdotc)(std::size_t, const cxd*, const cxd*);
    cxd (*zdotu)(std::size_t, const cxd*, const cxd*);
    double (*znrm2sq)(std::size_t, const cxd*);
    void (*zscal)(std::size_t, cxd, cxd*);
    void (*zrot)(std::size_t, cxd*, cxd*, double, cxd);
    void (*daxpy)(std::size_t, double, const double*, double*);
    double (*ddot)(std::size_t, const double*, const double*);
};

// both tables stay reachable so the equivalence tests can compare them
const Ops& scalar_ops();
const Ops& avx2_ops();  // falls back to scalar_ops() when unsupported
bool avx2_supported();

}  // namespace detail

}  // namespace speclab::kernels

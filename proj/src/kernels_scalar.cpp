#include "speclab/kernels.hpp"

namespace speclab::kernels::detail {

namespace {

void s_zaxpy(std::size_t n, cxd a, const cxd* x, cxd* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

cxd s_zdotc(std::size_t n, const cxd* x, const cxd* y) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

cxd s_zdotu(std::size_t n, const cxd* x, const cxd* y) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
    }
    return {re, im};
}

double s_znrm2sq(std::size_t n, const cxd* x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

void s_zscal(std::size_t n, cxd a, cxd* x) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void s_zrot(std::size_t n, cxd* x, cxd* y, double c, cxd s) {
    for (std::size_t i = 0; i < n; ++i) {
        const cxd xi = x[i], yi = y[i];
        x[i] = c * xi + s * yi;
        y[i] = c * yi - std::conj(s) * xi;
    }
}

void s_daxpy(std::size_t n, double a, const double* x, double* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double s_ddot(std::size_t n, const double* x, const double* y) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{s_zaxpy, s_zdotc, s_zdotu, s_znrm2sq,
                         s_zscal, s_zrot,  s_daxpy, s_ddot};
    return ops;
}

}  // namespace speclab::kernels::detail

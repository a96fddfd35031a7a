#include "speclab/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace speclab::kernels {

namespace detail {

bool avx2_supported() {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

}  // namespace detail

namespace {

Isa resolve() {
    if (const char* env = std::getenv("SPECLAB_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
        if (std::strcmp(env, "avx2") == 0)
            return detail::avx2_supported() ? Isa::avx2 : Isa::scalar;
    }
    return detail::avx2_supported() ? Isa::avx2 : Isa::scalar;
}

const detail::Ops& active() {
    static const detail::Ops& ops =
        (active_isa() == Isa::avx2) ? detail::avx2_ops() : detail::scalar_ops();
    return ops;
}

}  // namespace

Isa active_isa() {
    static const Isa isa = resolve();
    return isa;
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void zaxpy(std::size_t n, cxd a, const cxd* x, cxd* y) { active().zaxpy(n, a, x, y); }
cxd zdotc(std::size_t n, const cxd* x, const cxd* y) { return active().zdotc(n, x, y); }
cxd zdotu(std::size_t n, const cxd* x, const cxd* y) { return active().zdotu(n, x, y); }
double znrm2sq(std::size_t n, const cxd* x) { return active().znrm2sq(n, x); }
void zscal(std::size_t n, cxd a, cxd* x) { active().zscal(n, a, x); }
void zrot(std::size_t n, cxd* x, cxd* y, double c, cxd s) { active().zrot(n, x, y, c, s); }
void daxpy(std::size_t n, double a, const double* x, double* y) { active().daxpy(n, a, x, y); }
double ddot(std::size_t n, const double* x, const double* y) { return active().ddot(n, x, y); }

}  // namespace speclab::kernels

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "speclab/errors.hpp"
#include "speclab/kernels.hpp"
#include "speclab/linalg.hpp"

namespace speclab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSafeMin = std::numeric_limits<double>::min();

// number of eigenvalues of the symmetric tridiagonal matrix strictly below
// sigma, by the LDL^T Sturm count
std::size_t sturm_count(std::span<const double> d, std::span<const double> e, double sigma) {
    const std::size_t n = d.size();
    std::size_t cnt = 0;
    double q = d[0] - sigma;
    if (q < 0.0) ++cnt;
    for (std::size_t i = 1; i < n; ++i) {
        if (q == 0.0) q = kSafeMin;
        q = d[i] - sigma - e[i - 1] * e[i - 1] / q;
        if (q < 0.0) ++cnt;
    }
    return cnt;
}

// implicit-shift QL, eigenvalues only (tql1)
std::vector<double> tql_eigenvalues(std::vector<double> d, std::vector<double> e) {
    const std::size_t n = d.size();
    if (n == 0) return d;
    e.push_back(0.0);
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        for (;;) {
            std::size_t m = l;
            while (m + 1 < n) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= kEps * dd) break;
                ++m;
            }
            if (m == l) break;
            if (++iter > 50)
                throw NumericalError("eig_sym_tridiag: QL failed to converge");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            for (std::size_t i = m; i-- > l;) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (r == 0.0 && m > l + 1) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace

std::vector<double> eig_sym_tridiag(std::span<const double> diag,
                                    std::span<const double> off, std::size_t k) {
    const std::size_t n = diag.size();
    if (n == 0 || k == 0) return {};
    if (off.size() + 1 != n)
        throw std::invalid_argument("eig_sym_tridiag: off-diagonal length must be n-1");
    if (k > n) throw std::invalid_argument("eig_sym_tridiag: k exceeds dimension");
    if (n == 1) return {diag[0]};
    if (k == n)
        return tql_eigenvalues(std::vector<double>(diag.begin(), diag.end()),
                               std::vector<double>(off.begin(), off.end()));

    // Gershgorin bounds
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) +
                         (i + 1 < n ? std::abs(off[i]) : 0.0);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
        nrm = std::max(nrm, std::abs(diag[i]) + r);
    }
    const double tol = std::max(1e-13 * nrm, 4.0 * kSafeMin);
    std::vector<double> out(k);
    for (std::size_t j = 0; j < k; ++j) {
        double a = lo, b = hi;
        while (b - a > tol + kEps * std::max(std::abs(a), std::abs(b))) {
            const double mid = 0.5 * (a + b);
            if (sturm_count(diag, off, mid) > j)
                b = mid;
            else
                a = mid;
        }
        out[j] = 0.5 * (a + b);
    }
    return out;
}

// ---------------------------------------------------------------------------
// complex symmetric tridiagonal
// ---------------------------------------------------------------------------

double inf_norm(const ComplexTridiag& t) {
    const std::size_t n = t.size();
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = std::abs(t.diag[i]);
        if (i > 0) s += std::abs(t.off[i - 1]);
        if (i + 1 < n) s += std::abs(t.off[i]);
        best = std::max(best, s);
    }
    return best;
}

std::vector<cxd> matvec(const ComplexTridiag& t, std::span<const cxd> x) {
    const std::size_t n = t.size();
    std::vector<cxd> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        cxd s = t.diag[i] * x[i];
        if (i > 0) s += t.off[i - 1] * x[i - 1];
        if (i + 1 < n) s += t.off[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

TridiagLu tridiag_factor(const ComplexTridiag& t, cxd shift) {
    // gttrf-style pivoted factorization; row interchanges introduce one extra
    // superdiagonal (du2)
    const std::size_t n = t.size();
    TridiagLu f;
    f.d.resize(n);
    f.dl.assign(n > 0 ? n - 1 : 0, cxd(0.0));
    f.du.assign(n > 0 ? n - 1 : 0, cxd(0.0));
    f.du2.assign(n > 1 ? n - 2 : 0, cxd(0.0));
    f.ipiv.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        f.d[i] = t.diag[i] - shift;
        f.ipiv[i] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) f.dl[i] = f.du[i] = t.off[i];

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(f.d[i]) >= std::abs(f.dl[i])) {
            if (f.d[i] == cxd(0.0)) {
                f.exact_singular = true;
                f.d[i] = kSafeMin;
            }
            const cxd fact = f.dl[i] / f.d[i];
            f.dl[i] = fact;
            f.d[i + 1] -= fact * f.du[i];
        } else {
            const cxd fact = f.d[i] / f.dl[i];
            f.d[i] = f.dl[i];
            f.dl[i] = fact;
            const cxd temp = f.du[i];
            f.du[i] = f.d[i + 1];
            f.d[i + 1] = temp - fact * f.d[i + 1];
            if (i + 2 < n) {
                f.du2[i] = f.du[i + 1];
                f.du[i + 1] = -fact * f.du[i + 1];
            }
            f.ipiv[i] = static_cast<int>(i + 1);
        }
    }
    if (n > 0 && f.d[n - 1] == cxd(0.0)) {
        f.exact_singular = true;
        f.d[n - 1] = kSafeMin;
    }
    return f;
}

void tridiag_solve_inplace(const TridiagLu& f, std::span<cxd> x) {
    const std::size_t n = f.d.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (f.ipiv[i] == static_cast<int>(i)) {
            x[i + 1] -= f.dl[i] * x[i];
        } else {
            const cxd temp = x[i];
            x[i] = x[i + 1];
            x[i + 1] = temp - f.dl[i] * x[i];
        }
    }
    if (n == 0) return;
    x[n - 1] /= f.d[n - 1];
    if (n > 1) x[n - 2] = (x[n - 2] - f.du[n - 2] * x[n - 1]) / f.d[n - 2];
    for (std::size_t i = n - 1; i-- > 1;) {
        const std::size_t j = i - 1;
        x[j] = (x[j] - f.du[j] * x[j + 1] - f.du2[j] * x[j + 2]) / f.d[j];
    }
}

std::pair<cxd, double> tridiag_eig_near(const ComplexTridiag& t, cxd shift,
                                        std::vector<cxd>* eigenvector) {
    const std::size_t n = t.size();
    if (n == 0) throw std::invalid_argument("tridiag_eig_near: empty matrix");
    TridiagLu f = tridiag_factor(t, shift);
    std::mt19937_64 rng(0xabcd1234ULL + n);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cxd> v(n);
    for (auto& z : v) z = cxd(u(rng), u(rng));
    double nrm = std::sqrt(kernels::znrm2sq(n, v.data()));
    kernels::zscal(n, 1.0 / nrm, v.data());

    cxd lambda = shift;
    const double tnorm = inf_norm(t);
    double resid = std::numeric_limits<double>::infinity();
    int refactors = 0;
    for (int it = 0; it < 24; ++it) {
        tridiag_solve_inplace(f, v);
        nrm = std::sqrt(kernels::znrm2sq(n, v.data()));
        if (!(nrm > 0.0) || !std::isfinite(nrm)) break;
        kernels::zscal(n, 1.0 / nrm, v.data());
        std::vector<cxd> tv = matvec(t, v);
        lambda = kernels::zdotc(n, v.data(), tv.data());
        kernels::zaxpy(n, -lambda, v.data(), tv.data());
        resid = std::sqrt(kernels::znrm2sq(n, tv.data())) / std::max(tnorm, kSafeMin);
        if (resid < 64.0 * kEps) break;
        // Rayleigh-quotient restart once the iterate has settled near a mode
        if (it >= 4 && it % 4 == 0 && refactors < 3) {
            f = tridiag_factor(t, lambda);
            ++refactors;
        }
    }
    if (eigenvector) *eigenvector = v;
    return {lambda, resid};
}

}  // namespace speclab

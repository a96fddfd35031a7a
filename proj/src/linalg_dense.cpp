#include "speclab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "speclab/errors.hpp"
#include "speclab/kernels.hpp"

namespace speclab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSafeMin = std::numeric_limits<double>::min();

double abs1(cxd z) { return std::abs(z.real()) + std::abs(z.imag()); }

// Givens rotation [c s; -conj(s) c] with real c mapping (f,g) -> (r,0)
void zrotg(cxd f, cxd g, double& c, cxd& s, cxd& r) {
    if (g == cxd(0.0)) {
        c = 1.0;
        s = 0.0;
        r = f;
        return;
    }
    if (f == cxd(0.0)) {
        c = 0.0;
        const double ag = std::abs(g);
        s = std::conj(g) / ag;
        r = ag;
        return;
    }
    const double af = std::abs(f), ag = std::abs(g);
    const double d = std::hypot(af, ag);
    const cxd fhat = f / af;
    c = af / d;
    s = fhat * std::conj(g) / d;
    r = fhat * d;
}

// eigenvalues of [[a,b],[c,d]]
std::pair<cxd, cxd> eig2x2(cxd a, cxd b, cxd c, cxd d) {
    const cxd tr = a + d;
    const cxd disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
    return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

}  // namespace

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = 1.0;
    return a;
}

double inf_norm(const DenseMatrix& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols; ++j) s += std::abs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}

bool all_finite(const DenseMatrix& a) {
    for (const cxd& z : a.data)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

std::vector<cxd> matvec(const DenseMatrix& a, std::span<const cxd> x) {
    std::vector<cxd> y(a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        y[i] = kernels::zdotu(a.cols, a.row(i), x.data());
    return y;
}

cxd trace(const DenseMatrix& a) {
    cxd t = 0.0;
    for (std::size_t i = 0; i < std::min(a.rows, a.cols); ++i) t += a(i, i);
    return t;
}

std::vector<cxd> sort_eigenvalues(std::vector<cxd> v) {
    std::sort(v.begin(), v.end(), [](cxd a, cxd b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return v;
}

// ---------------------------------------------------------------------------
// Hessenberg reduction + implicit single-shift QR
// ---------------------------------------------------------------------------

namespace {

// Reduce in place to upper Hessenberg by Householder reflectors. All O(n^3)
// work runs on contiguous rows: the right update A <- A(I - tau v v^H) is
// per-row (dot + axpy), the left update uses an accumulated row w = v^H A.
void hessenberg_reduce(DenseMatrix& a) {
    const std::size_t n = a.rows;
    if (n < 3) return;
    std::vector<cxd> v, vconj, w;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;  // rows k+1..n-1
        v.assign(m, cxd(0.0));
        for (std::size_t i = 0; i < m; ++i) v[i] = a(k + 1 + i, k);
        double scale = 0.0;
        for (std::size_t i = 1; i < m; ++i) scale += abs1(v[i]);
        if (scale == 0.0) continue;  // column already in Hessenberg form
        const double beta = std::sqrt(kernels::znrm2sq(m, v.data()));
        if (beta == 0.0) continue;
        const double a0 = std::abs(v[0]);
        const cxd phase = (a0 == 0.0) ? cxd(1.0) : v[0] / a0;
        const cxd alpha = -phase * beta;
        v[0] -= alpha;
        const double vnorm2 = 2.0 * beta * (beta + a0);
        if (vnorm2 <= 0.0) continue;
        const double tau = 2.0 / vnorm2;

        vconj.assign(m, cxd(0.0));
        for (std::size_t i = 0; i < m; ++i) vconj[i] = std::conj(v[i]);

        // left: rows k+1..n-1, columns k..n-1
        const std::size_t c0 = k, cw = n - k;
        w.assign(cw, cxd(0.0));
        for (std::size_t i = 0; i < m; ++i)
            kernels::zaxpy(cw, vconj[i], a.row(k + 1 + i) + c0, w.data());
        for (std::size_t i = 0; i < m; ++i)
            kernels::zaxpy(cw, -tau * v[i], w.data(), a.row(k + 1 + i) + c0);

        // right: all rows, columns k+1..n-1
        for (std::size_t r = 0; r < n; ++r) {
            cxd g = kernels::zdotu(m, a.row(r) + k + 1, v.data());
            kernels::zaxpy(m, -tau * g, vconj.data(), a.row(r) + k + 1);
        }
        a(k + 1, k) = alpha;
        for (std::size_t i = 2; i <= m; ++i) a(k + i, k) = 0.0;
    }
}

// Implicit single-shift QR on an upper Hessenberg matrix; eigenvalues only,
// updates confined to the active window. zlahqr-style deflation thresholds.
bool hessenberg_qr(DenseMatrix& h, std::vector<cxd>& eig, int& iters_out, int max_sweeps) {
    const std::size_t n = h.rows;
    eig.assign(n, cxd(0.0));
    if (n == 0) return true;
    if (n == 1) {
        eig[0] = h(0, 0);
        return true;
    }
    std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
    int iters = 0, stall = 0;
    while (hi >= 0) {
        // deflation scan
        std::ptrdiff_t lo = hi;
        while (lo > 0) {
            const double sub = abs1(h(lo, lo - 1));
            const double diag = abs1(h(lo - 1, lo - 1)) + abs1(h(lo, lo));
            if (sub <= kEps * diag + kSafeMin) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            eig[hi] = h(hi, hi);
            --hi;
            stall = 0;
            continue;
        }
        if (lo == hi - 1) {
            auto [e1, e2] = eig2x2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi));
            eig[lo] = e1;
            eig[hi] = e2;
            hi -= 2;
            stall = 0;
            continue;
        }
        if (iters >= max_sweeps) {
            iters_out = iters;
            for (std::ptrdiff_t i = 0; i <= hi; ++i) eig[i] = h(i, i);
            return false;
        }
        ++iters;
        ++stall;

        // Wilkinson shift from the trailing 2x2; exceptional shift on stall
        cxd mu;
        if (stall > 0 && stall % 12 == 0) {
            mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
        } else {
            auto [e1, e2] = eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
            mu = (abs1(e1 - h(hi, hi)) < abs1(e2 - h(hi, hi))) ? e1 : e2;
        }

        cxd x = h(lo, lo) - mu;
        cxd y = h(lo + 1, lo);
        for (std::ptrdiff_t i = lo; i < hi; ++i) {
            double c;
            cxd s, r;
            zrotg(x, y, c, s, r);
            if (i > lo) {
                h(i, i - 1) = r;
                h(i + 1, i - 1) = 0.0;
            }
            // rows i, i+1 over columns i..hi
            kernels::zrot(static_cast<std::size_t>(hi - i + 1), h.row(i) + i,
                          h.row(i + 1) + i, c, s);
            // columns i, i+1 over rows lo..min(i+2, hi)
            const std::ptrdiff_t rend = std::min<std::ptrdiff_t>(i + 2, hi);
            for (std::ptrdiff_t rr = lo; rr <= rend; ++rr) {
                const cxd hi1 = h(rr, i), hi2 = h(rr, i + 1);
                h(rr, i) = c * hi1 + std::conj(s) * hi2;
                h(rr, i + 1) = c * hi2 - s * hi1;
            }
            if (i < hi - 1) {
                x = h(i + 1, i);
                y = h(i + 2, i);
            }
        }
    }
    iters_out = iters;
    return true;
}

}  // namespace

EigenResult eig_dense(const DenseMatrix& a, bool want_residual) {
    if (!a.square()) throw std::invalid_argument("eig_dense: matrix must be square");
    if (!all_finite(a)) throw std::invalid_argument("eig_dense: non-finite entries");
    const std::size_t n = a.rows;
    EigenResult res;
    if (n == 0) {
        res.converged = true;
        return res;
    }
    DenseMatrix h = a;
    hessenberg_reduce(h);
    std::vector<cxd> eig;
    int iters = 0;
    res.converged = hessenberg_qr(h, eig, iters, 30 * static_cast<int>(n));
    res.iterations = iters;
    res.eigenvalues = sort_eigenvalues(std::move(eig));

    if (want_residual && res.converged && n >= 2) {
        const double anorm = inf_norm(a);
        std::mt19937_64 rng(0x5eed5eedULL + n);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        double worst = 0.0;
        const std::size_t nsample = std::min<std::size_t>(3, n);
        for (std::size_t s = 0; s < nsample; ++s) {
            const cxd lam = res.eigenvalues[s];
            // inverse iteration on A - (1+eps')*lam for an approximate vector
            DenseMatrix b = a;
            const double off = 1e-8 * std::max(1.0, std::abs(lam));
            for (std::size_t i = 0; i < n; ++i) b(i, i) -= lam + cxd(off, off);
            LuFactors f = lu_factor(std::move(b));
            std::vector<cxd> v(n);
            for (auto& z : v) z = cxd(u(rng), u(rng));
            for (int it = 0; it < 3; ++it) {
                v = lu_solve(f, v);
                const double nrm = std::sqrt(kernels::znrm2sq(n, v.data()));
                if (!(nrm > 0.0) || !std::isfinite(nrm)) break;
                kernels::zscal(n, 1.0 / nrm, v.data());
            }
            std::vector<cxd> av = matvec(a, v);
            kernels::zaxpy(n, -lam, v.data(), av.data());
            const double vn = std::sqrt(kernels::znrm2sq(n, v.data()));
            if (vn > 0.0 && anorm > 0.0)
                worst = std::max(worst, std::sqrt(kernels::znrm2sq(n, av.data())) / (anorm * vn));
        }
        res.residual_bound = worst;
    }
    return res;
}

// ---------------------------------------------------------------------------
// LU
// ---------------------------------------------------------------------------

LuFactors lu_factor(DenseMatrix a) {
    if (!a.square()) throw std::invalid_argument("lu_factor: matrix must be square");
    const std::size_t n = a.rows;
    LuFactors f;
    f.perm.resize(n);
    double maxabs = 0.0;
    for (const cxd& z : a.data) maxabs = std::max(maxabs, std::abs(z));
    f.max_abs = maxabs;
    f.min_pivot = std::numeric_limits<double>::infinity();
    const double tiny = std::max(maxabs, 1.0) * kSafeMin / kEps;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = std::abs(a(i, k));
            if (m > best) {
                best = m;
                piv = i;
            }
        }
        f.perm[k] = static_cast<int>(piv);
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            f.sign = -f.sign;
        }
        if (a(k, k) == cxd(0.0)) {
            f.exact_singular = true;
            a(k, k) = tiny;
        }
        f.min_pivot = std::min(f.min_pivot, std::abs(a(k, k)));
        const cxd inv = 1.0 / a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cxd m = a(i, k) * inv;
            a(i, k) = m;
            if (m != cxd(0.0))
                kernels::zaxpy(n - k - 1, -m, a.row(k) + k + 1, a.row(i) + k + 1);
        }
    }
    f.lu = std::move(a);
    return f;
}

std::vector<cxd> lu_solve(const LuFactors& f, std::span<const cxd> b) {
    const std::size_t n = f.lu.rows;
    std::vector<cxd> x(b.begin(), b.end());
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t p = static_cast<std::size_t>(f.perm[k]);
        if (p != k) std::swap(x[k], x[p]);
        // apply L below
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = k + 1; i < n; ++i) x[i] -= f.lu(i, k) * x[k];
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
        x[i] /= f.lu(i, i);
    }
    return x;
}

std::vector<cxd> lu_solve_adjoint(const LuFactors& f, std::span<const cxd> b) {
    // solves A^H x = b given PA = LU:  A^H = U^H L^H P
    const std::size_t n = f.lu.rows;
    std::vector<cxd> x(b.begin(), b.end());
    // U^H y = b (forward, U^H lower with conj transpose)
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) x[i] -= std::conj(f.lu(j, i)) * x[j];
        x[i] /= std::conj(f.lu(i, i));
    }
    // L^H z = y (backward, unit diagonal)
    for (std::size_t i = n; i-- > 0;)
        for (std::size_t j = i + 1; j < n; ++j) x[i] -= std::conj(f.lu(j, i)) * x[j];
    // x = P^T z: perm was applied as row swaps in order; undo in reverse
    for (std::size_t k = n; k-- > 0;) {
        const std::size_t p = static_cast<std::size_t>(f.perm[k]);
        if (p != k) std::swap(x[k], x[p]);
    }
    return x;
}

cxd lu_determinant(const LuFactors& f) {
    cxd det = static_cast<double>(f.sign);
    for (std::size_t i = 0; i < f.lu.rows; ++i) det *= f.lu(i, i);
    return det;
}

std::vector<cxd> solve_dense(const DenseMatrix& a, std::span<const cxd> b) {
    if (!a.square() || a.rows != b.size())
        throw std::invalid_argument("solve_dense: shape mismatch");
    LuFactors f = lu_factor(a);
    if (f.exact_singular || f.min_pivot <= 16.0 * kEps * f.max_abs)
        throw NumericalError("solve_dense: matrix singular to working tolerance");
    return lu_solve(f, b);
}

double smallest_singular(const DenseMatrix& a, cxd z) {
    if (!a.square()) throw std::invalid_argument("smallest_singular: matrix must be square");
    const std::size_t n = a.rows;
    if (n == 0) return 0.0;
    DenseMatrix b = a;
    for (std::size_t i = 0; i < n; ++i) b(i, i) -= z;
    LuFactors f = lu_factor(std::move(b));
    if (f.exact_singular) return 0.0;

    std::mt19937_64 rng(0x51e9c0deULL + n);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cxd> v(n);
    for (auto& w : v) w = cxd(u(rng), u(rng));
    double nrm = std::sqrt(kernels::znrm2sq(n, v.data()));
    kernels::zscal(n, 1.0 / nrm, v.data());

    double sigma = 0.0, prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 64; ++it) {
        std::vector<cxd> y = lu_solve(f, v);
        std::vector<cxd> w = lu_solve_adjoint(f, y);
        const double rho = std::sqrt(kernels::znrm2sq(n, w.data()));
        if (!std::isfinite(rho)) return 0.0;
        if (rho == 0.0) return 0.0;
        sigma = 1.0 / std::sqrt(rho);
        kernels::zscal(n, 1.0 / rho, w.data());
        v = std::move(w);
        if (std::abs(sigma - prev) <= 1e-7 * sigma) break;
        prev = sigma;
    }
    return sigma;
}

// ---------------------------------------------------------------------------
// Hermitian helpers
// ---------------------------------------------------------------------------

namespace {

// Householder tridiagonalization of a Hermitian matrix (in place, lower part).
void hermitian_tridiagonalize(DenseMatrix a, std::vector<double>& diag, std::vector<double>& off) {
    const std::size_t n = a.rows;
    diag.assign(n, 0.0);
    off.assign(n > 0 ? n - 1 : 0, 0.0);
    std::vector<cxd> v, p, w;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;
        v.assign(m, cxd(0.0));
        for (std::size_t i = 0; i < m; ++i) v[i] = a(k + 1 + i, k);
        const double beta = std::sqrt(kernels::znrm2sq(m, v.data()));
        off[k] = beta;
        if (beta == 0.0) continue;
        const double a0 = std::abs(v[0]);
        const cxd phase = (a0 == 0.0) ? cxd(1.0) : v[0] / a0;
        v[0] += phase * beta;  // reflector maps column to -phase*beta*e0
        const double vnorm2 = 2.0 * beta * (beta + a0);
        const double tau = 2.0 / vnorm2;

        // p = tau * A22 * v over the trailing block (Hermitian, stored fully)
        p.assign(m, cxd(0.0));
        for (std::size_t i = 0; i < m; ++i)
            p[i] = tau * kernels::zdotu(m, a.row(k + 1 + i) + k + 1, v.data());
        // w = p - (tau/2) (v^H p) v
        const cxd vhp = kernels::zdotc(m, v.data(), p.data());
        w = p;
        kernels::zaxpy(m, -0.5 * tau * vhp, v.data(), w.data());
        // A22 -= v w^H + w v^H
        std::vector<cxd> wc(m), vc(m);
        for (std::size_t j = 0; j < m; ++j) {
            wc[j] = std::conj(w[j]);
            vc[j] = std::conj(v[j]);
        }
        for (std::size_t i = 0; i < m; ++i) {
            cxd* rowi = a.row(k + 1 + i) + k + 1;
            kernels::zaxpy(m, -v[i], wc.data(), rowi);
            kernels::zaxpy(m, -w[i], vc.data(), rowi);
        }
    }
    for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
    if (n >= 2) off[n - 2] = std::abs(a(n - 1, n - 2));
}

}  // namespace

double hermitian_extreme_eigenvalue(const DenseMatrix& a, bool largest) {
    if (!a.square()) throw std::invalid_argument("hermitian_extreme_eigenvalue: square input required");
    std::vector<double> d, e;
    hermitian_tridiagonalize(a, d, e);
    if (largest) {
        for (auto& x : d) x = -x;
        return -eig_sym_tridiag(d, e, 1)[0];
    }
    return eig_sym_tridiag(d, e, 1)[0];
}

// ---------------------------------------------------------------------------
// eigenvalue multiset pairing
// ---------------------------------------------------------------------------

namespace {

double set_distance_impl(std::span<const cxd> a, std::span<const cxd> b, bool relative) {
    if (a.size() != b.size())
        throw std::invalid_argument("eig_set_distance: size mismatch");
    std::vector<cxd> as(a.begin(), a.end()), bs(b.begin(), b.end());
    as = sort_eigenvalues(std::move(as));
    bs = sort_eigenvalues(std::move(bs));
    std::vector<bool> used(bs.size(), false);
    double worst = 0.0;
    for (const cxd& x : as) {
        std::size_t pick = bs.size();
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < bs.size(); ++j) {
            if (used[j]) continue;
            const double dd = std::abs(x - bs[j]);
            if (dd < best) {
                best = dd;
                pick = j;
            }
        }
        used[pick] = true;
        if (relative) best /= std::max(1.0, std::abs(x));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

double eig_set_distance(std::span<const cxd> a, std::span<const cxd> b) {
    return set_distance_impl(a, b, false);
}

double eig_set_distance_rel(std::span<const cxd> a, std::span<const cxd> b) {
    return set_distance_impl(a, b, true);
}

}  // namespace speclab

#include "speclab/spectral_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "speclab/errors.hpp"
#include "speclab/parallel.hpp"

namespace speclab {

namespace {

constexpr double kPi = std::numbers::pi;

struct ParityBlocks {
    DenseMatrix even, odd;
};

ParityBlocks split_parity(const DenseMatrix& a) {
    const std::size_t n = a.rows;
    const std::size_t ne = (n + 1) / 2, no = n / 2;
    ParityBlocks b{DenseMatrix(ne, ne), DenseMatrix(no, no)};
    for (std::size_t i = 0; i < ne; ++i)
        for (std::size_t j = 0; j < ne; ++j) b.even(i, j) = a(2 * i, 2 * j);
    for (std::size_t i = 0; i < no; ++i)
        for (std::size_t j = 0; j < no; ++j) b.odd(i, j) = a(2 * i + 1, 2 * j + 1);
    return b;
}

struct EigOutcome {
    std::vector<cxd> values;
    bool converged = true;
    int iterations = 0;
};

EigOutcome eigenvalues_of(const DenseMatrix& a, bool parity_split) {
    EigOutcome out;
    if (parity_split && a.rows >= 8 && parity_decoupled(a)) {
        ParityBlocks b = split_parity(a);
        EigenResult re = eig_dense(b.even);
        EigenResult ro = eig_dense(b.odd);
        out.converged = re.converged && ro.converged;
        out.iterations = re.iterations + ro.iterations;
        out.values = re.eigenvalues;
        out.values.insert(out.values.end(), ro.eigenvalues.begin(), ro.eigenvalues.end());
    } else {
        EigenResult r = eig_dense(a);
        out.converged = r.converged;
        out.iterations = r.iterations;
        out.values = std::move(r.eigenvalues);
    }
    out.values = sort_eigenvalues(std::move(out.values));
    return out;
}

double sigma_min_blockwise(const DenseMatrix& a, cxd z, bool parity_split) {
    if (parity_split && a.rows >= 8 && parity_decoupled(a)) {
        ParityBlocks b = split_parity(a);
        return std::min(smallest_singular(b.even, z), smallest_singular(b.odd, z));
    }
    return smallest_singular(a, z);
}

Discretization refined(const Discretization& disc) {
    Discretization r = disc;
    r.n = (3 * disc.n + 1) / 2;
    if (r.quad_order != 0) r.quad_order = std::max((3 * disc.quad_order + 1) / 2, 2 * r.n);
    return r;
}

}  // namespace

bool parity_decoupled(const DenseMatrix& a) {
    if (!a.square()) return false;
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = (i % 2 == 0) ? 1 : 0; j < a.cols; j += 2)
            if (a(i, j) != cxd(0.0)) return false;
    return true;
}

Spectrum spectrum(const OperatorSpec& spec, const Discretization& disc, std::size_t k,
                  const SpectrumOptions& opts) {
    spec.validate();
    disc.validate();
    if (k == 0 || k > disc.n)
        throw std::invalid_argument("spectrum: k must be in 1..n");

    const DenseMatrix a = assemble_dilated(spec, disc);
    EigOutcome eo = eigenvalues_of(a, opts.parity_split);
    if (!eo.converged) throw NumericalError("spectrum: eigensolver failed to converge");

    Spectrum s;
    s.spec = spec;
    s.disc = disc;
    s.solver_converged = true;
    s.iterations = eo.iterations;
    s.eigenvalues.assign(eo.values.begin(), eo.values.begin() + k);
    s.abscissa = s.eigenvalues.front().real();
    s.reliable.assign(k, false);

    if (!opts.assess_reliability) {
        s.reliable_count = 0;
        return s;
    }

    const double anorm = inf_norm(a);
    // resolvent-norm test
    std::vector<double> sig(k, 0.0);
    parallel_for(k, opts.jobs, [&](std::size_t i) {
        sig[i] = sigma_min_blockwise(a, s.eigenvalues[i], opts.parity_split);
    });

    // stability under n -> 1.5n
    const Discretization disc2 = refined(disc);
    const DenseMatrix a2 = assemble_dilated(spec, disc2);
    EigOutcome eo2 = eigenvalues_of(a2, opts.parity_split);

    for (std::size_t i = 0; i < k; ++i) {
        const cxd lam = s.eigenvalues[i];
        bool ok = sig[i] <= opts.sigma_tol * anorm;
        if (ok && eo2.converged) {
            double best = std::numeric_limits<double>::infinity();
            for (const cxd& mu : eo2.values) best = std::min(best, std::abs(lam - mu));
            ok = best <= opts.refine_tol * std::max(1.0, std::abs(lam));
        } else {
            ok = false;
        }
        s.reliable[i] = ok;
        if (ok) ++s.reliable_count;
    }
    return s;
}

IsospectralityReport isospectrality_report(const OperatorSpec& spec,
                                           std::span<const double> thetas, std::size_t k,
                                           double tol, const Discretization& disc,
                                           const SpectrumOptions& opts) {
    if (thetas.empty()) throw std::invalid_argument("isospectrality_report: no angles");
    const double tmax = theta_max(spec.kappa);
    for (double th : thetas)
        if (!(std::abs(th) < tmax))
            throw std::invalid_argument("isospectrality_report: theta outside theta_max");

    IsospectralityReport rep;
    rep.thetas.assign(thetas.begin(), thetas.end());
    rep.tol = tol;

    std::vector<Spectrum> runs(thetas.size());
    parallel_for(thetas.size(), opts.jobs, [&](std::size_t i) {
        OperatorSpec si = spec;
        si.w = cxd(spec.w.real(), thetas[i]);
        SpectrumOptions so = opts;
        so.jobs = 1;
        runs[i] = spectrum(si, disc, k, so);
    });

    if (opts.assess_reliability)
        for (const Spectrum& s : runs)
            if (s.reliable_count < s.eigenvalues.size()) rep.degraded = true;

    const std::size_t m = thetas.size();
    rep.distance.assign(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const double d = eig_set_distance_rel(runs[i].eigenvalues, runs[j].eigenvalues);
            rep.distance[i][j] = rep.distance[j][i] = d;
            rep.max_distance = std::max(rep.max_distance, d);
        }
    rep.pass = rep.max_distance <= tol;
    return rep;
}

NumericalRange numerical_range(const DenseMatrix& a, std::size_t n_angles, unsigned jobs) {
    if (!a.square()) throw std::invalid_argument("numerical_range: square matrix required");
    if (n_angles < 8) throw std::invalid_argument("numerical_range: need at least 8 angles");
    const std::size_t n = a.rows;

    DenseMatrix he(n, n), sk(n, n);  // A = He + i K with He, K Hermitian
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            he(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
            sk(i, j) = cxd(0.0, -0.5) * (a(i, j) - std::conj(a(j, i)));
        }

    NumericalRange r;
    r.angles.resize(n_angles);
    r.support.resize(n_angles);
    parallel_for(n_angles, jobs, [&](std::size_t j) {
        const double phi = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_angles);
        r.angles[j] = phi;
        DenseMatrix hphi(n, n);
        const double c = std::cos(phi), s = std::sin(phi);
        for (std::size_t t = 0; t < n * n; ++t)
            hphi.data[t] = c * he.data[t] + s * sk.data[t];
        r.support[j] = hermitian_extreme_eigenvalue(hphi, true);
    });

    r.boundary.resize(n_angles);
    for (std::size_t j = 0; j < n_angles; ++j) {
        const std::size_t j2 = (j + 1) % n_angles;
        const double c1 = std::cos(r.angles[j]), s1 = std::sin(r.angles[j]);
        const double c2 = std::cos(r.angles[j2]), s2 = std::sin(r.angles[j2]);
        const double det = c1 * s2 - s1 * c2;  // sin(phi2 - phi1) > 0
        r.boundary[j] = cxd((r.support[j] * s2 - r.support[j2] * s1) / det,
                            (r.support[j2] * c1 - r.support[j] * c2) / det);
    }
    return r;
}

bool numerical_range_contains(const NumericalRange& r, cxd z, double tol_abs) {
    for (std::size_t j = 0; j < r.angles.size(); ++j) {
        const double proj = z.real() * std::cos(r.angles[j]) + z.imag() * std::sin(r.angles[j]);
        if (proj > r.support[j] + tol_abs) return false;
    }
    return true;
}

bool polygon_convex(std::span<const cxd> v, double tol) {
    const std::size_t m = v.size();
    if (m < 3) return true;
    for (std::size_t i = 0; i < m; ++i) {
        const cxd a = v[i], b = v[(i + 1) % m], c = v[(i + 2) % m];
        const double cross = (b.real() - a.real()) * (c.imag() - b.imag()) -
                             (b.imag() - a.imag()) * (c.real() - b.real());
        if (cross < -tol) return false;
    }
    return true;
}

bool containment_check(std::span<const cxd> eigenvalues, const NumericalRange& r,
                       double tol_abs) {
    for (const cxd& z : eigenvalues)
        if (!numerical_range_contains(r, z, tol_abs)) return false;
    return true;
}

bool containment_check(const Spectrum& s, const NumericalRange& r, double tol_abs) {
    return containment_check(std::span<const cxd>(s.eigenvalues), r, tol_abs);
}

PseudospectrumGrid pseudospectrum_grid(const DenseMatrix& a,
                                       std::pair<double, double> re_range,
                                       std::pair<double, double> im_range,
                                       std::pair<std::size_t, std::size_t> resolution,
                                       unsigned jobs) {
    const auto [nre, nim] = resolution;
    if (nre < 2 || nim < 2 || nre > 200 || nim > 200)
        throw std::invalid_argument("pseudospectrum_grid: resolution must be 2..200 per axis");
    PseudospectrumGrid g;
    g.re_axis.resize(nre);
    g.im_axis.resize(nim);
    for (std::size_t j = 0; j < nre; ++j)
        g.re_axis[j] = re_range.first +
                       (re_range.second - re_range.first) * static_cast<double>(j) /
                           static_cast<double>(nre - 1);
    for (std::size_t i = 0; i < nim; ++i)
        g.im_axis[i] = im_range.first +
                       (im_range.second - im_range.first) * static_cast<double>(i) /
                           static_cast<double>(nim - 1);
    g.sigma.assign(nre * nim, 0.0);
    parallel_for(nre * nim, jobs, [&](std::size_t idx) {
        const std::size_t i = idx / nre, j = idx % nre;
        g.sigma[idx] = smallest_singular(a, cxd(g.re_axis[j], g.im_axis[i]));
    });
    return g;
}

}  // namespace speclab

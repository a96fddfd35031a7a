#include "speclab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "speclab/errors.hpp"
#include "speclab/kernels.hpp"
#include "speclab/linalg.hpp"

namespace speclab {

namespace {

// FD ground state of -d2 + V on [-box, box], h chosen from the localization
// scale `width`
double fd_ground(const std::function<double(double)>& V, double box, double width,
                 double points_per_width, std::size_t& n_out, double* lambda1 = nullptr) {
    const double h = width / points_per_width;
    const std::size_t n = std::max<std::size_t>(64, static_cast<std::size_t>(2.0 * box / h));
    std::vector<double> diag(n), off(n - 1);
    const double hh = 2.0 * box / static_cast<double>(n + 1);
    const double inv = 1.0 / (hh * hh);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -box + hh * static_cast<double>(i + 1);
        diag[i] = 2.0 * inv + V(x);
    }
    std::fill(off.begin(), off.end(), -inv);
    n_out = n;
    if (lambda1) {
        auto ev = eig_sym_tridiag(diag, off, 2);
        *lambda1 = ev[1];
        return ev[0];
    }
    return eig_sym_tridiag(diag, off, 1)[0];
}

double ground_with_box_doubling(const std::function<double(double)>& V, double box0,
                                double width, const BoundPolicy& policy, double& box_used,
                                std::size_t& n_used) {
    double box = box0;
    double prev = 0.0;
    bool have_prev = false;
    for (int d = 0; d <= policy.max_doublings; ++d) {
        std::size_t n = 0;
        const double lam = fd_ground(V, box, width, policy.grid_points_per_width, n);
        if (have_prev && std::abs(lam - prev) < policy.box_rel_tol * std::max(1.0, std::abs(lam))) {
            box_used = box;
            n_used = n;
            return lam;
        }
        prev = lam;
        have_prev = true;
        box *= 2.0;
    }
    throw NumericalError("certified_lower_bound: box doubling did not converge");
}

double g_of(double y, double alpha, double kappa) {
    return std::pow(y, 2.0 / kappa) + alpha * y / ((1.0 + y) * (1.0 + y));
}

// stationarity residual (2/(kappa alpha)) y^{2/kappa - 1} (1+y)^3 + 1 - y
double g_stationarity(double y, double alpha, double kappa) {
    const double t = std::pow(y, 2.0 / kappa - 1.0);
    const double one = 1.0 + y;
    return (2.0 / (kappa * alpha)) * t * one * one * one + 1.0 - y;
}

}  // namespace

double anharmonic_ground(const AnharmonicSpec& spec, const BoundPolicy& policy) {
    spec.validate();
    const double width = std::pow(spec.alpha, -1.0 / (spec.kappa + 2.0));
    const double lam_est = std::pow(spec.alpha, 2.0 / (spec.kappa + 2.0));
    const double box = std::max(8.0 * std::min(1.0, width), 10.0 * width);
    double box_used = 0.0;
    std::size_t n_used = 0;
    return ground_with_box_doubling(
        [&](double x) { return spec.alpha * pow_abs(x, spec.kappa); },
        std::max(box, 2.0 * width * std::sqrt(lam_est)), std::min(width, 1.0), policy,
        box_used, n_used);
}

BoundReport certified_lower_bound(const RealPartSpec& spec, const BoundPolicy& policy) {
    spec.validate();
    BoundReport rep;
    rep.gamma = spec.gamma;
    rep.kappa = spec.kappa;
    rep.theta = spec.theta;
    rep.nu = localization_nu(spec.kappa);
    rep.alpha = effective_alpha(spec);

    const double width = std::pow(1.0 + rep.alpha, -1.0 / (spec.kappa + 2.0));
    const double lam_est = std::max(1.0, std::pow(rep.alpha, 2.0 / (spec.kappa + 2.0)));
    const double box0 = default_fd_box(rep.alpha, spec.kappa, lam_est);
    rep.lambda0_H = ground_with_box_doubling(
        [&](double x) { return real_part_potential(x, spec); }, box0, width, policy,
        rep.box_used, rep.n_used);
    rep.certified = std::cos(2.0 * spec.theta) * rep.lambda0_H;

    // semiclassical prediction through the comparison oscillator K_alpha
    if (rep.alpha > 0.0) {
        AnharmonicSpec base{1.0, spec.kappa};
        const double lamK1 = anharmonic_ground(base, policy);
        rep.predicted = std::cos(2.0 * spec.theta) * lamK1 *
                        std::pow(rep.alpha, 2.0 / (2.0 + spec.kappa));
    }
    return rep;
}

AnharmonicScalingReport anharmonic_scaling_check(double kappa, std::span<const double> alphas,
                                                 const BoundPolicy& policy) {
    if (alphas.empty())
        throw std::invalid_argument("anharmonic_scaling_check: empty alpha list");
    for (std::size_t i = 1; i < alphas.size(); ++i)
        if (!(alphas[i] > alphas[i - 1]))
            throw std::invalid_argument("anharmonic_scaling_check: alphas must ascend");
    AnharmonicScalingReport rep;
    rep.kappa = kappa;
    rep.lambda0_K1 = anharmonic_ground({1.0, kappa}, policy);
    for (double a : alphas) {
        AnharmonicScalingRow row;
        row.alpha = a;
        row.lambda0 = anharmonic_ground({a, kappa}, policy);
        row.predicted = rep.lambda0_K1 * std::pow(a, 2.0 / (2.0 + kappa));
        row.rel_dev = std::abs(row.lambda0 / row.predicted - 1.0);
        rep.max_rel_dev = std::max(rep.max_rel_dev, row.rel_dev);
        rep.rows.push_back(row);
    }
    rep.pass = rep.max_rel_dev <= 1e-3;
    return rep;
}

GAnalysis g_analysis(double alpha, double kappa, double nu) {
    if (!(alpha > 1.0))
        throw std::invalid_argument("g_analysis: alpha must exceed 1 (asymptotic regime)");
    if (!(nu > 0.0 && nu <= 2.0 / (2.0 + kappa)))
        throw std::invalid_argument("g_analysis: nu must lie in (0, 2/(2+kappa)]");
    GAnalysis res;
    res.alpha = alpha;
    res.kappa = kappa;
    res.nu = nu;

    // bracket sign changes of the stationarity residual on a log grid
    constexpr int kGridPoints = 600;
    const double ylo = 1e-6, yhi = 1e6;
    std::vector<double> roots;
    double yprev = ylo, fprev = g_stationarity(ylo, alpha, kappa);
    for (int i = 1; i <= kGridPoints; ++i) {
        const double y = ylo * std::pow(yhi / ylo, static_cast<double>(i) / kGridPoints);
        const double f = g_stationarity(y, alpha, kappa);
        if (fprev == 0.0) roots.push_back(yprev);
        if (fprev * f < 0.0) {
            double a = yprev, b = y, fa = fprev;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = g_stationarity(mid, alpha, kappa);
                if (fa * fm <= 0.0)
                    b = mid;
                else {
                    a = mid;
                    fa = fm;
                }
                if (b - a <= 1e-14 * std::max(1.0, b)) break;
            }
            roots.push_back(0.5 * (a + b));
        }
        yprev = y;
        fprev = f;
    }
    res.root_count = static_cast<int>(roots.size());
    if (res.root_count >= 1) {
        res.y1 = roots.front();
        res.g_y1 = g_of(res.y1, alpha, kappa);
    }
    if (res.root_count >= 2) {
        res.y2 = roots.back();
        res.g_y2 = g_of(res.y2, alpha, kappa);
    }

    res.edge = std::pow(alpha, -kappa * nu);
    res.g_edge = g_of(res.edge, alpha, kappa);
    res.minimizer = res.edge;
    res.min_value = res.g_edge;
    for (double y : roots) {
        if (y <= res.edge) continue;
        const double v = g_of(y, alpha, kappa);
        if (v < res.min_value) {
            res.min_value = v;
            res.minimizer = y;
        }
    }
    return res;
}

double ims_identity_residual(const RealPartSpec& spec, const Discretization& disc,
                             const CutoffProfile& cut) {
    const SymTridiag H = assemble_real_part(spec, disc);
    const std::size_t n = H.size();
    if (cut.grid.size() != n)
        throw std::invalid_argument("ims_identity_residual: cutoff grid mismatch");
    for (std::size_t i = 0; i < n; ++i)
        if (cut.grid[i] != H.nodes[i])
            throw std::invalid_argument("ims_identity_residual: cutoff grid mismatch");

    // With diagonal J, Jt the conjugations stay tridiagonal:
    //   M(i,i)   = (J_i^2 + Jt_i^2) H(i,i) - dJ_i^2 - dJt_i^2
    //   M(i,i+1) = (J_i J_{i+1} + Jt_i Jt_{i+1}) H(i,i+1)
    // Residual and norm in the max-row-sum norm.
    double rnorm = 0.0, hnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double mdiag =
            (cut.J[i] * cut.J[i] + cut.Jt[i] * cut.Jt[i]) * H.diag[i] -
            cut.dJ[i] * cut.dJ[i] - cut.dJt[i] * cut.dJt[i];
        double rrow = std::abs(mdiag - H.diag[i]);
        double hrow = std::abs(H.diag[i]);
        if (i > 0) {
            const double m = (cut.J[i] * cut.J[i - 1] + cut.Jt[i] * cut.Jt[i - 1]) * H.off[i - 1];
            rrow += std::abs(m - H.off[i - 1]);
            hrow += std::abs(H.off[i - 1]);
        }
        if (i + 1 < n) {
            const double m = (cut.J[i] * cut.J[i + 1] + cut.Jt[i] * cut.Jt[i + 1]) * H.off[i];
            rrow += std::abs(m - H.off[i]);
            hrow += std::abs(H.off[i]);
        }
        rnorm = std::max(rnorm, rrow);
        hnorm = std::max(hnorm, hrow);
    }
    return rnorm / hnorm;
}

SectorialityReport sectoriality_check(const OperatorSpec& spec, const Discretization& disc,
                                      std::size_t samples, std::uint64_t seed) {
    spec.validate();
    if (samples < 1) throw std::invalid_argument("sectoriality_check: samples must be >= 1");
    if (spec.w.real() != 0.0)
        throw std::invalid_argument("sectoriality_check: w must be purely imaginary");
    if (disc.scheme != Scheme::HermiteSpectral)
        throw std::invalid_argument("sectoriality_check: Hermite scheme required");
    const double theta = spec.w.imag();
    const DenseMatrix a = assemble_dilated(spec, disc);
    const std::size_t n = disc.n;

    SectorialityReport rep;
    rep.gamma = spec.gamma;
    rep.kappa = spec.kappa;
    rep.theta = theta;
    rep.samples = samples;
    rep.seed = seed;

    const double c2 = std::cos(2.0 * theta), t2 = std::tan(2.0 * theta);
    const double ag = std::abs(spec.gamma);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cxd> psi(n);
    double worst_re = 0.0, worst_sec = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        for (auto& z : psi) z = cxd(gauss(rng), gauss(rng));
        const double nrm = std::sqrt(kernels::znrm2sq(n, psi.data()));
        kernels::zscal(n, 1.0 / nrm, psi.data());
        const std::vector<cxd> apsi = matvec(a, psi);
        const cxd q = kernels::zdotc(n, psi.data(), apsi.data());
        // Q0 = <psi,(p^2 + x^2) psi> is diagonal {2k+1} in this basis
        double q0 = 0.0;
        for (std::size_t k = 0; k < n; ++k) q0 += (2.0 * k + 1.0) * std::norm(psi[k]);

        const double lo = c2 * q0 - ag, hi = c2 * q0 + ag;
        const double slack_re = std::min(q.real() - lo, hi - q.real());
        if (slack_re < 0.0) ++rep.violations_re;
        worst_re = std::min(worst_re, slack_re);

        const double rhs = t2 * q.real() + ag * (1.0 + 1.0 / c2);
        const double slack_sec = rhs - std::abs(q.imag());
        if (slack_sec < 0.0) ++rep.violations_sector;
        worst_sec = std::min(worst_sec, slack_sec);
    }
    rep.max_slack_re = worst_re;
    rep.max_slack_sector = worst_sec;
    return rep;
}

BoundCurve analytic_bound_curve(double kappa, double theta, std::span<const double> gammas,
                                const BoundPolicy& policy) {
    BoundCurve curve;
    curve.kappa = kappa;
    curve.theta = theta;
    curve.leading_exponent = 2.0 / (2.0 + kappa);
    curve.correction_exponent = 1.0 / (1.0 + kappa);

    double sum_log_c = 0.0;
    for (double g : gammas) {
        BoundCurveRow row;
        row.gamma = g;
        row.certified = certified_lower_bound(RealPartSpec::canonical(g, kappa, theta), policy)
                            .certified;
        curve.rows.push_back(row);
        sum_log_c += std::log(row.certified) - curve.leading_exponent * std::log(g);
    }
    curve.fitted_prefactor = std::exp(sum_log_c / static_cast<double>(gammas.size()));
    for (auto& row : curve.rows)
        row.leading_fit = curve.fitted_prefactor * std::pow(row.gamma, curve.leading_exponent);
    return curve;
}

}  // namespace speclab

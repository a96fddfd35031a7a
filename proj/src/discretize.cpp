#include "speclab/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "speclab/errors.hpp"
#include "speclab/kernels.hpp"

namespace speclab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBig = 1e120;
const double kLogBig = std::log(kBig);

}  // namespace

std::size_t Discretization::effective_quad_order() const {
    if (quad_order != 0) return quad_order;
    std::size_t m = 2 * n + 32;
    return m + (m % 2);  // even order: symmetric nodes, no zero node
}

void Discretization::validate() const {
    if (n < 2) throw std::invalid_argument("Discretization: n must be at least 2");
    if (scheme == Scheme::FiniteDifference && !(box > 0.0))
        throw std::invalid_argument("Discretization: FD scheme needs box > 0");
    if (scheme == Scheme::HermiteSpectral && quad_order != 0 && quad_order < 2 * n)
        throw std::invalid_argument("Discretization: quadrature order must be >= 2n");
}

Discretization Discretization::hermite(std::size_t n, std::size_t quad_order) {
    Discretization d;
    d.scheme = Scheme::HermiteSpectral;
    d.n = n;
    d.quad_order = quad_order;
    return d;
}

Discretization Discretization::fd(std::size_t n, double box) {
    Discretization d;
    d.scheme = Scheme::FiniteDifference;
    d.n = n;
    d.box = box;
    return d;
}

// ---------------------------------------------------------------------------
// Hermite functions and quadrature
// ---------------------------------------------------------------------------

std::vector<double> hermite_functions(std::span<const double> x, std::size_t kmax) {
    const std::size_t m = x.size();
    const std::size_t cols = kmax + 1;
    std::vector<double> out(m * cols);
    const double h0 = std::pow(kPi, -0.25);
    for (std::size_t j = 0; j < m; ++j) {
        const double xj = x[j];
        double pexp = -0.5 * xj * xj;  // h_k = t_k * exp(pexp)
        double tprev = h0;
        double tcur = std::numbers::sqrt2 * xj * h0;
        auto emit = [&](std::size_t k, double t) {
            out[j * cols + k] = (pexp > -700.0) ? t * std::exp(std::min(pexp, 0.0)) : 0.0;
        };
        emit(0, tprev);
        if (kmax >= 1) emit(1, tcur);
        for (std::size_t k = 2; k <= kmax; ++k) {
            double tnext = std::sqrt(2.0 / k) * xj * tcur - std::sqrt((k - 1.0) / k) * tprev;
            if (std::abs(tnext) > kBig) {
                tnext /= kBig;
                tcur /= kBig;
                pexp += kLogBig;
            }
            tprev = tcur;
            tcur = tnext;
            emit(k, tcur);
        }
    }
    return out;
}

namespace {

// nodes of the Jacobi matrix with zero diagonal and given off-diagonal,
// symmetrized exactly about 0
std::vector<double> symmetric_jacobi_nodes(std::vector<double> off) {
    const std::size_t m = off.size() + 1;
    std::vector<double> zero(m, 0.0);
    std::vector<double> nodes = eig_sym_tridiag(zero, off, m);
    // enforce exact +- symmetry: mirror the positive half
    std::sort(nodes.begin(), nodes.end());
    for (std::size_t j = 0; j < m / 2; ++j) {
        const double v = 0.5 * (nodes[m - 1 - j] - nodes[j]);
        nodes[m - 1 - j] = v;
        nodes[j] = -v;
    }
    if (m % 2 == 1) nodes[m / 2] = 0.0;
    return nodes;
}

}  // namespace

QuadratureRule gauss_hermite_scaled(std::size_t m) {
    if (m < 1) throw std::invalid_argument("gauss_hermite: order must be positive");
    QuadratureRule rule;
    if (m == 1) {
        rule.nodes = {0.0};
        rule.weights = {std::sqrt(kPi)};  // w*e^{0}
        return rule;
    }
    std::vector<double> off(m - 1);
    for (std::size_t k = 1; k < m; ++k) off[k - 1] = std::sqrt(k / 2.0);
    rule.nodes = symmetric_jacobi_nodes(std::move(off));
    // w_j e^{x_j^2} = 1 / (m * h_{m-1}(x_j)^2)
    std::vector<double> h = hermite_functions(rule.nodes, m - 1);
    rule.weights.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double hm1 = h[j * m + (m - 1)];
        rule.weights[j] = 1.0 / (static_cast<double>(m) * hm1 * hm1);
    }
    return rule;
}

QuadratureRule gauss_hermite(std::size_t m) {
    QuadratureRule rule = gauss_hermite_scaled(m);
    for (std::size_t j = 0; j < m; ++j)
        rule.weights[j] *= std::exp(-rule.nodes[j] * rule.nodes[j]);
    return rule;
}

QuadratureRule gen_hermite_kink_rule(std::size_t s, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("gen_hermite_kink_rule: p must be positive");
    s += s % 2;  // even: no zero node (weight function vanishes there)
    const double mu = p / 2.0;
    // generalized Hermite weight |t|^{2mu} e^{-t^2}: beta_{2j} = j,
    // beta_{2j+1} = j + mu + 1/2
    std::vector<double> off(s - 1);
    for (std::size_t k = 1; k < s; ++k) {
        const double b = (k % 2 == 0) ? k / 2.0 : (k - 1) / 2.0 + mu + 0.5;
        off[k - 1] = std::sqrt(b);
    }
    std::vector<double> t = symmetric_jacobi_nodes(std::move(off));

    // Christoffel weights through the scaled functions
    // hh_k(t) = p_k(t) |t|^mu e^{-t^2/2}
    QuadratureRule rule;
    rule.nodes.resize(s);
    rule.weights.resize(s);
    const double lg = std::lgamma(mu + 0.5);
    for (std::size_t j = 0; j < s; ++j) {
        const double tj = t[j];
        const double at = std::abs(tj);
        double pexp = mu * std::log(at) - 0.5 * tj * tj;
        double uprev = std::exp(-0.5 * lg);  // p_0 = Gamma(mu+1/2)^{-1/2}
        double S = uprev * uprev;
        double ucur = tj / std::sqrt(mu + 0.5) * uprev;
        S += ucur * ucur;
        for (std::size_t k = 2; k < s; ++k) {
            const double bk = (k % 2 == 0) ? k / 2.0 : (k - 1) / 2.0 + mu + 0.5;
            const double bk1 = ((k - 1) % 2 == 0) ? (k - 1) / 2.0 : (k - 2) / 2.0 + mu + 0.5;
            double unext = (tj * ucur - std::sqrt(bk1) * uprev) / std::sqrt(bk);
            if (std::abs(unext) > kBig) {
                unext /= kBig;
                ucur /= kBig;
                S /= kBig * kBig;
                pexp += kLogBig;
            }
            uprev = ucur;
            ucur = unext;
            S += ucur * ucur;
        }
        // W_j e^{t^2} = |t|^{2mu} / (S e^{2 pexp});  target weight
        // Omega_j = 2^{-mu-1/2} W_j e^{t^2} e^{-t^2/2} evaluated at z = t/sqrt(2)
        const double lw = 2.0 * mu * std::log(at) - std::log(S) - 2.0 * pexp;
        rule.nodes[j] = tj / std::numbers::sqrt2;
        rule.weights[j] =
            std::exp(lw - 0.5 * tj * tj - (mu + 0.5) * std::numbers::ln2);
    }
    return rule;
}

// ---------------------------------------------------------------------------
// Hermite-basis assembly
// ---------------------------------------------------------------------------

namespace {

// Non-even-integer singular exponents p = j*kappa + 2i below the cutoff,
// paired with the coefficients d_p of the damped subtraction
// sigma(x) = sum_p d_p |x|^p e^{-x^2} that removes them from the quadrature
// integrand. Matching the |x|^q Taylor coefficients of 1/(1 + e^{kappa w}|x|^kappa)
// gives a small triangular system.
constexpr double kKinkCutoff = 7.0;

bool is_even_integer(double p) {
    const double r = std::round(p);
    return std::abs(p - r) < 1e-9 && std::llround(r) % 2 == 0;
}

std::map<double, cxd> kink_coefficients(double kappa, cxd ekw) {
    std::map<double, cxd> d;
    if (is_even_integer(kappa)) return d;  // analytic kernel, nothing to do
    std::vector<double> ps;
    for (int j = 1; j * kappa < kKinkCutoff; ++j) {
        for (double q = j * kappa; q < kKinkCutoff; q += 2.0) {
            if (is_even_integer(q)) continue;
            bool dup = false;
            for (double seen : ps) dup = dup || std::abs(seen - q) < 1e-9;
            if (!dup) ps.push_back(q);
        }
    }
    std::sort(ps.begin(), ps.end());
    for (double q : ps) {
        // direct Taylor coefficient of the kernel at |x|^q, if q = j*kappa
        cxd a_q = 0.0;
        const double jr = q / kappa;
        if (std::abs(jr - std::round(jr)) < 1e-9) {
            const long long j = std::llround(jr);
            a_q = std::pow(-ekw, static_cast<double>(j));
        }
        cxd acc = 0.0;
        double fact = 1.0;
        for (const auto& [pp, dp] : d) {
            const double gap = q - pp;
            const double ir = gap / 2.0;
            if (gap > 1e-9 && std::abs(ir - std::round(ir)) < 1e-9) {
                const long long i = std::llround(ir);
                fact = 1.0;
                for (long long t = 2; t <= i; ++t) fact *= static_cast<double>(t);
                acc += dp * ((i % 2 == 0) ? 1.0 : -1.0) / fact;
            }
        }
        d[q] = a_q - acc;
    }
    return d;
}

// Accumulates coef_j * h(z_j) h(z_j)^T into per-parity upper-triangular
// real/imag Gram blocks. Pairs of +-z nodes are exploited: only z > 0 enters
// with a doubled coefficient, so odd-parity (m+n odd) entries vanish
// identically.
struct GramAccumulator {
    std::size_t n, ne, no;
    std::vector<double> re_e, im_e, re_o, im_o;  // row-major upper triangles

    explicit GramAccumulator(std::size_t n_)
        : n(n_), ne((n_ + 1) / 2), no(n_ / 2),
          re_e(ne * ne), im_e(ne * ne), re_o(no * no), im_o(no * no) {}

    // nodes must be the strictly positive half (plus optionally one zero node
    // flagged by `center`); coefficients are per positive node, already
    // including the weight
    void add_rule(std::span<const double> znodes, std::span<const cxd> coef) {
        const std::size_t cols = n;  // h_0..h_{n-1}
        std::vector<double> h = hermite_functions(znodes, n - 1);
        std::vector<double> he(ne), ho(no);
        for (std::size_t j = 0; j < znodes.size(); ++j) {
            const double* hj = h.data() + j * cols;
            const bool zero_node = znodes[j] == 0.0;
            const cxd c = (zero_node ? 1.0 : 2.0) * coef[j];
            for (std::size_t k = 0; k < ne; ++k) he[k] = hj[2 * k];
            for (std::size_t k = 0; k < no; ++k) ho[k] = hj[2 * k + 1];
            accumulate(he, c, re_e, im_e, ne);
            if (!zero_node) accumulate(ho, c, re_o, im_o, no);
        }
    }

    static void accumulate(const std::vector<double>& v, cxd c,
                           std::vector<double>& re, std::vector<double>& im,
                           std::size_t nb) {
        for (std::size_t a = 0; a < nb; ++a) {
            const double vre = c.real() * v[a];
            const double vim = c.imag() * v[a];
            if (vre != 0.0)
                kernels::daxpy(nb - a, vre, v.data() + a, re.data() + a * nb + a);
            if (vim != 0.0)
                kernels::daxpy(nb - a, vim, v.data() + a, im.data() + a * nb + a);
        }
    }

    void add_into(DenseMatrix& A) const {
        for (std::size_t a = 0; a < ne; ++a)
            for (std::size_t b = a; b < ne; ++b) {
                const cxd v(re_e[a * ne + b], im_e[a * ne + b]);
                A(2 * a, 2 * b) += v;
                if (a != b) A(2 * b, 2 * a) += v;
            }
        for (std::size_t a = 0; a < no; ++a)
            for (std::size_t b = a; b < no; ++b) {
                const cxd v(re_o[a * no + b], im_o[a * no + b]);
                A(2 * a + 1, 2 * b + 1) += v;
                if (a != b) A(2 * b + 1, 2 * a + 1) += v;
            }
    }
};

DenseMatrix assemble_dilated_hermite(const OperatorSpec& spec, const Discretization& disc) {
    const std::size_t n = disc.n;
    const cxd w = spec.w;
    DenseMatrix A(n, n);
    const cxd c2 = std::cosh(2.0 * w), s2 = std::sinh(2.0 * w);
    for (std::size_t k = 0; k < n; ++k) A(k, k) = (2.0 * k + 1.0) * c2;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const cxd v = std::sqrt((k + 1.0) * (k + 2.0)) * s2;
        A(k, k + 2) = v;
        A(k + 2, k) = v;
    }
    if (spec.gamma == 0.0) return A;

    const cxd ig(0.0, spec.gamma);
    const cxd ekw = std::exp(spec.kappa * w);
    const auto kink = kink_coefficients(spec.kappa, ekw);

    GramAccumulator gram(n);

    // smooth part by plain Gauss-Hermite
    {
        const std::size_t m = disc.effective_quad_order();
        QuadratureRule rule = gauss_hermite_scaled(m);
        std::vector<double> zpos;
        std::vector<cxd> coef;
        for (std::size_t j = 0; j < m; ++j) {
            const double x = rule.nodes[j];
            if (x < 0.0) continue;
            const double axk = pow_abs(x, spec.kappa);
            cxd val = 1.0 / (1.0 + ekw * axk);
            for (const auto& [p, dp] : kink)
                val -= dp * pow_abs(x, p) * std::exp(-x * x);
            zpos.push_back(x);
            coef.push_back(ig * rule.weights[j] * val);
        }
        gram.add_rule(zpos, coef);
    }

    // exact singular components
    for (const auto& [p, dp] : kink) {
        QuadratureRule rule = gen_hermite_kink_rule(n + 16, p);
        std::vector<double> zpos;
        std::vector<cxd> coef;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            if (rule.nodes[j] <= 0.0) continue;
            zpos.push_back(rule.nodes[j]);
            coef.push_back(ig * dp * rule.weights[j]);
        }
        gram.add_rule(zpos, coef);
    }

    gram.add_into(A);
    if (!all_finite(A)) throw NumericalError("assemble_dilated: non-finite entries");
    return A;
}

std::vector<double> fd_grid(std::size_t n, double box, double& h) {
    h = 2.0 * box / static_cast<double>(n + 1);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = -box + h * static_cast<double>(i + 1);
    return x;
}

}  // namespace

ComplexTridiag assemble_dilated_fd(const OperatorSpec& spec, const Discretization& disc) {
    spec.validate();
    disc.validate();
    if (disc.scheme != Scheme::FiniteDifference)
        throw std::invalid_argument("assemble_dilated_fd: FD discretization required");
    double h = 0.0;
    const std::vector<double> x = fd_grid(disc.n, disc.box, h);
    const cxd em2w = std::exp(-2.0 * spec.w), e2w = std::exp(2.0 * spec.w);
    ComplexTridiag t;
    t.diag.resize(disc.n);
    t.off.assign(disc.n - 1, -em2w / (h * h));
    for (std::size_t i = 0; i < disc.n; ++i)
        t.diag[i] = em2w * 2.0 / (h * h) + e2w * x[i] * x[i] + dilated_potential(x[i], spec);
    return t;
}

DenseMatrix assemble_dilated(const OperatorSpec& spec, const Discretization& disc) {
    spec.validate();
    disc.validate();
    if (disc.scheme == Scheme::HermiteSpectral) return assemble_dilated_hermite(spec, disc);
    const ComplexTridiag t = assemble_dilated_fd(spec, disc);
    DenseMatrix A(disc.n, disc.n);
    for (std::size_t i = 0; i < disc.n; ++i) {
        A(i, i) = t.diag[i];
        if (i + 1 < disc.n) {
            A(i, i + 1) = t.off[i];
            A(i + 1, i) = t.off[i];
        }
    }
    return A;
}

SymTridiag assemble_real_part(const RealPartSpec& spec, const Discretization& disc) {
    spec.validate();
    disc.validate();
    if (disc.scheme != Scheme::FiniteDifference)
        throw std::invalid_argument("assemble_real_part: FD scheme required");
    SymTridiag t;
    t.nodes = fd_grid(disc.n, disc.box, t.h);
    t.diag.resize(disc.n);
    t.off.assign(disc.n - 1, -1.0 / (t.h * t.h));
    for (std::size_t i = 0; i < disc.n; ++i)
        t.diag[i] = 2.0 / (t.h * t.h) + real_part_potential(t.nodes[i], spec);
    return t;
}

SymTridiag assemble_anharmonic(const AnharmonicSpec& spec, const Discretization& disc) {
    spec.validate();
    disc.validate();
    if (disc.scheme != Scheme::FiniteDifference)
        throw std::invalid_argument("assemble_anharmonic: FD scheme required");
    SymTridiag t;
    t.nodes = fd_grid(disc.n, disc.box, t.h);
    t.diag.resize(disc.n);
    t.off.assign(disc.n - 1, -1.0 / (t.h * t.h));
    for (std::size_t i = 0; i < disc.n; ++i)
        t.diag[i] = 2.0 / (t.h * t.h) + spec.alpha * pow_abs(t.nodes[i], spec.kappa);
    return t;
}

// ---------------------------------------------------------------------------
// cutoffs
// ---------------------------------------------------------------------------

double cutoff_phi(double t) {
    const double a = std::abs(t);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    const double u = a - 1.0;
    return 1.0 - u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

double cutoff_phi_derivative(double t) {
    const double a = std::abs(t);
    if (a <= 1.0 || a >= 2.0) return 0.0;
    const double u = a - 1.0;
    const double one = 1.0 - u;
    return -30.0 * u * u * one * one * (t > 0.0 ? 1.0 : -1.0);
}

CutoffProfile build_cutoffs(double alpha, double nu, std::vector<double> grid) {
    if (!(alpha > 0.0)) throw std::invalid_argument("build_cutoffs: alpha must be positive");
    if (!(nu > 0.0)) throw std::invalid_argument("build_cutoffs: nu must be positive");
    CutoffProfile c;
    c.alpha = alpha;
    c.nu = nu;
    const double s = std::pow(alpha, nu);
    const std::size_t n = grid.size();
    c.grid = std::move(grid);
    c.J.resize(n);
    c.Jt.resize(n);
    c.dJ.resize(n);
    c.dJt.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = c.grid[i];
        const double J = cutoff_phi(s * x);
        const double dJ = s * cutoff_phi_derivative(s * x);
        const double Jt = std::sqrt(std::max(0.0, 1.0 - J * J));
        c.J[i] = J;
        c.dJ[i] = dJ;
        c.Jt[i] = Jt;
        c.dJt[i] = (Jt > 0.0 && dJ != 0.0) ? -J * dJ / Jt : 0.0;
    }
    return c;
}

double default_fd_box(double alpha_eff, double kappa, double lambda_target) {
    const double width = std::pow(1.0 + std::abs(alpha_eff), -1.0 / (kappa + 2.0));
    return std::max({8.0, 40.0 * width, 1.5 * std::sqrt(std::max(lambda_target, 1.0))});
}

}  // namespace speclab

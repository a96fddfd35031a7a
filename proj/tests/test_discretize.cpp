#include <doctest.h>

#include <cmath>
#include <numbers>

#include "speclab/discretize.hpp"
#include "speclab/linalg.hpp"
#include "speclab/spectral_analysis.hpp"

using namespace speclab;

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
}

TEST_CASE("gauss_hermite: closed forms at m = 1, 2") {
    const QuadratureRule r1 = gauss_hermite(1);
    CHECK(r1.nodes[0] == 0.0);
    CHECK(r1.weights[0] == doctest::Approx(kSqrtPi).epsilon(1e-15));

    const QuadratureRule r2 = gauss_hermite(2);
    CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::numbers::sqrt2).epsilon(1e-14));
    CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-14));
    CHECK(r2.weights[0] == doctest::Approx(kSqrtPi / 2.0).epsilon(1e-13));
    CHECK(r2.weights[1] == doctest::Approx(kSqrtPi / 2.0).epsilon(1e-13));

    CHECK_THROWS_AS(gauss_hermite(0), std::invalid_argument);
}

TEST_CASE("gauss_hermite: m = 20 reproduces the x^4 moment to 1e-13") {
    const QuadratureRule r = gauss_hermite(20);
    double sum = 0.0, total = 0.0;
    for (std::size_t j = 0; j < 20; ++j) {
        const double x = r.nodes[j];
        sum += r.weights[j] * x * x * x * x;
        total += r.weights[j];
    }
    CHECK(std::abs(sum - 0.75 * kSqrtPi) <= 1e-13);
    CHECK(total == doctest::Approx(kSqrtPi).epsilon(1e-14));
}

TEST_CASE("gauss_hermite_scaled stays finite at large order and is orthonormal") {
    const std::size_t m = 2400;
    const QuadratureRule r = gauss_hermite_scaled(m);
    for (double w : r.weights) {
        CHECK(std::isfinite(w));
        CHECK(w > 0.0);
    }
    // quadrature orthonormality of high Hermite functions
    const std::vector<double> h = hermite_functions(r.nodes, 900);
    double diag = 0.0, cross = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double* hj = h.data() + j * 901;
        diag += r.weights[j] * hj[900] * hj[900];
        cross += r.weights[j] * hj[900] * hj[898];
    }
    CHECK(diag == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(cross) <= 1e-12);
}

TEST_CASE("gen_hermite_kink_rule reproduces Gamma-function moments") {
    // <h_a, |x|^p h_b> closed forms:
    //   (0,0): pi^{-1/2} 2^{-(p+1)/2} Gamma((p+1)/2)
    //   (1,1): 2 pi^{-1/2} 2^{-(p+3)/2} Gamma((p+3)/2)
    //   (0,2): pi^{-1/2} 2^{-1/2} [2^{-(p+1)/2} Gamma((p+3)/2) - 2^{-(p+1)/2} Gamma((p+1)/2)]
    for (double p : {1.0, 2.5, 3.0, 5.0}) {
        const QuadratureRule r = gen_hermite_kink_rule(40, p);
        const std::vector<double> h = hermite_functions(r.nodes, 4);
        double y00 = 0.0, y11 = 0.0, y02 = 0.0;
        for (std::size_t j = 0; j < r.nodes.size(); ++j) {
            const double* hj = h.data() + j * 5;
            y00 += r.weights[j] * hj[0] * hj[0];
            y11 += r.weights[j] * hj[1] * hj[1];
            y02 += r.weights[j] * hj[0] * hj[2];
        }
        const double g1 = std::exp(std::lgamma((p + 1.0) / 2.0));
        const double g3 = std::exp(std::lgamma((p + 3.0) / 2.0));
        const double e00 = std::pow(2.0, -(p + 1.0) / 2.0) * g1 / kSqrtPi;
        const double e11 = 2.0 * std::pow(2.0, -(p + 3.0) / 2.0) * g3 / kSqrtPi;
        const double e02 = std::pow(2.0, -(p + 2.0) / 2.0) * (g3 - g1) / kSqrtPi;
        CHECK(y00 == doctest::Approx(e00).epsilon(1e-12));
        CHECK(y11 == doctest::Approx(e11).epsilon(1e-12));
        CHECK(y02 == doctest::Approx(e02).epsilon(1e-11));
    }
}

TEST_CASE("hermite assembly: gamma=0, w=0 is exactly diagonal {1,3,5,...}") {
    OperatorSpec spec;
    spec.gamma = 0.0;
    spec.kappa = 2.0;
    spec.w = 0.0;
    const DenseMatrix a = assemble_dilated(spec, Discretization::hermite(64));
    for (std::size_t i = 0; i < 64; ++i)
        for (std::size_t j = 0; j < 64; ++j) {
            if (i == j)
                CHECK(a(i, j) == cxd(2.0 * i + 1.0, 0.0));
            else
                CHECK(a(i, j) == cxd(0.0, 0.0));
        }
}

TEST_CASE("hermite assembly: real dilation w = u is isospectral to w = 0") {
    OperatorSpec spec;
    spec.gamma = 0.0;
    spec.kappa = 2.0;
    spec.w = 0.35;  // real u
    const DenseMatrix a = assemble_dilated(spec, Discretization::hermite(128));
    const EigenResult r = eig_dense(a);
    REQUIRE(r.converged);
    for (std::size_t k = 0; k < 20; ++k) {
        CHECK(std::abs(r.eigenvalues[k].real() - (2.0 * k + 1.0)) <= 1e-8);
        CHECK(std::abs(r.eigenvalues[k].imag()) <= 1e-8);
    }
}

TEST_CASE("hermite assembly: off-parity entries are machine zero") {
    for (double kappa : {1.0, 2.0, 2.5}) {
        OperatorSpec spec;
        spec.gamma = 7.0;
        spec.kappa = kappa;
        spec.w = cxd(-0.4, 0.15);
        const DenseMatrix a = assemble_dilated(spec, Discretization::hermite(40));
        for (std::size_t i = 0; i < 40; ++i)
            for (std::size_t j = (i % 2) ? 0 : 1; j < 40; j += 2)
                CHECK(a(i, j) == cxd(0.0, 0.0));
        CHECK(parity_decoupled(a));
    }
}

TEST_CASE("hermite potential block is complex symmetric") {
    OperatorSpec spec;
    spec.gamma = 3.0;
    spec.kappa = 3.0;
    spec.w = cxd(-0.2, 0.2);
    const DenseMatrix a = assemble_dilated(spec, Discretization::hermite(30));
    for (std::size_t i = 0; i < 30; ++i)
        for (std::size_t j = 0; j < i; ++j)
            CHECK(std::abs(a(i, j) - a(j, i)) <= 1e-15 * std::abs(a(i, j)) + 1e-18);
}

TEST_CASE("cross-scheme oracle: FD n=2000 matches Hermite n=300 at gamma=5") {
    OperatorSpec spec;
    spec.gamma = 5.0;
    spec.kappa = 2.0;
    spec.w = 0.0;
    SpectrumOptions so;
    so.assess_reliability = false;
    const Spectrum sh = spectrum(spec, Discretization::hermite(300), 5, so);

    const ComplexTridiag t = assemble_dilated_fd(spec, Discretization::fd(2000, 12.0));
    for (std::size_t i = 0; i < 5; ++i) {
        const cxd target = sh.eigenvalues[i];
        auto [lam, resid] = tridiag_eig_near(t, target);
        CHECK(resid <= 1e-10);  // genuine FD eigenpair
        CHECK(std::abs(lam - target) <= 1e-4 * std::abs(target));
    }
}

TEST_CASE("FD real-part assembly: stencil entries and the harmonic limit") {
    const RealPartSpec spec = RealPartSpec::canonical(3.0, 2.0, 1e-9);
    const Discretization disc = Discretization::fd(4000, 10.0);
    const SymTridiag t = assemble_real_part(spec, disc);
    const double h = 20.0 / 4001.0;
    CHECK(t.h == doctest::Approx(h).epsilon(1e-15));
    for (std::size_t i : {0u, 17u, 3999u}) {
        const double x = t.nodes[i];
        CHECK(t.diag[i] ==
              doctest::Approx(2.0 / (h * h) + real_part_potential(x, spec)).epsilon(1e-15));
    }
    CHECK(t.off[5] == doctest::Approx(-1.0 / (h * h)).epsilon(1e-15));
    // theta ~ 0: ground state of -d2 + x^2
    const double lam0 = eig_sym_tridiag(t.diag, t.off, 1)[0];
    CHECK(lam0 == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("FD ground state localizes as gamma grows") {
    auto variance = [](const SymTridiag& t) {
        std::vector<cxd> dc(t.diag.begin(), t.diag.end());
        std::vector<cxd> oc(t.off.begin(), t.off.end());
        ComplexTridiag ct{dc, oc};
        const double lam = eig_sym_tridiag(t.diag, t.off, 1)[0];
        std::vector<cxd> vec;
        tridiag_eig_near(ct, cxd(lam, 0.0), &vec);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < vec.size(); ++i) {
            num += t.nodes[i] * t.nodes[i] * std::norm(vec[i]);
            den += std::norm(vec[i]);
        }
        return num / den;
    };
    const Discretization disc = Discretization::fd(3000, 8.0);
    double prev = 1e9;
    for (double gamma : {1.0, 10.0, 100.0}) {
        const double v = variance(assemble_real_part(
            RealPartSpec::canonical(gamma, 2.0, std::numbers::pi / 8.0), disc));
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("FD anharmonic: harmonic case and first three levels") {
    // h^2/16-type stencil error: |lambda0 - 1| ~ 1.6e-6 at this resolution
    const AnharmonicSpec harm{1.0, 2.0};
    const SymTridiag t = assemble_anharmonic(harm, Discretization::fd(4000, 10.0));
    const double lam0 = eig_sym_tridiag(t.diag, t.off, 1)[0];
    CHECK(std::abs(lam0 - 1.0) <= 2e-6);

    const SymTridiag t8 = assemble_anharmonic(harm, Discretization::fd(8000, 10.0));
    const std::vector<double> ev = eig_sym_tridiag(t8.diag, t8.off, 3);
    CHECK(std::abs(ev[0] - 1.0) <= 1e-5);
    CHECK(std::abs(ev[1] - 3.0) <= 1e-5);
    CHECK(std::abs(ev[2] - 5.0) <= 1e-5);
}

TEST_CASE("FD anharmonic: quartic scaling lambda0(K_16) = lambda0(K_1) 16^{1/3}") {
    auto ground = [](double alpha) {
        const double width = std::pow(alpha, -1.0 / 6.0);
        const SymTridiag t = assemble_anharmonic(
            {alpha, 4.0}, Discretization::fd(static_cast<std::size_t>(16.0 / (width / 500.0)),
                                             8.0));
        return eig_sym_tridiag(t.diag, t.off, 1)[0];
    };
    const double l1 = ground(1.0);
    const double l16 = ground(16.0);
    CHECK(std::abs(l16 / (l1 * std::cbrt(16.0)) - 1.0) <= 1e-3);
    // frozen independent reference for the quartic ground state
    CHECK(l1 == doctest::Approx(1.06036209048418).epsilon(1e-5));
}

TEST_CASE("FD eigenvalues converge at order h^2") {
    const AnharmonicSpec spec{1.0, 2.0};
    double lam[3];
    const std::size_t ns[3] = {1000, 2000, 4000};
    for (int i = 0; i < 3; ++i) {
        const SymTridiag t = assemble_anharmonic(spec, Discretization::fd(ns[i], 10.0));
        lam[i] = eig_sym_tridiag(t.diag, t.off, 1)[0];
    }
    // Richardson: with the exact limit 1, the error shrinks ~4x per halving
    const double e0 = std::abs(lam[0] - 1.0), e1 = std::abs(lam[1] - 1.0),
                 e2 = std::abs(lam[2] - 1.0);
    CHECK(e0 / e1 == doctest::Approx(4.0).epsilon(0.15));
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("cutoffs: plateau, tail, partition of unity, derivative bound") {
    const double alpha = 37.0, nu = 1.0 / 6.0;
    const double s = std::pow(alpha, nu);
    std::vector<double> grid;
    for (double x = -4.0; x <= 4.0; x += 1.0 / 512.0) grid.push_back(x);
    const CutoffProfile c = build_cutoffs(alpha, nu, grid);
    double max_dj = 0.0;
    for (std::size_t i = 0; i < c.grid.size(); ++i) {
        const double ax = std::abs(c.grid[i]);
        if (ax <= 1.0 / s) {
            CHECK(c.J[i] == 1.0);
            CHECK(c.Jt[i] == 0.0);
            CHECK(c.dJ[i] == 0.0);
        }
        if (ax >= 2.0 / s) {
            CHECK(c.J[i] == 0.0);
            CHECK(c.Jt[i] == 1.0);
            CHECK(c.dJt[i] == 0.0);
        }
        CHECK(std::abs(c.J[i] * c.J[i] + c.Jt[i] * c.Jt[i] - 1.0) <= 4e-16);
        max_dj = std::max({max_dj, std::abs(c.dJ[i]), std::abs(c.dJt[i])});
    }
    // |Phi'| peaks at 30/16 = 1.875
    CHECK(max_dj <= 1.875 * s * (1.0 + 1e-12));
    CHECK(max_dj > 0.5 * s);
}

TEST_CASE("cutoff profile function is C^1 across the joints") {
    CHECK(cutoff_phi(1.0) == 1.0);
    CHECK(cutoff_phi(2.0) == 0.0);
    CHECK(cutoff_phi(1.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(cutoff_phi_derivative(1.0) == 0.0);
    CHECK(cutoff_phi_derivative(2.0) == 0.0);
    const double eps = 1e-7;
    // symmetric difference matches the analytic derivative mid-transition
    const double fd = (cutoff_phi(1.3 + eps) - cutoff_phi(1.3 - eps)) / (2.0 * eps);
    CHECK(fd == doctest::Approx(cutoff_phi_derivative(1.3)).epsilon(1e-6));
}

TEST_CASE("discretization validation") {
    CHECK_THROWS_AS(Discretization::fd(1000, -1.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(Discretization::hermite(1).validate(), std::invalid_argument);
    CHECK_THROWS_AS(Discretization::hermite(100, 150).validate(), std::invalid_argument);
    CHECK_NOTHROW(Discretization::hermite(100, 232).validate());
    CHECK(Discretization::hermite(100).effective_quad_order() == 232);
}

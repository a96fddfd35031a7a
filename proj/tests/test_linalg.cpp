#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "speclab/errors.hpp"
#include "speclab/linalg.hpp"

using namespace speclab;

namespace {

DenseMatrix random_matrix(std::size_t n, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DenseMatrix a(n, n);
    for (auto& z : a.data) z = scale * cxd(u(rng), u(rng));
    return a;
}

}  // namespace

TEST_CASE("eig_dense: nilpotent Jordan block") {
    DenseMatrix a(2, 2);
    a(0, 1) = 1.0;
    const EigenResult r = eig_dense(a);
    REQUIRE(r.converged);
    CHECK(std::abs(r.eigenvalues[0]) <= 1e-14);
    CHECK(std::abs(r.eigenvalues[1]) <= 1e-14);
}

TEST_CASE("eig_dense: diagonal matrix is exact") {
    DenseMatrix a(5, 5);
    const cxd d[5] = {{-2.0, 1.0}, {-1.0, 0.0}, {0.5, -3.0}, {1.5, 0.0}, {4.0, 2.0}};
    for (std::size_t i = 0; i < 5; ++i) a(i, i) = d[i];
    const EigenResult r = eig_dense(a);
    REQUIRE(r.converged);
    std::vector<cxd> expect(d, d + 5);
    CHECK(eig_set_distance(r.eigenvalues, expect) <= 1e-14);
}

TEST_CASE("eig_dense: trace and determinant identities on random matrices") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        const DenseMatrix a = random_matrix(6, seed);
        const EigenResult r = eig_dense(a);
        REQUIRE(r.converged);
        cxd sum = 0.0, prod = 1.0;
        for (cxd ev : r.eigenvalues) {
            sum += ev;
            prod *= ev;
        }
        const cxd tr = trace(a);
        const cxd det = lu_determinant(lu_factor(a));
        CHECK(std::abs(sum - tr) <= 1e-10 * std::max(1.0, std::abs(tr)));
        CHECK(std::abs(prod - det) <= 1e-10 * std::max(1.0, std::abs(det)));
    }
}

TEST_CASE("eig_dense: Hermitian input has negligible imaginary parts") {
    DenseMatrix a = random_matrix(12, 77);
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            a(i, j) = (i == j) ? cxd(a(i, j).real(), 0.0) : std::conj(a(j, i));
        }
    const EigenResult r = eig_dense(a);
    REQUIRE(r.converged);
    const double bound = 1e-10 * inf_norm(a);
    for (cxd ev : r.eigenvalues) CHECK(std::abs(ev.imag()) <= bound);
}

TEST_CASE("eig_dense: similarity invariance") {
    const DenseMatrix a = random_matrix(14, 5);
    // well-conditioned P = I + 0.1 R
    DenseMatrix p = random_matrix(14, 6, 0.1);
    for (std::size_t i = 0; i < 14; ++i) p(i, i) += 1.0;
    const LuFactors pf = lu_factor(p);
    DenseMatrix ap(14, 14);
    for (std::size_t j = 0; j < 14; ++j) {
        std::vector<cxd> col(14);
        for (std::size_t i = 0; i < 14; ++i) col[i] = a(i, j);  // A P: column view
    }
    // compute P^{-1} A P column by column
    DenseMatrix apm(14, 14);
    for (std::size_t j = 0; j < 14; ++j) {
        std::vector<cxd> pj(14);
        for (std::size_t i = 0; i < 14; ++i) pj[i] = p(i, j);
        const std::vector<cxd> apj = matvec(a, pj);
        const std::vector<cxd> res = lu_solve(pf, apj);
        for (std::size_t i = 0; i < 14; ++i) apm(i, j) = res[i];
    }
    const EigenResult r1 = eig_dense(a);
    const EigenResult r2 = eig_dense(apm);
    REQUIRE(r1.converged);
    REQUIRE(r2.converged);
    CHECK(eig_set_distance(r1.eigenvalues, r2.eigenvalues) <= 1e-8 * inf_norm(a));
}

TEST_CASE("eig_dense rejects bad input") {
    CHECK_THROWS_AS(eig_dense(DenseMatrix(2, 3)), std::invalid_argument);
    DenseMatrix a(2, 2);
    a(0, 0) = cxd(std::numeric_limits<double>::quiet_NaN(), 0.0);
    CHECK_THROWS_AS(eig_dense(a), std::invalid_argument);
}

TEST_CASE("eig_dense residual bound on request") {
    const DenseMatrix a = random_matrix(10, 31);
    const EigenResult r = eig_dense(a, true);
    REQUIRE(r.converged);
    CHECK(r.residual_bound > 0.0);
    CHECK(r.residual_bound <= 1e-8);
}

TEST_CASE("eig_sym_tridiag: discrete Laplacian closed form") {
    const std::size_t n = 4;
    std::vector<double> d(n, 2.0), e(n - 1, -1.0);
    const std::vector<double> ev = eig_sym_tridiag(d, e, n);
    for (std::size_t j = 1; j <= n; ++j) {
        const double expect = 2.0 - 2.0 * std::cos(j * std::numbers::pi / (n + 1));
        CHECK(ev[j - 1] == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("eig_sym_tridiag: n = 1 and k rules") {
    std::vector<double> d{3.25};
    CHECK(eig_sym_tridiag(d, {}, 1)[0] == 3.25);
    std::vector<double> d4(4, 2.0), e4(3, -1.0);
    CHECK_THROWS_AS(eig_sym_tridiag(d4, e4, 5), std::invalid_argument);
    std::vector<double> ebad(1, 0.0);
    CHECK_THROWS_AS(eig_sym_tridiag(d4, ebad, 1), std::invalid_argument);
}

TEST_CASE("eig_sym_tridiag: bisection (k < n) matches QL (k = n) and dense") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const std::size_t n = 60;
    std::vector<double> d(n), e(n - 1);
    for (auto& x : d) x = u(rng);
    for (auto& x : e) x = u(rng);
    const std::vector<double> some = eig_sym_tridiag(d, e, 12);
    const std::vector<double> full = eig_sym_tridiag(d, e, n);
    for (std::size_t i = 0; i < 12; ++i)
        CHECK(some[i] == doctest::Approx(full[i]).epsilon(1e-11));
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = d[i];
        if (i + 1 < n) a(i, i + 1) = a(i + 1, i) = e[i];
    }
    const EigenResult r = eig_dense(a);
    REQUIRE(r.converged);
    std::vector<cxd> fullc(full.begin(), full.end());
    CHECK(eig_set_distance(r.eigenvalues, fullc) <= 1e-10 * inf_norm(a));
}

TEST_CASE("eig_sym_tridiag: Cauchy interlacing against the trailing submatrix") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::size_t n = 25;
    std::vector<double> d(n), e(n - 1);
    for (auto& x : d) x = 3.0 * u(rng);
    for (auto& x : e) x = u(rng);
    const auto full = eig_sym_tridiag(d, e, n);
    std::vector<double> d2(d.begin(), d.end() - 1), e2(e.begin(), e.end() - 1);
    const auto sub = eig_sym_tridiag(d2, e2, n - 1);
    const double slack = 1e-12 * (1.0 + std::abs(full.back()));
    for (std::size_t j = 0; j + 1 < n; ++j) {
        CHECK(full[j] <= sub[j] + slack);
        CHECK(sub[j] <= full[j + 1] + slack);
    }
}

TEST_CASE("solve_dense basics") {
    const std::size_t n = 4;
    DenseMatrix eye = DenseMatrix::identity(n);
    std::vector<cxd> b{{1, 2}, {3, -1}, {0, 0}, {-2, 5}};
    const auto x = solve_dense(eye, b);
    for (std::size_t i = 0; i < n; ++i) CHECK(x[i] == b[i]);

    DenseMatrix perm(n, n);  // cyclic permutation
    for (std::size_t i = 0; i < n; ++i) perm(i, (i + 1) % n) = 1.0;
    const auto y = solve_dense(perm, b);
    for (std::size_t i = 0; i < n; ++i) CHECK(y[(i + 1) % n] == b[i]);
}

TEST_CASE("solve_dense residual on a random well-conditioned system") {
    const std::size_t n = 50;
    DenseMatrix a = random_matrix(n, 123);
    for (std::size_t i = 0; i < n; ++i) a(i, i) += 8.0;  // diagonally dominant
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cxd> b(n);
    for (auto& z : b) z = cxd(u(rng), u(rng));
    const auto x = solve_dense(a, b);
    const auto ax = matvec(a, x);
    double rnorm = 0.0, xnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        rnorm += std::norm(ax[i] - b[i]);
        xnorm += std::norm(x[i]);
    }
    CHECK(std::sqrt(rnorm) <= 1e-10 * inf_norm(a) * std::sqrt(xnorm));
}

TEST_CASE("solve_dense flags singular matrices") {
    DenseMatrix a(3, 3);
    a(0, 0) = 1.0;
    a(1, 1) = 1.0;  // third row/column zero
    std::vector<cxd> b{1.0, 1.0, 1.0};
    CHECK_THROWS_AS(solve_dense(a, b), NumericalError);
}

TEST_CASE("smallest_singular closed-form cases") {
    DenseMatrix d(3, 3);
    d(0, 0) = 1.0;
    d(1, 1) = cxd(2.0, 1.0);
    d(2, 2) = -4.0;
    CHECK(smallest_singular(d, cxd(2.0, 1.0)) == 0.0);  // exact eigenvalue
    CHECK(smallest_singular(DenseMatrix::identity(5), 0.0) ==
          doctest::Approx(1.0).epsilon(1e-8));

    // 2x2 against the quadratic-formula singular values
    DenseMatrix a(2, 2);
    a(0, 0) = cxd(1.0, 2.0);
    a(0, 1) = cxd(-0.5, 0.25);
    a(1, 0) = cxd(0.0, 1.5);
    a(1, 1) = cxd(-2.0, 0.5);
    const cxd z(0.3, -0.4);
    DenseMatrix m = a;
    m(0, 0) -= z;
    m(1, 1) -= z;
    // singular values of 2x2: s^2 solves s^4 - (|a|^2+..)s^2 + |det|^2 = 0
    const double fro = std::norm(m(0, 0)) + std::norm(m(0, 1)) + std::norm(m(1, 0)) +
                       std::norm(m(1, 1));
    const cxd det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double disc = std::sqrt(fro * fro - 4.0 * std::norm(det));
    const double smin = std::sqrt((fro - disc) / 2.0);
    CHECK(smallest_singular(a, z) == doctest::Approx(smin).epsilon(1e-6));
}

TEST_CASE("hermitian_extreme_eigenvalue matches the dense solver") {
    DenseMatrix a = random_matrix(20, 41);
    for (std::size_t i = 0; i < 20; ++i)
        for (std::size_t j = 0; j < i; ++j) a(i, j) = std::conj(a(j, i));
    for (std::size_t i = 0; i < 20; ++i) a(i, i) = cxd(a(i, i).real(), 0.0);
    const EigenResult r = eig_dense(a);
    REQUIRE(r.converged);
    CHECK(hermitian_extreme_eigenvalue(a, false) ==
          doctest::Approx(r.eigenvalues.front().real()).epsilon(1e-10));
    CHECK(hermitian_extreme_eigenvalue(a, true) ==
          doctest::Approx(r.eigenvalues.back().real()).epsilon(1e-10));
}

TEST_CASE("tridiagonal LU solves against the dense factorization") {
    const std::size_t n = 40;
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexTridiag t;
    t.diag.resize(n);
    t.off.resize(n - 1);
    for (auto& z : t.diag) z = cxd(u(rng), u(rng));
    for (auto& z : t.off) z = cxd(u(rng), u(rng));
    const cxd shift(0.123, -0.456);

    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = t.diag[i] - shift;
        if (i + 1 < n) a(i, i + 1) = a(i + 1, i) = t.off[i];
    }
    std::vector<cxd> b(n);
    for (auto& z : b) z = cxd(u(rng), u(rng));
    const auto xd = solve_dense(a, b);

    std::vector<cxd> xt(b);
    const TridiagLu f = tridiag_factor(t, shift);
    tridiag_solve_inplace(f, xt);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(xt[i] - xd[i]) <= 1e-10);
}

TEST_CASE("tridiag_eig_near finds the eigenvalue closest to the shift") {
    const std::size_t n = 30;
    ComplexTridiag t;
    t.diag.resize(n);
    t.off.assign(n - 1, 0.5);
    for (std::size_t i = 0; i < n; ++i) t.diag[i] = cxd(static_cast<double>(i), 0.1 * i);
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = t.diag[i];
        if (i + 1 < n) a(i, i + 1) = a(i + 1, i) = t.off[i];
    }
    const EigenResult full = eig_dense(a);
    REQUIRE(full.converged);
    const cxd shift(7.3, 0.6);
    auto [lam, resid] = tridiag_eig_near(t, shift);
    CHECK(resid <= 1e-11);
    double best = 1e300;
    cxd nearest;
    for (cxd ev : full.eigenvalues)
        if (std::abs(ev - shift) < best) {
            best = std::abs(ev - shift);
            nearest = ev;
        }
    CHECK(std::abs(lam - nearest) <= 1e-9);
}

TEST_CASE("eig_set_distance pairs greedily with deterministic ties") {
    std::vector<cxd> a{{0.0, 0.0}, {1.0, 0.0}};
    std::vector<cxd> b{{1.0, 0.0}, {0.0, 0.1}};
    CHECK(eig_set_distance(a, b) == doctest::Approx(0.1));
    std::vector<cxd> big{{100.0, 0.0}};
    std::vector<cxd> big2{{100.5, 0.0}};
    CHECK(eig_set_distance_rel(big, big2) == doctest::Approx(0.005));
}

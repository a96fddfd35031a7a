#include <doctest.h>

#include <random>
#include <vector>

#include "speclab/kernels.hpp"

using namespace speclab::kernels;

namespace {

std::vector<cxd> random_vec(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cxd> v(n);
    for (auto& z : v) z = cxd(u(rng), u(rng));
    return v;
}

bool close(cxd a, cxd b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("scalar and simd kernel variants agree") {
    const auto& s = detail::scalar_ops();
    const auto& v = detail::avx2_ops();
    if (!detail::avx2_supported()) {
        MESSAGE("avx2 not available; dispatch falls back to scalar");
        CHECK(&s == &v);
        return;
    }
    // odd lengths exercise the tail loops
    for (std::size_t n : {1u, 2u, 3u, 7u, 64u, 129u, 1000u}) {
        auto x = random_vec(n, 11 * n + 1);
        auto y = random_vec(n, 13 * n + 2);
        const cxd a(0.37, -1.21);
        const double tol = 1e-13 * static_cast<double>(n + 1);

        CHECK(close(s.zdotc(n, x.data(), y.data()), v.zdotc(n, x.data(), y.data()), tol));
        CHECK(close(s.zdotu(n, x.data(), y.data()), v.zdotu(n, x.data(), y.data()), tol));
        CHECK(std::abs(s.znrm2sq(n, x.data()) - v.znrm2sq(n, x.data())) <= tol);

        auto y1 = y, y2 = y;
        s.zaxpy(n, a, x.data(), y1.data());
        v.zaxpy(n, a, x.data(), y2.data());
        for (std::size_t i = 0; i < n; ++i) CHECK(close(y1[i], y2[i], tol));

        auto x1 = x, x2 = x;
        s.zscal(n, a, x1.data());
        v.zscal(n, a, x2.data());
        for (std::size_t i = 0; i < n; ++i) CHECK(close(x1[i], x2[i], tol));

        auto xs = x, ys = y, xv = x, yv = y;
        const double c = 0.832;
        const cxd rot_s(0.4, -0.38);
        s.zrot(n, xs.data(), ys.data(), c, rot_s);
        v.zrot(n, xv.data(), yv.data(), c, rot_s);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(close(xs[i], xv[i], tol));
            CHECK(close(ys[i], yv[i], tol));
        }

        std::vector<double> dx(n), dy1(n), dy2(n);
        for (std::size_t i = 0; i < n; ++i) {
            dx[i] = x[i].real();
            dy1[i] = dy2[i] = y[i].real();
        }
        s.daxpy(n, 0.77, dx.data(), dy1.data());
        v.daxpy(n, 0.77, dx.data(), dy2.data());
        for (std::size_t i = 0; i < n; ++i) CHECK(dy1[i] == doctest::Approx(dy2[i]).epsilon(1e-13));
        CHECK(s.ddot(n, dx.data(), dy1.data()) ==
              doctest::Approx(v.ddot(n, dx.data(), dy2.data())).epsilon(1e-12));
    }
}

TEST_CASE("zrot preserves norms when |c|^2 + |s|^2 = 1") {
    const std::size_t n = 257;
    auto x = random_vec(n, 5);
    auto y = random_vec(n, 6);
    const double before = znrm2sq(n, x.data()) + znrm2sq(n, y.data());
    const double c = 0.6;
    const cxd s(0.48, 0.64);  // c^2 + |s|^2 = 1
    zrot(n, x.data(), y.data(), c, s);
    const double after = znrm2sq(n, x.data()) + znrm2sq(n, y.data());
    CHECK(after == doctest::Approx(before).epsilon(1e-13));
}

TEST_CASE("active isa reports a valid name") {
    const char* name = isa_name(active_isa());
    CHECK((std::string(name) == "avx2" || std::string(name) == "scalar"));
}

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "speclab/operator_model.hpp"

using namespace speclab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("eval_f closed-form points") {
    CHECK(eval_f(0.0, 2.0) == 1.0);
    CHECK(eval_f(1.0, 7.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(eval_f(3.0, 2.0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(eval_f(-3.0, 2.0) == eval_f(3.0, 2.0));
}

TEST_CASE("eval_f is strictly decreasing in |x| and valued in (0,1]") {
    for (double kappa : {0.5, 1.0, 2.0, 7.5}) {
        double prev = eval_f(0.0, kappa);
        CHECK(prev == 1.0);
        for (double x = 0.25; x < 30.0; x *= 1.7) {
            const double v = eval_f(x, kappa);
            CHECK(v > 0.0);
            CHECK(v < prev);
            prev = v;
        }
    }
}

TEST_CASE("theta_max: strip limit intersected with the cos(2 theta) clamp") {
    CHECK(theta_max(2.0) == doctest::Approx(kPi / 4.0 - 1e-2).epsilon(1e-15));
    CHECK(theta_max(4.0) == doctest::Approx(kPi / 8.0).epsilon(1e-15));
    CHECK(theta_max(1.0) == doctest::Approx(kPi / 4.0 - 1e-2).epsilon(1e-15));
    CHECK(theta_max(0.25) == doctest::Approx(kPi / 4.0 - 1e-2).epsilon(1e-15));
    CHECK(theta_max(100.0) == doctest::Approx(kPi / 200.0).epsilon(1e-15));
    CHECK_THROWS_AS(theta_max(0.0), std::invalid_argument);
}

TEST_CASE("dilated_potential reductions and fixed point") {
    OperatorSpec spec;
    spec.gamma = 3.5;
    spec.kappa = 2.0;
    spec.w = 0.0;
    // w = 0 reduces to i gamma f(x)
    for (double x : {0.0, 0.3, 1.0, 4.0}) {
        const cxd v = dilated_potential(x, spec);
        CHECK(v.real() == 0.0);
        CHECK(v.imag() == doctest::Approx(3.5 * eval_f(x, 2.0)).epsilon(1e-15));
    }
    // x = 0: denominator is exactly 1
    spec.w = cxd(0.2, 0.3);
    CHECK(dilated_potential(0.0, spec) == cxd(0.0, 3.5));
}

TEST_CASE("dilated_potential at x=1, kappa=2, w=i pi/8 matches i/(1+e^{i pi/4})") {
    OperatorSpec spec;
    spec.gamma = 1.0;
    spec.kappa = 2.0;
    spec.w = cxd(0.0, kPi / 8.0);
    const cxd v = dilated_potential(1.0, spec);
    // reference evaluated with 40-digit arithmetic
    CHECK(v.real() == doctest::Approx(0.2071067811865475244).epsilon(1e-15));
    CHECK(v.imag() == doctest::Approx(0.5).epsilon(1e-15));
    // independent oracle: manual complex division (a+bi)/(c+di)
    const double c = 1.0 + std::cos(kPi / 4.0), d = std::sin(kPi / 4.0);
    const double den = c * c + d * d;
    CHECK(v.real() == doctest::Approx(d / den).epsilon(1e-14));
    CHECK(v.imag() == doctest::Approx(c / den).epsilon(1e-14));
}

TEST_CASE("real_part_potential values and symmetry") {
    const RealPartSpec spec = RealPartSpec::canonical(10.0, 2.0, kPi / 8.0);
    CHECK(real_part_potential(0.0, spec) == 0.0);
    // V(1) = 1 + 10 tan(pi/4) / |1+e^{i pi/4}|^2 = 11 - 5 sqrt(2)
    CHECK(real_part_potential(1.0, spec) ==
          doctest::Approx(11.0 - 5.0 * std::numbers::sqrt2).epsilon(1e-14));
    for (double x : {0.17, 0.9, 2.4, 11.0})
        CHECK(real_part_potential(-x, spec) == real_part_potential(x, spec));
    // theta -> 0+ limit collapses to x^2
    const RealPartSpec tiny = RealPartSpec::canonical(10.0, 2.0, 1e-9);
    CHECK(real_part_potential(1.7, tiny) == doctest::Approx(1.7 * 1.7).epsilon(1e-7));
}

TEST_CASE("gamma < 0 canonicalizes through H_gamma(theta) = H_{-gamma}(-theta)") {
    const RealPartSpec pos = RealPartSpec::canonical(7.0, 3.0, 0.2);
    const RealPartSpec flip = RealPartSpec::canonical(-7.0, 3.0, -0.2);
    CHECK(flip.gamma == pos.gamma);
    CHECK(flip.theta == pos.theta);
    for (double x : {0.0, 0.4, 1.3, 5.0})
        CHECK(real_part_potential(x, flip) == real_part_potential(x, pos));
    // negative gamma with positive theta would leave V below x^2: rejected
    CHECK_THROWS_AS(RealPartSpec::canonical(-7.0, 3.0, 0.2), std::invalid_argument);
}

TEST_CASE("effective_alpha") {
    CHECK(effective_alpha(RealPartSpec::canonical(1.0, 2.0, kPi / 8.0)) ==
          doctest::Approx(1.0).epsilon(1e-15));  // tan(pi/4)
    RealPartSpec zero;
    zero.gamma = 0.0;
    zero.kappa = 2.0;
    zero.theta = 0.3;
    CHECK(effective_alpha(zero) == 0.0);
    CHECK(effective_alpha(RealPartSpec::canonical(100.0, 1.0, 0.2)) ==
          doctest::Approx(100.0 * std::sin(0.2) / std::cos(0.4)).epsilon(1e-15));
    CHECK(effective_alpha(RealPartSpec::canonical(100.0, 1.0, 0.2)) ==
          doctest::Approx(21.569617222813250).epsilon(1e-14));
}

TEST_CASE("V(x) - x^2 behaves like alpha |x|^kappa near 0") {
    for (double kappa : {1.0, 2.0, 3.5}) {
        const RealPartSpec spec = RealPartSpec::canonical(40.0, kappa, theta_max(kappa) / 2.0);
        const double alpha = effective_alpha(spec);
        double prev_err = 1e9;
        for (double x : {0.3, 0.1, 0.03, 0.01, 0.003}) {
            const double ratio =
                (real_part_potential(x, spec) - x * x) / (alpha * pow_abs(x, kappa));
            const double err = std::abs(ratio - 1.0);
            CHECK(err < prev_err);  // monotone approach to 1
            prev_err = err;
        }
        CHECK(prev_err < 1e-2);
    }
}

TEST_CASE("V >= x^2 whenever gamma sin(kappa theta) > 0") {
    const RealPartSpec spec = RealPartSpec::canonical(5.0, 2.5, 0.3);
    for (double x = -9.0; x <= 9.0; x += 0.37)
        CHECK(real_part_potential(x, spec) >= x * x);
}

TEST_CASE("OperatorSpec validation") {
    OperatorSpec bad;
    bad.gamma = 1.0;
    bad.kappa = 2.0;
    bad.w = cxd(0.0, 0.9);  // beyond theta_max(2)
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.kappa = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    OperatorSpec ok;
    ok.gamma = -3.0;  // either sign allowed here
    ok.kappa = 2.0;
    ok.w = cxd(-1.0, 0.3);
    CHECK_NOTHROW(ok.validate());
}

#pragma once

#include <complex>

// The operator family L_gamma^(w) = -e^{-2w} d^2/dx^2 + e^{2w} x^2
//                                   + i*gamma/(1 + e^{kappa w}|x|^kappa)
// and the closed-form coefficient functions attached to it. Everything in
// this header is a pure function of its arguments.

namespace speclab {

using cxd = std::complex<double>;

// margin subtracted from pi/4 so cos(2*theta) stays safely positive
inline constexpr double kThetaClamp = 1e-2;

/// Largest admissible |Im w|: the analyticity strip pi*min(1/(2k), 1/2)
/// intersected with the sectoriality requirement cos(2*theta) > 0.
double theta_max(double kappa);

/// |x|^p evaluated as exp(p*log|x|); 0 at x = 0 (p > 0).
double pow_abs(double x, double p);

/// 1/(1 + |x|^kappa), in (0, 1].
double eval_f(double x, double kappa);

struct OperatorSpec {
    double gamma = 0.0;
    double kappa = 2.0;
    cxd w = 0.0;  // u + i*theta

    void validate() const;  // kappa > 0, |Im w| < theta_max(kappa)
};

/// i*gamma / (1 + e^{kappa w} |x|^kappa)
cxd dilated_potential(double x, const OperatorSpec& spec);

struct RealPartSpec {
    double gamma = 0.0;
    double kappa = 2.0;
    double theta = 0.0;

    /// Applies H_gamma(theta) = H_{-gamma}(-theta) so gamma >= 0, then checks
    /// 0 < theta < theta_max(kappa).
    static RealPartSpec canonical(double gamma, double kappa, double theta);
    void validate() const;
};

/// V(x) = x^2 + gamma sin(kappa theta)/cos(2 theta)
///            * |x|^kappa / |1 + e^{i kappa theta}|x|^kappa|^2
double real_part_potential(double x, const RealPartSpec& spec);

/// alpha = gamma sin(kappa theta)/cos(2 theta), the coupling of the
/// comparison anharmonic oscillator.
double effective_alpha(const RealPartSpec& spec);

struct AnharmonicSpec {
    double alpha = 1.0;  // > 0
    double kappa = 2.0;  // > 0

    void validate() const;
};

}  // namespace speclab

#include "speclab/operator_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace speclab {

namespace {
constexpr double kPi = std::numbers::pi;
}

double theta_max(double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("theta_max: kappa must be positive");
    const double strip = kPi * std::min(1.0 / (2.0 * kappa), 0.5);
    return std::min(strip, kPi / 4.0 - kThetaClamp);
}

double pow_abs(double x, double p) {
    if (x == 0.0) return 0.0;
    return std::exp(p * std::log(std::abs(x)));
}

double eval_f(double x, double kappa) {
    return 1.0 / (1.0 + pow_abs(x, kappa));
}

void OperatorSpec::validate() const {
    if (!(kappa > 0.0)) throw std::invalid_argument("OperatorSpec: kappa must be positive");
    if (!(std::abs(w.imag()) < theta_max(kappa)))
        throw std::invalid_argument("OperatorSpec: |Im w| must be below theta_max(kappa)");
    if (!std::isfinite(gamma) || !std::isfinite(w.real()))
        throw std::invalid_argument("OperatorSpec: non-finite parameter");
}

cxd dilated_potential(double x, const OperatorSpec& spec) {
    const cxd denom = 1.0 + std::exp(spec.kappa * spec.w) * pow_abs(x, spec.kappa);
    return cxd(0.0, spec.gamma) / denom;
}

RealPartSpec RealPartSpec::canonical(double gamma, double kappa, double theta) {
    RealPartSpec s;
    s.kappa = kappa;
    if (gamma < 0.0) {  // H_gamma(theta) = H_{-gamma}(-theta)
        s.gamma = -gamma;
        s.theta = -theta;
    } else {
        s.gamma = gamma;
        s.theta = theta;
    }
    s.validate();
    return s;
}

void RealPartSpec::validate() const {
    if (!(kappa > 0.0)) throw std::invalid_argument("RealPartSpec: kappa must be positive");
    if (!(gamma >= 0.0)) throw std::invalid_argument("RealPartSpec: gamma must be canonicalized");
    if (!(theta > 0.0 && theta < theta_max(kappa)))
        throw std::invalid_argument("RealPartSpec: theta must lie in (0, theta_max)");
}

double real_part_potential(double x, const RealPartSpec& spec) {
    const double ax = pow_abs(x, spec.kappa);
    const cxd d = 1.0 + std::polar(1.0, spec.kappa * spec.theta) * ax;
    const double coupling =
        spec.gamma * std::sin(spec.kappa * spec.theta) / std::cos(2.0 * spec.theta);
    return x * x + coupling * ax / std::norm(d);
}

double effective_alpha(const RealPartSpec& spec) {
    return spec.gamma * std::sin(spec.kappa * spec.theta) / std::cos(2.0 * spec.theta);
}

void AnharmonicSpec::validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("AnharmonicSpec: alpha must be positive");
    if (!(kappa > 0.0)) throw std::invalid_argument("AnharmonicSpec: kappa must be positive");
}

}  // namespace speclab

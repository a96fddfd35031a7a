#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "speclab/discretize.hpp"
#include "speclab/operator_model.hpp"

namespace speclab {

// nu = 1/(2 + 2 kappa): the localization exponent that balances the two
// error terms of the IMS estimate
inline double localization_nu(double kappa) { return 1.0 / (2.0 + 2.0 * kappa); }

struct BoundReport {
    double gamma = 0.0, kappa = 0.0, theta = 0.0;
    double nu = 0.0;
    double alpha = 0.0;      // effective anharmonic coupling
    double lambda0_H = 0.0;  // ground eigenvalue of H_gamma(theta)
    double certified = 0.0;  // cos(2 theta) * lambda0_H
    double predicted = 0.0;  // cos(2 theta) * lambda0(K_1) * alpha^{2/(2+kappa)}
    double box_used = 0.0;
    std::size_t n_used = 0;
};

struct BoundPolicy {
    double grid_points_per_width = 256.0;  // FD resolution relative to the
                                           // ground-state localization scale
    double box_rel_tol = 1e-6;             // stop doubling the box when lambda0
                                           // moves less than this (relative)
    int max_doublings = 6;
};

/// Lower bound Re lambda >= cos(2 theta) min sigma(H_gamma(theta)) evaluated
/// with an automatically resolved FD grid (box doubling until converged).
BoundReport certified_lower_bound(const RealPartSpec& spec, const BoundPolicy& policy = {});

/// Ground eigenvalue of K_alpha = -d^2 + alpha |x|^kappa on an auto-sized grid.
double anharmonic_ground(const AnharmonicSpec& spec, const BoundPolicy& policy = {});

struct AnharmonicScalingRow {
    double alpha = 0.0, lambda0 = 0.0, predicted = 0.0, rel_dev = 0.0;
};
struct AnharmonicScalingReport {
    double kappa = 0.0, lambda0_K1 = 0.0;
    std::vector<AnharmonicScalingRow> rows;
    double max_rel_dev = 0.0;
    bool pass = false;  // max deviation <= 1e-3
};

/// Checks lambda0(K_alpha) = lambda0(K_1) alpha^{2/(2+kappa)} across the
/// given couplings.
AnharmonicScalingReport anharmonic_scaling_check(double kappa, std::span<const double> alphas,
                                                 const BoundPolicy& policy = {});

struct GAnalysis {
    double alpha = 0.0, kappa = 0.0, nu = 0.0;
    int root_count = 0;       // stationary points found (2 in the asymptotic regime)
    double y1 = 0.0, y2 = 0.0;
    double g_y1 = 0.0, g_y2 = 0.0;
    double edge = 0.0, g_edge = 0.0;  // y = alpha^{-kappa nu}
    double minimizer = 0.0;           // argmin of g over {edge, y1, y2} beyond the edge
    double min_value = 0.0;
};

/// Stationary-point analysis of g(y) = y^{2/kappa} + alpha y/(1+y)^2 over
/// y > alpha^{-kappa nu}; roots of (2/(kappa alpha)) y^{2/kappa-1}(1+y)^3 + 1 = y
/// by bracketed bisection on a log grid.
GAnalysis g_analysis(double alpha, double kappa, double nu);

/// Relative residual of the discrete IMS identity
///   H = Jt H Jt + J H J - (dJ)^2 - (dJt)^2
/// on the FD grid of `disc`; cutoffs must be sampled on that grid.
double ims_identity_residual(const RealPartSpec& spec, const Discretization& disc,
                             const CutoffProfile& cut);

struct SectorialityReport {
    double gamma = 0.0, kappa = 0.0, theta = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    int violations_re = 0;     // outside the cos(2t) Q0 +- |gamma| sandwich
    int violations_sector = 0; // |Im Q| > tan(2t) Re Q + |gamma|(1 + 1/cos 2t)
    double max_slack_re = 0.0, max_slack_sector = 0.0;  // worst margins (>=0 is clean)
};

/// Evaluates Q = <psi, A psi> for random unit vectors in the Hermite basis and
/// checks the sectoriality inequalities of the dilated quadratic form.
SectorialityReport sectoriality_check(const OperatorSpec& spec, const Discretization& disc,
                                      std::size_t samples, std::uint64_t seed = 20240901);

struct BoundCurveRow {
    double gamma = 0.0;
    double certified = 0.0;
    double leading_fit = 0.0;  // c * gamma^{2/(2+kappa)} with shared fitted c
};
struct BoundCurve {
    double kappa = 0.0, theta = 0.0;
    double leading_exponent = 0.0;     // 2/(2+kappa)
    double correction_exponent = 0.0;  // 1/(1+kappa), recorded only
    double fitted_prefactor = 0.0;
    std::vector<BoundCurveRow> rows;
};

/// Certified bounds along a gamma grid together with the fitted leading-order
/// power law.
BoundCurve analytic_bound_curve(double kappa, double theta, std::span<const double> gammas,
                                const BoundPolicy& policy = {});

}  // namespace speclab

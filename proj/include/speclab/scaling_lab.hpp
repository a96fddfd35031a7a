#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "speclab/bounds.hpp"
#include "speclab/spectral_analysis.hpp"

namespace speclab {

struct SweepRecord {
    double gamma = 0.0;
    double abscissa = 0.0;
    double certified = 0.0;
    std::size_t n_used = 0;
    bool reliable = false;
    bool ladder_converged = false;
    double theta = 0.0;
    double u = 0.0;  // real dilation used for this record
};

struct SweepPolicy {
    double theta = -1.0;  // < 0: theta_max(kappa)/2
    std::size_t n0 = 75;
    std::size_t n_cap = 1200;
    double ladder_rel_tol = 1e-4;
    std::size_t k = 4;
    // real dilation u = -log(max(1, alpha_eff))/(kappa+2): keeps the
    // eigenfunction scale O(1) in the basis, so the ladder converges at
    // gamma-independent n (spectrum is u-independent by isospectrality)
    bool auto_scale = true;
    unsigned jobs = 1;
    bool with_certified = true;
    BoundPolicy bound_policy{};
};

/// Per-gamma spectral abscissa with adaptive Hermite resolution plus the
/// certified FD bound. Records that fail the reliability policy are kept but
/// flagged.
std::vector<SweepRecord> sweep(double kappa, std::span<const double> gammas,
                               const SweepPolicy& policy = {});

struct ScalingFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double r_squared = 0.0;
    std::pair<double, double> gamma_range{0.0, 0.0};
    std::size_t records_used = 0;
};

enum class FitColumn { Abscissa, Certified };

/// Log-log least squares over the reliable records inside the window.
/// Throws ReliabilityError with fewer than 4 usable records.
ScalingFit fit_exponent(std::span<const SweepRecord> records,
                        std::pair<double, double> window,
                        FitColumn column = FitColumn::Abscissa);

/// Dilation parameter used by the sweep for a given coupling.
double auto_dilation(double gamma, double kappa, double theta);

}  // namespace speclab

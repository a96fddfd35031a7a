#include "speclab/scaling_lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "speclab/errors.hpp"
#include "speclab/parallel.hpp"

namespace speclab {

double auto_dilation(double gamma, double kappa, double theta) {
    const double alpha =
        std::abs(gamma) * std::sin(kappa * theta) / std::cos(2.0 * theta);
    return -std::log(std::max(1.0, alpha)) / (kappa + 2.0);
}

namespace {

SweepRecord sweep_one(double kappa, double gamma, const SweepPolicy& policy) {
    const double theta = policy.theta < 0.0 ? theta_max(kappa) / 2.0 : policy.theta;
    SweepRecord rec;
    rec.gamma = gamma;
    rec.theta = theta;
    rec.u = policy.auto_scale ? auto_dilation(gamma, kappa, theta) : 0.0;

    OperatorSpec spec;
    spec.gamma = gamma;
    spec.kappa = kappa;
    spec.w = cxd(rec.u, theta);

    SpectrumOptions ladder_opts;
    ladder_opts.assess_reliability = false;

    std::size_t n = std::min(policy.n0, policy.n_cap);
    double prev = 0.0;
    bool have_prev = false, converged = false;
    for (;;) {
        const Discretization disc = Discretization::hermite(n);
        const Spectrum s = spectrum(spec, disc, std::min(policy.k, n), ladder_opts);
        if (have_prev &&
            std::abs(s.abscissa - prev) < policy.ladder_rel_tol * std::abs(s.abscissa)) {
            converged = true;
            break;
        }
        prev = s.abscissa;
        have_prev = true;
        if (n >= policy.n_cap) break;
        n = std::min(2 * n, policy.n_cap);
    }
    rec.ladder_converged = converged;
    rec.n_used = n;

    SpectrumOptions final_opts;  // reliability on
    const Spectrum s = spectrum(spec, Discretization::hermite(n),
                                std::min(policy.k, n), final_opts);
    rec.abscissa = s.abscissa;
    rec.reliable = converged && !s.reliable.empty() && s.reliable.front();

    if (policy.with_certified) {
        const RealPartSpec rp = RealPartSpec::canonical(gamma, kappa, theta);
        rec.certified = certified_lower_bound(rp, policy.bound_policy).certified;
    }
    return rec;
}

}  // namespace

std::vector<SweepRecord> sweep(double kappa, std::span<const double> gammas,
                               const SweepPolicy& policy) {
    if (gammas.empty()) throw std::invalid_argument("sweep: empty gamma list");
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        if (!(gammas[i] > 0.0)) throw std::invalid_argument("sweep: gammas must be positive");
        if (i > 0 && !(gammas[i] > gammas[i - 1]))
            throw std::invalid_argument("sweep: gammas must ascend");
    }
    std::vector<SweepRecord> out(gammas.size());
    parallel_for(gammas.size(), policy.jobs,
                 [&](std::size_t i) { out[i] = sweep_one(kappa, gammas[i], policy); });
    return out;
}

ScalingFit fit_exponent(std::span<const SweepRecord> records,
                        std::pair<double, double> window, FitColumn column) {
    std::vector<std::pair<double, double>> pts;  // (ln gamma, ln value)
    for (const SweepRecord& r : records) {
        if (!r.reliable) continue;
        if (r.gamma < window.first || r.gamma > window.second) continue;
        const double v = (column == FitColumn::Abscissa) ? r.abscissa : r.certified;
        if (!(v > 0.0)) continue;
        pts.emplace_back(std::log(r.gamma), std::log(v));
    }
    if (pts.size() < 4)
        throw ReliabilityError("fit_exponent: fewer than 4 reliable records in window");

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(pts.size());
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / m;

    double ss_res = 0.0, ss_tot = 0.0;
    const double mean = sy / m;
    for (auto [x, y] : pts) {
        const double pred = slope * x + intercept;
        ss_res += (y - pred) * (y - pred);
        ss_tot += (y - mean) * (y - mean);
    }
    ScalingFit fit;
    fit.exponent = slope;
    fit.prefactor = std::exp(intercept);
    fit.r_squared = (ss_tot > 0.0) ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
    fit.gamma_range = window;
    fit.records_used = pts.size();
    return fit;
}

}  // namespace speclab

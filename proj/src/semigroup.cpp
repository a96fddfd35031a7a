#include "speclab/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "speclab/errors.hpp"
#include "speclab/kernels.hpp"
#include "speclab/linalg.hpp"

namespace speclab {

namespace {

constexpr double kLogFloor = -690.0;  // ln(1e-300), the documented rejection level

std::vector<cxd> initial_state(const Discretization& disc, const EvolveOptions& opts) {
    const std::size_t n = disc.n;
    std::vector<cxd> psi(n, cxd(0.0));
    if (disc.scheme == Scheme::HermiteSpectral) {
        // the normalized Gaussian e^{-x^2/2}/pi^{1/4} is basis mode 0
        const std::size_t k = (opts.psi0 == InitialState::Gaussian) ? 0 : opts.mode_index;
        if (k >= n) throw std::invalid_argument("evolve: mode index beyond basis");
        psi[k] = 1.0;
        return psi;
    }
    double h = 2.0 * disc.box / static_cast<double>(n + 1);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = -disc.box + h * static_cast<double>(i + 1);
    if (opts.psi0 == InitialState::Gaussian) {
        for (std::size_t i = 0; i < n; ++i) psi[i] = std::exp(-0.5 * x[i] * x[i]);
    } else {
        const std::vector<double> hf = hermite_functions(x, opts.mode_index);
        for (std::size_t i = 0; i < n; ++i)
            psi[i] = hf[i * (opts.mode_index + 1) + opts.mode_index];
    }
    const double nrm = std::sqrt(kernels::znrm2sq(n, psi.data()));
    kernels::zscal(n, 1.0 / nrm, psi.data());
    return psi;
}

}  // namespace

EvolutionRun evolve(const OperatorSpec& spec, const Discretization& disc, double t_end,
                    double dt, const EvolveOptions& opts) {
    spec.validate();
    disc.validate();
    if (spec.w != cxd(0.0))
        throw std::invalid_argument("evolve: the evolution runs in the physical frame w = 0");
    if (!(dt > 0.0) || !(t_end > dt)) throw std::invalid_argument("evolve: need 0 < dt < t_end");

    EvolutionRun run;
    run.spec = spec;
    run.disc = disc;
    run.dt = dt;

    const std::size_t n = disc.n;
    std::vector<cxd> psi = initial_state(disc, opts);
    const std::size_t steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-12));
    const std::size_t stride =
        (opts.record_every > 0.0)
            ? std::max<std::size_t>(1, static_cast<std::size_t>(opts.record_every / dt))
            : 1;

    double log_norm = 0.0;
    run.t_grid.push_back(0.0);
    run.log_norms.push_back(0.0);

    auto record = [&](double t) {
        run.t_grid.push_back(t);
        run.log_norms.push_back(log_norm);
    };

    if (disc.scheme == Scheme::FiniteDifference) {
        const ComplexTridiag a = assemble_dilated_fd(spec, disc);
        ComplexTridiag lhs, rhs;
        lhs.diag.resize(n);
        rhs.diag.resize(n);
        lhs.off.resize(n - 1);
        rhs.off.resize(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            lhs.diag[i] = 1.0 + 0.5 * dt * a.diag[i];
            rhs.diag[i] = 1.0 - 0.5 * dt * a.diag[i];
        }
        for (std::size_t i = 0; i + 1 < n; ++i) {
            lhs.off[i] = 0.5 * dt * a.off[i];
            rhs.off[i] = -0.5 * dt * a.off[i];
        }
        const TridiagLu lu = tridiag_factor(lhs, cxd(0.0));
        if (lu.exact_singular) throw NumericalError("evolve: implicit step matrix singular");
        for (std::size_t s = 1; s <= steps; ++s) {
            std::vector<cxd> b = matvec(rhs, psi);
            tridiag_solve_inplace(lu, b);
            psi = std::move(b);
            const double ratio = std::sqrt(kernels::znrm2sq(n, psi.data()));
            if (ratio > 1.0 + 1e-13) ++run.contractivity_violations;
            if (!(ratio > 0.0) || !std::isfinite(ratio))
                throw NumericalError("evolve: norm collapsed");
            log_norm += std::log(ratio);
            kernels::zscal(n, 1.0 / ratio, psi.data());
            if (s % stride == 0 || s == steps) record(dt * static_cast<double>(s));
        }
    } else {
        const DenseMatrix a = assemble_dilated(spec, disc);
        DenseMatrix lhs(n, n);
        DenseMatrix rhs(n, n);
        for (std::size_t i = 0; i < n * n; ++i) {
            lhs.data[i] = 0.5 * dt * a.data[i];
            rhs.data[i] = -0.5 * dt * a.data[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            lhs(i, i) += 1.0;
            rhs(i, i) += 1.0;
        }
        const LuFactors lu = lu_factor(std::move(lhs));
        if (lu.exact_singular) throw NumericalError("evolve: implicit step matrix singular");
        for (std::size_t s = 1; s <= steps; ++s) {
            std::vector<cxd> b = matvec(rhs, psi);
            psi = lu_solve(lu, b);
            const double ratio = std::sqrt(kernels::znrm2sq(n, psi.data()));
            if (ratio > 1.0 + 1e-13) ++run.contractivity_violations;
            if (!(ratio > 0.0) || !std::isfinite(ratio))
                throw NumericalError("evolve: norm collapsed");
            log_norm += std::log(ratio);
            kernels::zscal(n, 1.0 / ratio, psi.data());
            if (s % stride == 0 || s == steps) record(dt * static_cast<double>(s));
        }
    }

    run.norms.resize(run.log_norms.size());
    for (std::size_t i = 0; i < run.log_norms.size(); ++i)
        run.norms[i] = std::exp(run.log_norms[i]);
    return run;
}

double decay_rate(const EvolutionRun& run, std::pair<double, double> window) {
    if (run.t_grid.empty()) throw std::invalid_argument("decay_rate: empty run");
    if (!(window.first < window.second) || window.first < run.t_grid.front() - 1e-12 ||
        window.second > run.t_grid.back() + 1e-12)
        throw std::invalid_argument("decay_rate: window outside the recorded span");

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < run.t_grid.size(); ++i) {
        const double t = run.t_grid[i];
        if (t < window.first || t > window.second) continue;
        if (run.log_norms[i] < kLogFloor)
            throw NumericalError("decay_rate: norms underflow inside the window");
        const double y = -run.log_norms[i];
        sx += t;
        sy += y;
        sxx += t * t;
        sxy += t * y;
        ++m;
    }
    if (m < 10) throw std::invalid_argument("decay_rate: need at least 10 samples in window");
    const double dm = static_cast<double>(m);
    return (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
}

}  // namespace speclab

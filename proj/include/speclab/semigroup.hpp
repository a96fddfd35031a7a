#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "speclab/discretize.hpp"
#include "speclab/operator_model.hpp"

namespace speclab {

struct EvolutionRun {
    OperatorSpec spec;  // w = 0
    Discretization disc;
    double dt = 0.0;
    std::vector<double> t_grid;
    std::vector<double> log_norms;  // ln ||psi(t)||; norms may underflow, logs don't
    std::vector<double> norms;      // exp(log_norms), 0 when below range
    int contractivity_violations = 0;
    double fitted_rate = 0.0;  // filled by decay_rate
};

enum class InitialState {
    Gaussian,    // normalized e^{-x^2/2}
    HermiteMode  // basis mode `mode_index`
};

struct EvolveOptions {
    InitialState psi0 = InitialState::Gaussian;
    std::size_t mode_index = 0;
    double record_every = 0.0;  // 0: every step
};

/// Advances  d psi/dt = -A psi  by the implicit midpoint rational step
/// (I + dt/2 A)^{-1} (I - dt/2 A), recording ||psi|| on the way. A-stable and
/// norm-contractive for A with numerical range in Re >= 0.
EvolutionRun evolve(const OperatorSpec& spec, const Discretization& disc, double t_end,
                    double dt, const EvolveOptions& opts = {});

/// Least-squares slope of -ln||psi(t)|| over t in [window.first, window.second].
double decay_rate(const EvolutionRun& run, std::pair<double, double> window);

}  // namespace speclab

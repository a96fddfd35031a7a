#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "speclab/discretize.hpp"
#include "speclab/linalg.hpp"
#include "speclab/operator_model.hpp"

namespace speclab {

struct SpectrumOptions {
    bool assess_reliability = true;
    double sigma_tol = 1e-6;    // resolvent test: sigma_min <= sigma_tol * ||A||
    double refine_tol = 1e-3;   // relative stability under n -> 1.5n
    bool parity_split = true;   // solve even/odd blocks separately when exact
    unsigned jobs = 1;
};

struct Spectrum {
    std::vector<cxd> eigenvalues;  // k lowest by Re, sorted by (Re, Im)
    std::vector<bool> reliable;
    double abscissa = 0.0;         // min Re over the list
    std::size_t reliable_count = 0;
    OperatorSpec spec;
    Discretization disc;
    bool solver_converged = false;
    int iterations = 0;
};

/// k eigenvalues of smallest real part of the assembled operator. A retained
/// eigenvalue is tagged reliable iff sigma_min(A - lambda) <= sigma_tol*||A||
/// and it is stable within refine_tol (relative) under re-assembly at 1.5 n.
Spectrum spectrum(const OperatorSpec& spec, const Discretization& disc, std::size_t k,
                  const SpectrumOptions& opts = {});

struct IsospectralityReport {
    std::vector<double> thetas;
    std::vector<std::vector<double>> distance;  // pairwise greedy set distances
    double max_distance = 0.0;
    double tol = 0.0;
    bool pass = false;
    bool degraded = false;  // an unreliable eigenvalue among the k lowest
};

/// Compares the k lowest eigenvalues across dilation angles (Re w kept from
/// `spec`); passes iff every pairwise set distance is within tol.
IsospectralityReport isospectrality_report(const OperatorSpec& spec,
                                           std::span<const double> thetas, std::size_t k,
                                           double tol, const Discretization& disc,
                                           const SpectrumOptions& opts = {});

struct NumericalRange {
    std::vector<double> angles;   // phi_j, ascending in [0, 2pi)
    std::vector<double> support;  // mu(phi_j) = max eig of He(e^{-i phi_j} A)
    std::vector<cxd> boundary;    // polygon vertices (intersections of
                                  // consecutive support lines)
};

/// Supporting-hyperplane outer polygon of the numerical range.
NumericalRange numerical_range(const DenseMatrix& a, std::size_t n_angles,
                               unsigned jobs = 1);

bool numerical_range_contains(const NumericalRange& r, cxd z, double tol_abs);
bool polygon_convex(std::span<const cxd> vertices, double tol);

/// True iff every eigenvalue lies in every supporting half-plane inflated by
/// tol_abs (use 1e-8 * ||A||).
bool containment_check(const Spectrum& s, const NumericalRange& r, double tol_abs);
bool containment_check(std::span<const cxd> eigenvalues, const NumericalRange& r,
                       double tol_abs);

struct PseudospectrumGrid {
    std::vector<double> re_axis, im_axis;
    std::vector<double> sigma;  // row-major: sigma[i*re_axis.size() + j] at
                                // (re_axis[j], im_axis[i])
};

/// Field of sigma_min(A - z) over a rectangular grid (resolution <= 200x200).
PseudospectrumGrid pseudospectrum_grid(const DenseMatrix& a,
                                       std::pair<double, double> re_range,
                                       std::pair<double, double> im_range,
                                       std::pair<std::size_t, std::size_t> resolution,
                                       unsigned jobs = 1);

/// True when every off-parity entry of `a` is exactly zero.
bool parity_decoupled(const DenseMatrix& a);

}  // namespace speclab

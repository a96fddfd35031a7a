#pragma once

#include <cstddef>
#include <vector>

#include "speclab/linalg.hpp"
#include "speclab/operator_model.hpp"

namespace speclab {

enum class Scheme { HermiteSpectral, FiniteDifference };

struct Discretization {
    Scheme scheme = Scheme::HermiteSpectral;
    std::size_t n = 64;        // basis size / interior grid points
    double box = 0.0;          // FD half-width (Dirichlet walls at +-box)
    std::size_t quad_order = 0;  // Hermite quadrature order M; 0 -> 2n + 32

    std::size_t effective_quad_order() const;
    void validate() const;

    static Discretization hermite(std::size_t n, std::size_t quad_order = 0);
    static Discretization fd(std::size_t n, double box);
};

// -- quadrature --------------------------------------------------------------

struct QuadratureRule {
    std::vector<double> nodes;    // ascending
    std::vector<double> weights;
};

/// Gauss-Hermite rule for weight e^{-x^2} (weights sum to sqrt(pi)).
/// Exact for polynomials of degree <= 2m-1.
QuadratureRule gauss_hermite(std::size_t m);

/// Same nodes with weights w_j * e^{x_j^2}; stays representable at large m
/// where the bare weights underflow. Used for integrands written in terms of
/// Hermite functions.
QuadratureRule gauss_hermite_scaled(std::size_t m);

/// Rule {z_j, W_j} with  integral h_a(x) h_b(x) |x|^p e^{-x^2} dx
///                         = sum_j W_j h_a(z_j) h_b(z_j)
/// exact for orthonormal Hermite functions h with a + b <= 2s - 2 (Gauss rule
/// for the weight |x|^p e^{-2x^2}). Requires p > 0; s is rounded up to even.
QuadratureRule gen_hermite_kink_rule(std::size_t s, double p);

/// Orthonormal Hermite functions h_0..h_kmax at the given points, node-major:
/// out[j*(kmax+1) + k] = h_k(x_j). Internally rescaled so intermediate values
/// never overflow; true underflows flush to zero.
std::vector<double> hermite_functions(std::span<const double> x, std::size_t kmax);

// -- assembled operators ------------------------------------------------------

/// Matrix of L_gamma^(w) in the scheme of `disc`.
/// Hermite: kinetic and x^2 terms from the exact ladder formulas (entries at
/// |row-col| in {0,2}); potential by Gauss-Hermite quadrature, with the
/// non-smooth |x|^p components of the kernel split off and integrated by
/// exact auxiliary rules when kappa is not an even integer. Off-parity
/// entries vanish identically. FD: second-order central differences.
DenseMatrix assemble_dilated(const OperatorSpec& spec, const Discretization& disc);

/// FD operator in tridiagonal form (same entries as the FD dense path).
ComplexTridiag assemble_dilated_fd(const OperatorSpec& spec, const Discretization& disc);

struct SymTridiag {
    std::vector<double> diag, off;
    std::vector<double> nodes;  // interior grid
    double h = 0.0;
    std::size_t size() const { return diag.size(); }
};

/// -d^2/dx^2 + V(x) for V = real_part_potential, FD scheme only.
SymTridiag assemble_real_part(const RealPartSpec& spec, const Discretization& disc);

/// -d^2/dx^2 + alpha |x|^kappa, FD scheme only.
SymTridiag assemble_anharmonic(const AnharmonicSpec& spec, const Discretization& disc);

// -- IMS cutoffs ---------------------------------------------------------------

struct CutoffProfile {
    enum class Phi { QuinticSmoothstep };
    double nu = 0.0, alpha = 0.0;
    Phi phi_kind = Phi::QuinticSmoothstep;
    std::vector<double> grid, J, Jt, dJ, dJt;
};

/// Quintic smoothstep profile: 1 on [-1,1], 0 outside [-2,2], C^2.
double cutoff_phi(double t);
double cutoff_phi_derivative(double t);

/// J(x) = Phi(alpha^nu x), Jt = sqrt(1 - J^2), with analytic derivatives,
/// sampled on `grid`. J^2 + Jt^2 = 1 at every node.
CutoffProfile build_cutoffs(double alpha, double nu, std::vector<double> grid);

/// Default FD box for the real-part/anharmonic ground-state problems.
double default_fd_box(double alpha_eff, double kappa, double lambda_target);

}  // namespace speclab

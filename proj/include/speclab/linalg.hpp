#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

// Dense and tridiagonal eigen/solve kernels. Everything here is
// deterministic given the input bits and reentrant; callers may run
// independent problems concurrently.

namespace speclab {

using cxd = std::complex<double>;

struct DenseMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<cxd> data;  // row-major

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    cxd& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const cxd& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    cxd* row(std::size_t i) { return data.data() + i * cols; }
    const cxd* row(std::size_t i) const { return data.data() + i * cols; }
    bool square() const { return rows == cols; }

    static DenseMatrix identity(std::size_t n);
};

double inf_norm(const DenseMatrix& a);          // max absolute row sum
bool all_finite(const DenseMatrix& a);
std::vector<cxd> matvec(const DenseMatrix& a, std::span<const cxd> x);
cxd trace(const DenseMatrix& a);

struct EigenResult {
    std::vector<cxd> eigenvalues;  // sorted by (Re, Im)
    bool converged = false;
    int iterations = 0;
    double residual_bound = 0.0;  // max ||Av - lv|| / ||A|| over sampled pairs
};

/// Eigenvalues of a general complex matrix: Householder reduction to upper
/// Hessenberg form followed by implicit single-shift QR with deflation.
/// With want_residual, a few eigenpairs are recovered by inverse iteration
/// and the worst relative residual is reported.
EigenResult eig_dense(const DenseMatrix& a, bool want_residual = false);

/// k smallest eigenvalues (ascending) of the symmetric tridiagonal matrix
/// with diagonal `diag` and off-diagonal `off`. Bisection on Sturm counts;
/// k == n switches to the implicit-shift QL full solve.
std::vector<double> eig_sym_tridiag(std::span<const double> diag,
                                    std::span<const double> off, std::size_t k);

/// Extreme eigenvalue of a Hermitian matrix (tridiagonalization + bisection).
double hermitian_extreme_eigenvalue(const DenseMatrix& a, bool largest);

// -- LU --------------------------------------------------------------------

struct LuFactors {
    DenseMatrix lu;              // L (unit diag, below) and U (above) packed
    std::vector<int> perm;       // row pivots as applied
    int sign = 1;                // permutation parity
    bool exact_singular = false; // hit an exactly zero pivot
    double min_pivot = 0.0, max_abs = 0.0;
};

/// Partially pivoted LU. Exactly zero pivots are replaced by a tiny value
/// and flagged so resolvent probes can keep going.
LuFactors lu_factor(DenseMatrix a);
std::vector<cxd> lu_solve(const LuFactors& f, std::span<const cxd> b);
std::vector<cxd> lu_solve_adjoint(const LuFactors& f, std::span<const cxd> b);
cxd lu_determinant(const LuFactors& f);

/// Solve Ax = b. Throws NumericalError when the matrix is singular to
/// working tolerance.
std::vector<cxd> solve_dense(const DenseMatrix& a, std::span<const cxd> b);

/// sigma_min(A - zI) via inverse power iteration on (A-zI)^*(A-zI) with
/// LU-based solves; relative accuracy ~1e-6. Returns 0 on exact singularity.
double smallest_singular(const DenseMatrix& a, cxd z);

// -- eigenvalue multisets ----------------------------------------------------

std::vector<cxd> sort_eigenvalues(std::vector<cxd> v);  // by (Re, Im)

/// Greedy nearest-neighbour pairing of two equal-size multisets, ties broken
/// lexicographically; returns the largest paired distance.
double eig_set_distance(std::span<const cxd> a, std::span<const cxd> b);
/// Same, with every distance divided by max(1, |a_i|).
double eig_set_distance_rel(std::span<const cxd> a, std::span<const cxd> b);

// -- complex symmetric tridiagonal (finite differences) ----------------------

struct ComplexTridiag {
    std::vector<cxd> diag, off;
    std::size_t size() const { return diag.size(); }
};

double inf_norm(const ComplexTridiag& t);
std::vector<cxd> matvec(const ComplexTridiag& t, std::span<const cxd> x);

/// Pivoted LU of (T - shift I), gttrf style (one extra superdiagonal).
struct TridiagLu {
    std::vector<cxd> dl, d, du, du2;
    std::vector<int> ipiv;
    bool exact_singular = false;
};
TridiagLu tridiag_factor(const ComplexTridiag& t, cxd shift);
void tridiag_solve_inplace(const TridiagLu& f, std::span<cxd> x);

/// Eigenvalue of T nearest `shift` by inverse iteration; returns the
/// eigenvalue and the relative residual ||Tv - lv||/||T||.
std::pair<cxd, double> tridiag_eig_near(const ComplexTridiag& t, cxd shift,
                                        std::vector<cxd>* eigenvector = nullptr);

}  // namespace speclab

#pragma once

#include "dgcurv/matrix.hpp"

#include <span>

namespace dgcurv {

/// Solves A x = b by Gaussian elimination with partial pivoting.
/// Throws NumericalError (carrying the offending pivot) when A is singular to working precision.
Vector solve_linear(const Matrix& a, std::span<const double> b);

struct SymmetricEigenResult {
    Vector eigenvalues;  ///< ascending
    Matrix eigenvectors; ///< column k pairs with eigenvalues[k]
};

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Only the upper triangle is trusted; symmetrize first if in doubt.
/// Throws NumericalError if the sweep budget runs out.
SymmetricEigenResult sym_eig(const Matrix& a);

double min_eigenvalue(const Matrix& a);

/// Largest K with A - K·G positive semidefinite, for symmetric A and PSD G.
struct PencilResult {
    /// +inf when G vanishes and A is PSD; -inf when no finite K works.
    double min_ratio = 0.0;
    /// A is PSD on ker(G) and bounded against the complement.
    bool kernel_ok = true;
    /// A direction attaining min_ratio (or violating kernel_ok). Empty when min_ratio is +inf.
    Vector extremal;
    /// Smallest eigenvalue of G classified as non-kernel (diagnostic).
    double gap = 0.0;
};

/// Splits space into ker(G) (eigenvalues <= kernel_rel * max(1, λmax)) and its
/// complement, eliminates the kernel coordinates through the Schur complement of
/// A, then returns the smallest eigenvalue of the G-whitened remainder.
/// Throws NumericalError when G has an eigenvalue too close to the kernel threshold.
PencilResult pencil_min_eig(const Matrix& a, const Matrix& g, double kernel_rel);

}  // namespace dgcurv

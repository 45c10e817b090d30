#pragma once

namespace dgcurv::tol {

// All numerical thresholds used by the library. Not configurable at runtime.

/// Row sums of the transition matrix.
inline constexpr double kRowStochastic = 1e-12;
/// ∞-norm of φᵀM − φᵀ accepted for the stationary vector.
inline constexpr double kPerronResidual = 1e-10;
/// Pivot magnitude below which a linear system is reported singular (relative to ‖A‖∞).
inline constexpr double kSingularPivot = 1e-14;
/// Off-diagonal threshold at which cyclic Jacobi stops (relative to ‖A‖_F).
inline constexpr double kJacobiOffDiag = 1e-15;
inline constexpr int kJacobiMaxSweeps = 50;
/// Eigenvalues of G at most kKernelRelative * max(1, λmax) count as kernel.
inline constexpr double kKernelRelative = 1e-12;
/// Complement eigenvalues below kKernelGapRelative * max(1, λmax) make the kernel split ambiguous.
inline constexpr double kKernelGapRelative = 1e-9;
/// Tolerance for positive semidefiniteness of A on ker(G) (relative to max(1, ‖A‖∞)).
inline constexpr double kKernelPsd = 1e-9;
/// Slack on K_optimal ≥ K_target when deciding whether CD holds.
inline constexpr double kCdSlack = 1e-9;
/// Sampled residuals below −kFalsification count as CD violations.
inline constexpr double kFalsification = 1e-8;
/// Power iteration budget for the stationary-vector fallback.
inline constexpr int kPowerIterations = 200000;
/// Graphs above this size use power iteration instead of the dense solve.
inline constexpr int kDirectSolveMaxN = 4000;

}  // namespace dgcurv::tol

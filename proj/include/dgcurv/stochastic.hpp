#pragma once

#include "dgcurv/graph.hpp"
#include "dgcurv/matrix.hpp"

namespace dgcurv {

/// Lazy random walk: stays put with probability α, otherwise moves to a
/// uniformly chosen out-neighbor.
struct StochasticMatrix {
    Matrix p;
    double alpha = 0.0;

    std::size_t size() const { return p.rows(); }
};

/// Throws std::invalid_argument for α outside [0, 1) and ConnectivityError
/// naming the first vertex without out-edges.
StochasticMatrix build_probability_matrix(const DirectedGraph& g, double alpha);

/// Stationary distribution φ (φᵀM = φᵀ, φ > 0, Σφ = 1).
struct PerronVector {
    Vector phi;
    /// ‖φᵀM − φᵀ‖∞ achieved.
    double residual = 0.0;
};

/// Dense solve of (Mᵀ − I)φ = 0 with the last equation replaced by Σφ = 1;
/// power iteration with Cesàro averaging above tol::kDirectSolveMaxN vertices.
/// Throws NumericalError carrying the residual when the solve is rank deficient,
/// φ is not positive, or the residual exceeds 1e-10 (a reducible chain slipped through).
PerronVector perron_vector(const StochasticMatrix& m);

/// Power iteration with Cesàro averaging. Exposed for tests; converges on
/// periodic chains as well, only more slowly.
Vector perron_vector_power(const StochasticMatrix& m, int max_iterations);

}  // namespace dgcurv

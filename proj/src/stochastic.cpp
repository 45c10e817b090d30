#include "dgcurv/stochastic.hpp"

#include "dgcurv/errors.hpp"
#include "dgcurv/numerics.hpp"
#include "dgcurv/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dgcurv {

StochasticMatrix build_probability_matrix(const DirectedGraph& g, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
    const std::size_t n = g.size();
    StochasticMatrix m{Matrix(n, n), alpha};
    for (VertexId i = 0; i < n; ++i) {
        const auto degree = g.out_degree(i);
        if (degree == 0) throw ConnectivityError("vertex " + g.label(i) + " has no out-edges");
        m.p(i, i) = alpha;
        const double step = (1.0 - alpha) / static_cast<double>(degree);
        for (VertexId j : g.out_neighbors(i)) m.p(i, j) = step;
    }
    return m;
}

namespace {

double fixed_point_residual(const StochasticMatrix& m, std::span<const double> phi) {
    const std::size_t n = m.size();
    Vector image(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (phi[i] == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) image[j] += phi[i] * m.p(i, j);
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(image[j] - phi[j]));
    return worst;
}

void normalize(Vector& phi) {
    const double total = std::accumulate(phi.begin(), phi.end(), 0.0);
    for (double& x : phi) x /= total;
}

}  // namespace

Vector perron_vector_power(const StochasticMatrix& m, int max_iterations) {
    const std::size_t n = m.size();
    Vector x(n, 1.0 / static_cast<double>(n));
    Vector average = x;
    Vector next(n);
    for (int it = 1; it <= max_iterations; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) next[j] += x[i] * m.p(i, j);
        std::swap(x, next);
        const double weight = 1.0 / static_cast<double>(it + 1);
        for (std::size_t k = 0; k < n; ++k) average[k] += weight * (x[k] - average[k]);
        if (it % 64 == 0 && fixed_point_residual(m, average) <= 0.1 * tol::kPerronResidual) break;
        if (it % 64 == 0 && fixed_point_residual(m, x) <= 0.1 * tol::kPerronResidual) {
            average = x;
            break;
        }
    }
    normalize(average);
    return average;
}

PerronVector perron_vector(const StochasticMatrix& m) {
    const std::size_t n = m.size();
    Vector phi;
    if (n <= static_cast<std::size_t>(tol::kDirectSolveMaxN)) {
        Matrix system = m.p.transposed();
        for (std::size_t k = 0; k < n; ++k) system(k, k) -= 1.0;
        Vector rhs(n, 0.0);
        for (std::size_t c = 0; c < n; ++c) system(n - 1, c) = 1.0;
        rhs[n - 1] = 1.0;
        try {
            phi = solve_linear(system, rhs);
        } catch (const NumericalError& e) {
            throw NumericalError("stationary vector is not unique (rank defect, pivot " +
                                     std::to_string(e.residual()) + "); is the graph strongly connected?",
                                 e.residual());
        }
    } else {
        phi = perron_vector_power(m, tol::kPowerIterations);
    }

    normalize(phi);
    const double residual = fixed_point_residual(m, phi);
    const double smallest = *std::min_element(phi.begin(), phi.end());
    if (!(smallest > 0.0))
        throw NumericalError("stationary vector is not strictly positive (min " + std::to_string(smallest) +
                                 "); is the graph strongly connected?",
                             residual);
    if (!(residual <= tol::kPerronResidual))
        throw NumericalError("stationary vector residual " + std::to_string(residual) + " exceeds tolerance",
                             residual);
    return {std::move(phi), residual};
}

}  // namespace dgcurv

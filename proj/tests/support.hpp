#pragma once

// Test-only helpers and independent oracles. Nothing here calls into the
// library code paths the tests are checking.

#include "dgcurv/graph.hpp"
#include "dgcurv/matrix.hpp"

#include <Eigen/Dense>

#include <random>
#include <vector>

namespace testing {

using dgcurv::DirectedGraph;
using dgcurv::Edge;
using dgcurv::Matrix;
using dgcurv::Vector;

// reach[u][v]: v reachable from u (reflexive), by Floyd-Warshall closure.
inline std::vector<std::vector<bool>> reachability(std::size_t n, const std::vector<Edge>& edges) {
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t v = 0; v < n; ++v) r[v][v] = true;
    for (auto [u, v] : edges) r[u][v] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (r[i][k] && r[k][j]) r[i][j] = true;
    return r;
}

inline bool brute_strongly_connected(std::size_t n, const std::vector<Edge>& edges) {
    for (const auto& row : reachability(n, edges))
        for (bool b : row)
            if (!b) return false;
    return true;
}

// All-pairs shortest path lengths by Floyd-Warshall; -1 = unreachable.
inline std::vector<std::vector<long>> brute_distances(std::size_t n, const std::vector<Edge>& edges) {
    const long inf = 1L << 40;
    std::vector<std::vector<long>> d(n, std::vector<long>(n, inf));
    for (std::size_t v = 0; v < n; ++v) d[v][v] = 0;
    for (auto [u, v] : edges) d[u][v] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    for (auto& row : d)
        for (auto& x : row)
            if (x >= inf) x = -1;
    return d;
}

inline std::vector<Edge> random_edges(std::size_t n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (u != v && coin(rng)) edges.emplace_back(u, v);
    return edges;
}

// Seeded strongly connected digraphs with 2 <= n <= max_n, rejection-sampled
// against the brute-force reachability check.
inline std::vector<DirectedGraph> random_sc_suite(std::size_t count, std::uint64_t seed, std::size_t max_n = 8) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> size(2, max_n);
    std::uniform_real_distribution<double> density(0.25, 0.75);
    std::vector<DirectedGraph> out;
    while (out.size() < count) {
        const std::size_t n = size(rng);
        const double p = density(rng);
        auto edges = random_edges(n, p, rng);
        if (brute_strongly_connected(n, edges)) out.emplace_back(n, edges);
    }
    return out;
}

inline Vector random_vector(std::size_t n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> unit(lo, hi);
    Vector v(n);
    for (double& x : v) x = unit(rng);
    return v;
}

inline Matrix random_symmetric(std::size_t n, std::mt19937_64& rng) {
    Matrix m(n, n);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r; c < n; ++c) m(r, c) = m(c, r) = unit(rng);
    return m;
}

inline Eigen::MatrixXd to_eigen(const Matrix& m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
    return e;
}

inline Matrix from_eigen(const Eigen::MatrixXd& e) {
    Matrix m(e.rows(), e.cols());
    for (Eigen::Index r = 0; r < e.rows(); ++r)
        for (Eigen::Index c = 0; c < e.cols(); ++c) m(r, c) = e(r, c);
    return m;
}

inline double oracle_min_eig(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(m));
    return es.eigenvalues()(0);
}

// Largest K with A − K·G ⪰ 0 by bisection on the PSD test. Requires a finite answer in [lo, hi].
inline double bisect_pencil(const Matrix& a, const Matrix& g, double lo, double hi, double psd_tol = 1e-12) {
    auto feasible = [&](double k) { return oracle_min_eig(a - k * g) >= -psd_tol; };
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace testing

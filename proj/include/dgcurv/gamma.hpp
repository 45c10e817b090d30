#pragma once

#include "dgcurv/graph.hpp"
#include "dgcurv/matrix.hpp"
#include "dgcurv/stochastic.hpp"

#include <span>
#include <vector>

namespace dgcurv {

/// Everything needed to apply the directed Laplacian
///
///   (Δf)(i) = 1/(2φ_i) [ Σ_{j ∈ S^out(i)} w_ij (f_j − f_i) + Σ_{k ∈ S^in(i)} w_ki (f_k − f_i) ],
///
/// with w_ij = φ_i (M_α)_ij. The Laplacian is stored densely as L with
/// L_ij = (w_ij + w_ji) / (2φ_i) off the diagonal and zero row sums.
struct OperatorBundle {
    DirectedGraph graph;
    double alpha = 0.0;
    Vector phi;
    /// w_ij = φ_i M_ij, diagonal αφ_i included.
    Matrix weights;
    Matrix laplacian;
    /// neighbors[i]: vertices j != i with L_ij != 0, ascending.
    std::vector<std::vector<VertexId>> neighbors;

    std::size_t size() const { return phi.size(); }
};

Matrix build_weights(const StochasticMatrix& m, std::span<const double> phi);
Matrix laplacian_matrix(const Matrix& weights, std::span<const double> phi);

/// M_α, its stationary vector, weights and Laplacian for g.
OperatorBundle make_bundle(const DirectedGraph& g, double alpha);
/// Same, with a caller-supplied φ (any positive multiple of the stationary vector).
OperatorBundle make_bundle(const DirectedGraph& g, const StochasticMatrix& m, Vector phi);

double laplacian_at(const OperatorBundle& b, std::span<const double> f, VertexId i);
Vector apply_laplacian(const OperatorBundle& b, std::span<const double> f);

/// Γ(f, g)(i) = ½{Δ(fg) − fΔg − gΔf}(i), evaluated from the definition.
double gamma_scalar(const OperatorBundle& b, std::span<const double> f, std::span<const double> g, VertexId i);
Vector gamma_vector(const OperatorBundle& b, std::span<const double> f, std::span<const double> g);

/// Γ₂(f, g)(i) = ½{ΔΓ(f, g) − Γ(f, Δg) − Γ(Δf, g)}(i), evaluated from the definition.
double gamma2_scalar(const OperatorBundle& b, std::span<const double> f, std::span<const double> g, VertexId i);
inline double gamma2_scalar(const OperatorBundle& b, std::span<const double> f, VertexId i) {
    return gamma2_scalar(b, f, f, i);
}

/// Γ(f, f)(i) as the explicit weighted sum of squared differences over S^out(i) and S^in(i).
double gamma_closed_form(const OperatorBundle& b, std::span<const double> f, VertexId i);

// Reconciliation oracles. These evaluate two printed closed forms literally
// (including their N/S summation ranges) next to the definitional values so
// the discrepancies can be measured. They are never used for computation.

/// ΔΓ(f, f)(i) from the definition.
double delta_gamma_definitional(const OperatorBundle& b, std::span<const double> f, VertexId i);
/// 1/(8φ_i) Σ over N^out(i) and N^in(i) of (w/φ)(W^in + W^out), as printed.
double delta_gamma_closed_form(const OperatorBundle& b, std::span<const double> f, VertexId i);
/// 2Γ(Δf, f)(i) from the definition.
double gamma_delta_definitional(const OperatorBundle& b, std::span<const double> f, VertexId i);
/// (Δf)²(i) + 1/(2φ_i)(Σ_out w_ij W_Δ(j) + Σ_in w_ki W_Δ(k)), W_Δ(j) = Δf(j)(f_j − f_i), as printed.
double gamma_delta_closed_form(const OperatorBundle& b, std::span<const double> f, VertexId i);

struct LemmaDeviation {
    double delta_gamma = 0.0;  ///< max |closed form − definition| for ΔΓ(f, f)
    double gamma_delta = 0.0;  ///< max |closed form − definition| for 2Γ(Δf, f)
};
LemmaDeviation reconcile_lemmas(const OperatorBundle& b, std::span<const double> f);

/// Quadratic forms of Γ(·,·)(i), Γ₂(·,·)(i) and Δ(·)(i) at one vertex.
///
/// All three only involve vertices within two Laplacian steps of i; the
/// matrices are stored in those local coordinates, listed in `support`.
struct VertexForms {
    VertexId vertex = 0;
    std::size_t n = 0;
    std::vector<VertexId> support;  ///< ascending, contains `vertex`
    Matrix gamma;                   ///< Γ(f, f)(i) = f_sᵀ G f_s
    Matrix gamma2;                  ///< Γ₂(f, f)(i) = f_sᵀ H f_s
    Vector laplacian_row;           ///< Δf(i) = l · f_s

    Vector restrict(std::span<const double> f) const;
    Vector extend(std::span<const double> local) const;
    Matrix full_gamma() const;
    Matrix full_gamma2() const;
    Vector full_laplacian_row() const;

    double gamma_value(std::span<const double> f) const;
    double gamma2_value(std::span<const double> f) const;
    double laplacian_value(std::span<const double> f) const;
};

/// Polarizes the definitional evaluators on basis pairs (e_a, e_b) of the
/// support and symmetrizes.
VertexForms forms_at(const OperatorBundle& b, VertexId i);

using QuadraticForms = std::vector<VertexForms>;
QuadraticForms assemble_forms(const OperatorBundle& b);

}  // namespace dgcurv

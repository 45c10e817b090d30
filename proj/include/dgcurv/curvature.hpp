#pragma once

#include "dgcurv/gamma.hpp"
#include "dgcurv/graph.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dgcurv {

inline constexpr double kInfiniteDimension = std::numeric_limits<double>::infinity();

/// min over j ∈ S^out(i) of w_ij/φ_j and over k ∈ S^in(i) of w_ki/φ_k.
double local_constant_C(const OperatorBundle& b, VertexId i);

/// Curvature bound C − (1 − α) guaranteed for CD(2, ·).
inline double theorem_bound(double c, double alpha) { return c - (1.0 - alpha); }

struct OptimalK {
    /// Largest K with Γ₂ ≥ (1/m)(Δf)² + K·Γ at the vertex; ±inf in degenerate cases.
    double value = 0.0;
    bool kernel_ok = true;
    /// Minimizing direction on the full vertex set, up to sign and scale.
    Vector extremal;
};

/// Throws std::invalid_argument if m < 1 (m may be +inf).
OptimalK optimal_K(const VertexForms& forms, double m);

/// Γ₂(f,f)(i) − (1/m)(Δf(i))² − K·Γ(f,f)(i) from the assembled forms.
double check_cd(const VertexForms& forms, double m, double k, std::span<const double> f);
/// The same residual from the definitional evaluators.
double check_cd(const OperatorBundle& b, VertexId i, double m, double k, std::span<const double> f);

struct VerifyOptions {
    double m = 2.0;
    /// Random test functions per vertex for the falsification pass.
    int samples = 100;
    std::uint64_t seed = 0;
    /// Curvature to test instead of C − (1 − α).
    std::optional<double> k_override;
    unsigned threads = 1;
};

struct VertexReport {
    std::string label;
    double phi = 0.0;
    double C = 0.0;
    double K_theorem = 0.0;
    double K_optimal = 0.0;
    /// Curvature the inequality was tested against (K_theorem unless overridden).
    double K_checked = 0.0;
    bool cd_holds = true;
    /// C ≥ 1 (happens at α = 0 on regular cycles); informational only.
    bool c_at_least_one = false;
    /// Smallest residual among the random samples (+inf when none were drawn).
    double min_sample_residual = std::numeric_limits<double>::infinity();
    /// Number of samples with residual below −1e-8.
    int sample_violations = 0;
    Vector worst_f;
};

struct Violation {
    VertexId vertex = 0;
    Vector f;
    double residual = 0.0;
    enum class Source { pencil, sample } source = Source::pencil;
};

struct CurvatureReport {
    double alpha = 0.0;
    double m = 2.0;
    int samples = 0;
    std::uint64_t seed = 0;
    std::vector<VertexReport> vertices;
    std::vector<Violation> violations;

    double min_K_theorem() const;
    double min_K_optimal() const;
    bool all_cd_hold() const;
};

/// Analysis of a single vertex; independent of every other vertex. At most two
/// violations are appended per vertex: the pencil witness and the worst sample.
VertexReport analyze_vertex(const OperatorBundle& b, VertexId i, const VerifyOptions& options,
                            std::vector<Violation>* violations = nullptr);

/// Full pipeline: M_α, φ, operators, forms, per-vertex curvature and the
/// randomized falsification pass. Throws ConnectivityError for graphs that are
/// not strongly connected, before any numerics.
CurvatureReport verify_graph(const DirectedGraph& g, double alpha, const VerifyOptions& options = {});

/// Mean-free test function with components drawn uniformly from [−1, 1].
Vector random_test_function(std::size_t n, std::uint64_t seed, VertexId vertex, int sample);

}  // namespace dgcurv

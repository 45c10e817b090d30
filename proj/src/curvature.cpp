#include "dgcurv/curvature.hpp"

#include "dgcurv/errors.hpp"
#include "dgcurv/numerics.hpp"
#include "dgcurv/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace dgcurv {

double local_constant_C(const OperatorBundle& b, VertexId i) {
    const auto& w = b.weights;
    double c = std::numeric_limits<double>::infinity();
    for (VertexId j : b.graph.out_neighbors(i)) c = std::min(c, w(i, j) / b.phi[j]);
    for (VertexId k : b.graph.in_neighbors(i)) c = std::min(c, w(k, i) / b.phi[k]);
    return c;
}

namespace {

double inverse_dimension(double m) {
    if (!(m >= 1.0)) throw std::invalid_argument("dimension m must be >= 1");
    return std::isinf(m) ? 0.0 : 1.0 / m;
}

}  // namespace

OptimalK optimal_K(const VertexForms& forms, double m) {
    const double inv_m = inverse_dimension(m);
    Matrix a = forms.gamma2;
    a -= inv_m * outer(forms.laplacian_row, forms.laplacian_row);
    a.symmetrize();

    auto pencil = pencil_min_eig(a, forms.gamma, tol::kKernelRelative);
    OptimalK out{pencil.min_ratio, pencil.kernel_ok, {}};
    if (!pencil.extremal.empty()) out.extremal = forms.extend(pencil.extremal);
    return out;
}

double check_cd(const VertexForms& forms, double m, double k, std::span<const double> f) {
    const double inv_m = inverse_dimension(m);
    const double lap = forms.laplacian_value(f);
    return forms.gamma2_value(f) - inv_m * lap * lap - k * forms.gamma_value(f);
}

double check_cd(const OperatorBundle& b, VertexId i, double m, double k, std::span<const double> f) {
    const double inv_m = inverse_dimension(m);
    const double lap = laplacian_at(b, f, i);
    return gamma2_scalar(b, f, i) - inv_m * lap * lap - k * gamma_scalar(b, f, f, i);
}

Vector random_test_function(std::size_t n, std::uint64_t seed, VertexId vertex, int sample) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(vertex), static_cast<std::uint32_t>(sample)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Vector f(n);
    double mean = 0.0;
    for (double& x : f) {
        x = unit(rng);
        mean += x;
    }
    mean /= static_cast<double>(n);
    for (double& x : f) x -= mean;
    return f;
}

VertexReport analyze_vertex(const OperatorBundle& b, VertexId i, const VerifyOptions& options,
                            std::vector<Violation>* violations) {
    VertexReport r;
    r.label = b.graph.label(i);
    r.phi = b.phi[i];
    r.C = local_constant_C(b, i);
    r.c_at_least_one = r.C >= 1.0;
    r.K_theorem = theorem_bound(r.C, b.alpha);
    r.K_checked = options.k_override.value_or(r.K_theorem);

    const auto forms = forms_at(b, i);
    const auto opt = optimal_K(forms, options.m);
    r.K_optimal = opt.value;
    r.worst_f = opt.extremal;

    bool holds = r.K_optimal >= r.K_checked - tol::kCdSlack;
    if (!holds && violations && !opt.extremal.empty()) {
        violations->push_back(
            {i, opt.extremal, check_cd(forms, options.m, r.K_checked, opt.extremal), Violation::Source::pencil});
    }

    Vector worst;
    for (int s = 0; s < options.samples; ++s) {
        auto f = random_test_function(b.size(), options.seed, i, s);
        const double residual = check_cd(b, i, options.m, r.K_checked, f);
        if (residual < -tol::kFalsification) ++r.sample_violations;
        if (residual < r.min_sample_residual) {
            r.min_sample_residual = residual;
            worst = std::move(f);
        }
    }
    if (r.sample_violations > 0) {
        holds = false;
        if (violations) violations->push_back({i, std::move(worst), r.min_sample_residual, Violation::Source::sample});
    }
    r.cd_holds = holds;
    return r;
}

CurvatureReport verify_graph(const DirectedGraph& g, double alpha, const VerifyOptions& options) {
    inverse_dimension(options.m);
    if (!is_strongly_connected(g)) throw ConnectivityError("graph is not strongly connected");
    const auto bundle = make_bundle(g, alpha);
    const std::size_t n = g.size();

    CurvatureReport report;
    report.alpha = alpha;
    report.m = options.m;
    report.samples = options.samples;
    report.seed = options.seed;
    report.vertices.resize(n);

    std::vector<std::vector<Violation>> per_vertex(n);
    const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(n)));
    if (workers == 1) {
        for (VertexId i = 0; i < n; ++i) report.vertices[i] = analyze_vertex(bundle, i, options, &per_vertex[i]);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (VertexId i = t; i < n; i += workers)
                        report.vertices[i] = analyze_vertex(bundle, i, options, &per_vertex[i]);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    for (auto& v : per_vertex)
        for (auto& violation : v) report.violations.push_back(std::move(violation));
    return report;
}

double CurvatureReport::min_K_theorem() const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : vertices) best = std::min(best, v.K_theorem);
    return best;
}

double CurvatureReport::min_K_optimal() const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : vertices) best = std::min(best, v.K_optimal);
    return best;
}

bool CurvatureReport::all_cd_hold() const {
    return std::all_of(vertices.begin(), vertices.end(), [](const VertexReport& v) { return v.cd_holds; });
}

}  // namespace dgcurv

#include "dgcurv/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dgcurv {

Matrix build_weights(const StochasticMatrix& m, std::span<const double> phi) {
    const std::size_t n = m.size();
    if (phi.size() != n) throw std::invalid_argument("build_weights: size mismatch");
    Matrix w(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) w(i, j) = phi[i] * m.p(i, j);
    return w;
}

Matrix laplacian_matrix(const Matrix& weights, std::span<const double> phi) {
    const std::size_t n = weights.rows();
    if (phi.size() != n) throw std::invalid_argument("laplacian_matrix: size mismatch");
    Matrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        double diag = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double value = (weights(i, j) + weights(j, i)) / (2.0 * phi[i]);
            l(i, j) = value;
            diag += value;
        }
        l(i, i) = -diag;
    }
    return l;
}

OperatorBundle make_bundle(const DirectedGraph& g, const StochasticMatrix& m, Vector phi) {
    if (phi.size() != g.size() || m.size() != g.size()) throw std::invalid_argument("make_bundle: size mismatch");
    OperatorBundle b{g, m.alpha, std::move(phi), {}, {}, {}};
    b.weights = build_weights(m, b.phi);
    b.laplacian = laplacian_matrix(b.weights, b.phi);
    b.neighbors.resize(g.size());
    for (VertexId i = 0; i < g.size(); ++i) {
        auto& nb = b.neighbors[i];
        nb.assign(g.out_neighbors(i).begin(), g.out_neighbors(i).end());
        nb.insert(nb.end(), g.in_neighbors(i).begin(), g.in_neighbors(i).end());
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return b;
}

OperatorBundle make_bundle(const DirectedGraph& g, double alpha) {
    auto m = build_probability_matrix(g, alpha);
    auto phi = perron_vector(m).phi;
    return make_bundle(g, m, std::move(phi));
}

namespace {

// The evaluators below take functions as callables index -> value so that
// derived functions (products, Δf, Γ(f, g)) can be evaluated lazily on the
// handful of vertices that matter.

template <class F>
double lap(const OperatorBundle& b, const F& f, VertexId i) {
    const double fi = f(i);
    double s = 0.0;
    for (VertexId j : b.neighbors[i]) s += b.laplacian(i, j) * (f(j) - fi);
    return s;
}

template <class F, class G>
double gam(const OperatorBundle& b, const F& f, const G& g, VertexId i) {
    auto fg = [&](VertexId v) { return f(v) * g(v); };
    return 0.5 * (lap(b, fg, i) - f(i) * lap(b, g, i) - g(i) * lap(b, f, i));
}

template <class F, class G>
double gam2(const OperatorBundle& b, const F& f, const G& g, VertexId i) {
    auto gamma_fg = [&](VertexId v) { return gam(b, f, g, v); };
    auto lap_f = [&](VertexId v) { return lap(b, f, v); };
    auto lap_g = [&](VertexId v) { return lap(b, g, v); };
    return 0.5 * (lap(b, gamma_fg, i) - gam(b, f, lap_g, i) - gam(b, lap_f, g, i));
}

auto as_fn(std::span<const double> f) {
    return [f](VertexId v) { return f[v]; };
}

void check_size(const OperatorBundle& b, std::span<const double> f) {
    if (f.size() != b.size()) throw std::invalid_argument("function size does not match graph");
}

}  // namespace

double laplacian_at(const OperatorBundle& b, std::span<const double> f, VertexId i) {
    check_size(b, f);
    return lap(b, as_fn(f), i);
}

Vector apply_laplacian(const OperatorBundle& b, std::span<const double> f) {
    check_size(b, f);
    Vector out(b.size());
    for (VertexId i = 0; i < b.size(); ++i) out[i] = lap(b, as_fn(f), i);
    return out;
}

double gamma_scalar(const OperatorBundle& b, std::span<const double> f, std::span<const double> g, VertexId i) {
    check_size(b, f);
    check_size(b, g);
    return gam(b, as_fn(f), as_fn(g), i);
}

Vector gamma_vector(const OperatorBundle& b, std::span<const double> f, std::span<const double> g) {
    check_size(b, f);
    check_size(b, g);
    Vector out(b.size());
    for (VertexId i = 0; i < b.size(); ++i) out[i] = gam(b, as_fn(f), as_fn(g), i);
    return out;
}

double gamma2_scalar(const OperatorBundle& b, std::span<const double> f, std::span<const double> g, VertexId i) {
    check_size(b, f);
    check_size(b, g);
    return gam2(b, as_fn(f), as_fn(g), i);
}

double gamma_closed_form(const OperatorBundle& b, std::span<const double> f, VertexId i) {
    check_size(b, f);
    const auto& w = b.weights;
    double s = 0.0;
    for (VertexId j : b.graph.out_neighbors(i)) s += w(i, j) * (f[j] - f[i]) * (f[j] - f[i]);
    for (VertexId k : b.graph.in_neighbors(i)) s += w(k, i) * (f[k] - f[i]) * (f[k] - f[i]);
    return s / (4.0 * b.phi[i]);
}

double delta_gamma_definitional(const OperatorBundle& b, std::span<const double> f, VertexId i) {
    check_size(b, f);
    auto ff = as_fn(f);
    auto gamma_ff = [&](VertexId v) { return gam(b, ff, ff, v); };
    return lap(b, gamma_ff, i);
}

namespace {

std::vector<VertexId> closed(VertexId v, std::span<const VertexId> open) {
    std::vector<VertexId> out{v};
    out.insert(out.end(), open.begin(), open.end());
    return out;
}

}  // namespace

double delta_gamma_closed_form(const OperatorBundle& b, std::span<const double> f, VertexId i) {
    check_size(b, f);
    const auto& g = b.graph;
    const auto& w = b.weights;
    auto sq = [](double x) { return x * x; };

    // W^out(v) + W^in(v) with the reference vertex i, ranges N^out(v) and N^in(v).
    auto w_sum = [&](VertexId v) {
        const double base = sq(f[v] - f[i]);
        double total = 0.0;
        for (VertexId a : closed(v, g.out_neighbors(v))) total += w(v, a) * (sq(f[a] - f[v]) - base);
        for (VertexId c : closed(v, g.in_neighbors(v))) total += w(c, v) * (sq(f[c] - f[v]) - base);
        return total;
    };

    double s = 0.0;
    for (VertexId j : closed(i, g.out_neighbors(i))) s += w(i, j) / b.phi[j] * w_sum(j);
    for (VertexId k : closed(i, g.in_neighbors(i))) s += w(k, i) / b.phi[k] * w_sum(k);
    return s / (8.0 * b.phi[i]);
}

double gamma_delta_definitional(const OperatorBundle& b, std::span<const double> f, VertexId i) {
    check_size(b, f);
    auto ff = as_fn(f);
    auto lap_f = [&](VertexId v) { return lap(b, ff, v); };
    return 2.0 * gam(b, lap_f, ff, i);
}

double gamma_delta_closed_form(const OperatorBundle& b, std::span<const double> f, VertexId i) {
    check_size(b, f);
    const auto& g = b.graph;
    const auto& w = b.weights;
    auto ff = as_fn(f);
    auto w_delta = [&](VertexId v) { return lap(b, ff, v) * (f[v] - f[i]); };

    double s = 0.0;
    for (VertexId j : g.out_neighbors(i)) s += w(i, j) * w_delta(j);
    for (VertexId k : g.in_neighbors(i)) s += w(k, i) * w_delta(k);
    const double lap_i = lap(b, ff, i);
    return lap_i * lap_i + s / (2.0 * b.phi[i]);
}

LemmaDeviation reconcile_lemmas(const OperatorBundle& b, std::span<const double> f) {
    LemmaDeviation d;
    for (VertexId i = 0; i < b.size(); ++i) {
        d.delta_gamma = std::max(d.delta_gamma,
                                 std::abs(delta_gamma_closed_form(b, f, i) - delta_gamma_definitional(b, f, i)));
        d.gamma_delta = std::max(d.gamma_delta,
                                 std::abs(gamma_delta_closed_form(b, f, i) - gamma_delta_definitional(b, f, i)));
    }
    return d;
}

Vector VertexForms::restrict(std::span<const double> f) const {
    if (f.size() != n) throw std::invalid_argument("function size does not match graph");
    Vector local(support.size());
    for (std::size_t k = 0; k < support.size(); ++k) local[k] = f[support[k]];
    return local;
}

Vector VertexForms::extend(std::span<const double> local) const {
    Vector f(n, 0.0);
    for (std::size_t k = 0; k < support.size(); ++k) f[support[k]] = local[k];
    return f;
}

namespace {

Matrix expand(const Matrix& local, const std::vector<VertexId>& support, std::size_t n) {
    Matrix m(n, n);
    for (std::size_t r = 0; r < support.size(); ++r)
        for (std::size_t c = 0; c < support.size(); ++c) m(support[r], support[c]) = local(r, c);
    return m;
}

}  // namespace

Matrix VertexForms::full_gamma() const { return expand(gamma, support, n); }
Matrix VertexForms::full_gamma2() const { return expand(gamma2, support, n); }
Vector VertexForms::full_laplacian_row() const { return extend(laplacian_row); }

double VertexForms::gamma_value(std::span<const double> f) const {
    const auto x = restrict(f);
    return bilinear(gamma, x, x);
}

double VertexForms::gamma2_value(std::span<const double> f) const {
    const auto x = restrict(f);
    return bilinear(gamma2, x, x);
}

double VertexForms::laplacian_value(std::span<const double> f) const { return dot(laplacian_row, restrict(f)); }

VertexForms forms_at(const OperatorBundle& b, VertexId i) {
    VertexForms forms;
    forms.vertex = i;
    forms.n = b.size();

    // Two Laplacian steps from i.
    auto& s = forms.support;
    s.push_back(i);
    for (VertexId j : b.neighbors[i]) {
        s.push_back(j);
        s.insert(s.end(), b.neighbors[j].begin(), b.neighbors[j].end());
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());

    const std::size_t k = s.size();
    forms.gamma = Matrix(k, k);
    forms.gamma2 = Matrix(k, k);
    forms.laplacian_row.assign(k, 0.0);

    for (std::size_t p = 0; p < k; ++p) {
        const VertexId a = s[p];
        auto ea = [a](VertexId v) { return v == a ? 1.0 : 0.0; };
        forms.laplacian_row[p] = lap(b, ea, i);
        for (std::size_t q = p; q < k; ++q) {
            const VertexId c = s[q];
            auto ec = [c](VertexId v) { return v == c ? 1.0 : 0.0; };
            const double g = 0.5 * (gam(b, ea, ec, i) + gam(b, ec, ea, i));
            const double h = 0.5 * (gam2(b, ea, ec, i) + gam2(b, ec, ea, i));
            forms.gamma(p, q) = forms.gamma(q, p) = g;
            forms.gamma2(p, q) = forms.gamma2(q, p) = h;
        }
    }
    return forms;
}

QuadraticForms assemble_forms(const OperatorBundle& b) {
    QuadraticForms out;
    out.reserve(b.size());
    for (VertexId i = 0; i < b.size(); ++i) out.push_back(forms_at(b, i));
    return out;
}

}  // namespace dgcurv

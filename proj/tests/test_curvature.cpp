#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgcurv/curvature.hpp"
#include "dgcurv/errors.hpp"
#include "support.hpp"

#include <cmath>
#include <numeric>

using namespace dgcurv;

namespace {

const std::vector<DirectedGraph>& suite() {
    static const auto graphs = testing::random_sc_suite(100, 41);
    return graphs;
}

constexpr double kAlphas[] = {0.0, 0.1, 0.5, 0.9};

// A = H − (1/m) l lᵀ on the full vertex set.
Matrix cd_form(const VertexForms& f, double m) {
    const auto l = f.full_laplacian_row();
    Matrix a = f.full_gamma2();
    if (!std::isinf(m)) a -= (1.0 / m) * outer(l, l);
    return a;
}

}  // namespace

TEST_CASE("local_constant_C and theorem_bound") {
    auto two = make_bundle(parse_edge_list("a b\nb a"), 0.5);
    CHECK(local_constant_C(two, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(theorem_bound(0.5, 0.5) == 0.0);

    auto c3 = make_bundle(make_cycle(3), 0.0);
    for (VertexId i = 0; i < 3; ++i) CHECK(local_constant_C(c3, i) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(theorem_bound(1.0, 0.0) == 0.0);
    CHECK(theorem_bound(0.3, 0.9) == doctest::Approx(0.2).epsilon(1e-15));

    for (double alpha : {0.0, 0.2, 0.7, 0.95}) {
        auto b = make_bundle(parse_edge_list("a b\nb a"), alpha);
        CHECK(local_constant_C(b, 1) == doctest::Approx(1.0 - alpha).epsilon(1e-14));
    }

    for (const auto& g : suite())
        for (double alpha : kAlphas) {
            auto b = make_bundle(g, alpha);
            for (VertexId i = 0; i < g.size(); ++i) CHECK(local_constant_C(b, i) > 0.0);
        }
}

TEST_CASE("C is invariant under phi scaling") {
    for (const auto& g : suite()) {
        auto m = build_probability_matrix(g, 0.3);
        auto phi = perron_vector(m).phi;
        Vector doubled = phi;
        for (double& x : doubled) x *= 2.0;
        auto b1 = make_bundle(g, m, phi);
        auto b2 = make_bundle(g, m, doubled);
        for (VertexId i = 0; i < g.size(); ++i)
            CHECK(std::abs(local_constant_C(b1, i) - local_constant_C(b2, i)) <= 1e-12);
    }
}

TEST_CASE("optimal_K on the two-cycle") {
    // One-dimensional reduction: K* = 2(1 − α)(1 − 1/m).
    for (double alpha : {0.0, 0.5, 0.8}) {
        auto b = make_bundle(parse_edge_list("a b\nb a"), alpha);
        for (double m : {1.0, 2.0, 10.0, kInfiniteDimension}) {
            const double inv_m = std::isinf(m) ? 0.0 : 1.0 / m;
            const double expected = 2.0 * (1.0 - alpha) * (1.0 - inv_m);
            for (VertexId i = 0; i < 2; ++i) {
                auto k = optimal_K(forms_at(b, i), m);
                CHECK(k.kernel_ok);
                CHECK(std::abs(k.value - expected) <= 1e-12);
            }
        }
    }
    auto b = make_bundle(parse_edge_list("a b\nb a"), 0.5);
    CHECK(optimal_K(forms_at(b, 0), 2.0).value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(optimal_K(forms_at(b, 0), kInfiniteDimension).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(optimal_K(forms_at(b, 0), 0.5), std::invalid_argument);
}

TEST_CASE("optimal_K agrees with bisection on the full-space pencil") {
    for (std::size_t t = 0; t < 30; ++t) {
        const auto& g = suite()[t];
        auto b = make_bundle(g, kAlphas[t % 4]);
        for (VertexId i = 0; i < g.size(); ++i) {
            auto forms = forms_at(b, i);
            const double k = optimal_K(forms, 2.0).value;
            const double expected = testing::bisect_pencil(cd_form(forms, 2.0), forms.full_gamma(), -100.0, 100.0);
            CHECK(std::abs(k - expected) <= 1e-6);
        }
    }
}

TEST_CASE("theorem bound holds: K_optimal(m = 2) >= C - (1 - alpha)") {
    for (const auto& g : suite())
        for (double alpha : kAlphas) {
            auto b = make_bundle(g, alpha);
            for (VertexId i = 0; i < g.size(); ++i) {
                const double bound = theorem_bound(local_constant_C(b, i), alpha);
                CHECK(optimal_K(forms_at(b, i), 2.0).value >= bound - 1e-9);
            }
        }
}

TEST_CASE("optimal_K is nondecreasing in m") {
    for (const auto& g : suite())
        for (double alpha : {0.0, 0.5}) {
            auto b = make_bundle(g, alpha);
            for (VertexId i = 0; i < g.size(); ++i) {
                auto forms = forms_at(b, i);
                double previous = -std::numeric_limits<double>::infinity();
                for (double m : {1.0, 2.0, 10.0, kInfiniteDimension}) {
                    const double k = optimal_K(forms, m).value;
                    CHECK(k >= previous - 1e-10);
                    previous = k;
                }
            }
        }
}

TEST_CASE("pencil consistency around K_optimal") {
    for (const auto& g : suite())
        for (double alpha : kAlphas) {
            auto b = make_bundle(g, alpha);
            for (VertexId i = 0; i < g.size(); ++i) {
                auto forms = forms_at(b, i);
                const double k = optimal_K(forms, 2.0).value;
                const Matrix a = cd_form(forms, 2.0);
                const Matrix gg = forms.full_gamma();
                CHECK(testing::oracle_min_eig(a - (k - 1e-6) * gg) >= -1e-9);
                CHECK(testing::oracle_min_eig(a - (k + 1e-6) * gg) < 0.0);
            }
        }
}

TEST_CASE("check_cd") {
    auto b = make_bundle(parse_edge_list("a b\nb a"), 0.5);
    auto forms = forms_at(b, 0);
    const Vector f{0.0, 1.0};
    CHECK(check_cd(forms, 2.0, 0.0, f) == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(check_cd(b, 0, 2.0, 0.0, f) == doctest::Approx(0.125).epsilon(1e-14));
    for (double k : {-3.0, 0.0, 5.0})
        for (double m : {1.0, 2.0, kInfiniteDimension}) CHECK(check_cd(b, 0, m, k, Vector{2.0, 2.0}) == 0.0);
}

TEST_CASE("tightness: the extremal function attains K_optimal") {
    for (const auto& g : suite())
        for (double alpha : kAlphas) {
            auto b = make_bundle(g, alpha);
            for (VertexId i = 0; i < g.size(); ++i) {
                auto forms = forms_at(b, i);
                auto k = optimal_K(forms, 2.0);
                REQUIRE(k.extremal.size() == g.size());
                CHECK(std::abs(check_cd(forms, 2.0, k.value, k.extremal)) <= 1e-8);
                CHECK(std::abs(check_cd(b, i, 2.0, k.value, k.extremal)) <= 1e-8);
                CHECK(check_cd(b, i, 2.0, k.value + 1e-4, k.extremal) < 0.0);
            }
        }
}

TEST_CASE("falsification: random functions never beat min(K_theorem, K_optimal)") {
    for (const auto& g : suite())
        for (double alpha : kAlphas) {
            auto b = make_bundle(g, alpha);
            for (VertexId i = 0; i < g.size(); ++i) {
                const double k = std::min(theorem_bound(local_constant_C(b, i), alpha),
                                          optimal_K(forms_at(b, i), 2.0).value);
                for (int s = 0; s < 50; ++s)
                    CHECK(check_cd(b, i, 2.0, k, random_test_function(g.size(), 9, i, s)) >= -1e-8);
            }
        }
}

TEST_CASE("random_test_function is mean free and seeded") {
    auto f = random_test_function(7, 3, 2, 5);
    CHECK(std::abs(std::accumulate(f.begin(), f.end(), 0.0)) <= 1e-14);
    for (double x : f) CHECK(std::abs(x) <= 2.0);
    CHECK(f == random_test_function(7, 3, 2, 5));
    CHECK(f != random_test_function(7, 3, 2, 6));
    CHECK(f != random_test_function(7, 4, 2, 5));
}

TEST_CASE("verify_graph: small examples") {
    auto two = verify_graph(parse_edge_list("a b\nb a"), 0.5);
    REQUIRE(two.vertices.size() == 2);
    for (const auto& v : two.vertices) {
        CHECK(v.cd_holds);
        CHECK(v.K_theorem == 0.0);
        CHECK(v.K_optimal == doctest::Approx(0.5).epsilon(1e-12));
    }
    CHECK(two.violations.empty());
    CHECK(two.all_cd_hold());

    auto c3 = verify_graph(make_cycle(3), 0.0);
    for (const auto& v : c3.vertices) {
        CHECK(std::abs(v.K_theorem) <= 1e-14);
        CHECK(v.cd_holds);
        CHECK(v.c_at_least_one);
    }

    CHECK_THROWS_AS(verify_graph(parse_edge_list("a b\nb c\nc b"), 0.5), ConnectivityError);
    VerifyOptions bad_m;
    bad_m.m = 0.5;
    CHECK_THROWS_AS(verify_graph(make_cycle(3), 0.5, bad_m), std::invalid_argument);
}

TEST_CASE("verify_graph: an inflated curvature is refuted with a witness") {
    VerifyOptions opt;
    opt.k_override = 10.0;
    auto r = verify_graph(make_cycle(3), 0.0, opt);
    CHECK_FALSE(r.all_cd_hold());
    REQUIRE_FALSE(r.violations.empty());
    auto b = make_bundle(make_cycle(3), 0.0);
    for (const auto& v : r.violations) {
        CHECK(v.residual < 0.0);
        CHECK(check_cd(b, v.vertex, 2.0, 10.0, v.f) == doctest::Approx(v.residual).epsilon(1e-9));
    }
}

TEST_CASE("verify_graph: suite passes and threading does not change the result") {
    for (std::size_t t = 0; t < suite().size(); t += 5) {
        VerifyOptions opt;
        opt.samples = 20;
        opt.seed = t;
        auto serial = verify_graph(suite()[t], 0.1, opt);
        CHECK(serial.all_cd_hold());
        CHECK(serial.violations.empty());
        opt.threads = 3;
        auto parallel = verify_graph(suite()[t], 0.1, opt);
        for (std::size_t i = 0; i < serial.vertices.size(); ++i) {
            CHECK(serial.vertices[i].K_optimal == parallel.vertices[i].K_optimal);
            CHECK(serial.vertices[i].min_sample_residual == parallel.vertices[i].min_sample_residual);
        }
    }
}

TEST_CASE("per-vertex report is equivariant under relabeling") {
    std::mt19937_64 rng(42);
    for (std::size_t t = 0; t < 30; ++t) {
        const auto& g = suite()[t];
        std::vector<VertexId> perm(g.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        VerifyOptions opt;
        opt.samples = 0;
        auto base = verify_graph(g, 0.5, opt);
        auto moved = verify_graph(g.permuted(perm), 0.5, opt);
        for (VertexId v = 0; v < g.size(); ++v) {
            const auto& x = base.vertices[v];
            const auto& y = moved.vertices[perm[v]];
            CHECK(x.label == y.label);
            CHECK(std::abs(x.phi - y.phi) <= 1e-12);
            CHECK(std::abs(x.C - y.C) <= 1e-12);
            CHECK(std::abs(x.K_optimal - y.K_optimal) <= 1e-9);
        }
    }
}

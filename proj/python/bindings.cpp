#include "dgcurv/curvature.hpp"
#include "dgcurv/errors.hpp"
#include "dgcurv/gamma.hpp"
#include "dgcurv/graph.hpp"
#include "dgcurv/report.hpp"
#include "dgcurv/stochastic.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace dgcurv;

namespace {

py::array_t<double> to_numpy(const Matrix& m) {
    py::array_t<double> out({m.rows(), m.cols()});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) view(r, c) = m(r, c);
    return out;
}

py::array_t<double> to_numpy(const Vector& v) {
    py::array_t<double> out(v.size());
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

Vector from_numpy(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 1) throw py::value_error("expected a one-dimensional array");
    return Vector(a.data(), a.data() + a.size());
}

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

}  // namespace

PYBIND11_MODULE(_dgcurv, m) {
    m.doc() = "Curvature-dimension analysis of strongly connected directed graphs";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ConnectivityError>(m, "ConnectivityError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<DirectedGraph>(m, "DirectedGraph")
        .def(py::init([](std::size_t n, const std::vector<Edge>& edges, std::vector<std::string> labels) {
                 return DirectedGraph(n, edges, std::move(labels));
             }),
             py::arg("n"), py::arg("edges"), py::arg("labels") = std::vector<std::string>{})
        .def_property_readonly("size", &DirectedGraph::size)
        .def_property_readonly("edges", &DirectedGraph::edges)
        .def_property_readonly("labels", &DirectedGraph::labels)
        .def("out_neighbors", [](const DirectedGraph& g, VertexId v) {
            auto s = g.out_neighbors(v);
            return std::vector<VertexId>(s.begin(), s.end());
        })
        .def("in_neighbors", [](const DirectedGraph& g, VertexId v) {
            auto s = g.in_neighbors(v);
            return std::vector<VertexId>(s.begin(), s.end());
        })
        .def("__len__", &DirectedGraph::size)
        .def("__repr__", [](const DirectedGraph& g) {
            return "<DirectedGraph n=" + std::to_string(g.size()) + " edges=" + std::to_string(g.edge_count()) + ">";
        });

    m.def("parse_edge_list", [](const std::string& text) { return parse_edge_list(text); });
    m.def("parse_json_graph", [](const std::string& text) { return parse_json_graph(text); });
    m.def("to_edge_list", &to_edge_list);
    m.def("is_strongly_connected", &is_strongly_connected);
    m.def("distance", &distance, "Shortest directed path length, None if unreachable");
    m.def("make_cycle", &make_cycle);
    m.def("make_bidirected_complete", &make_bidirected_complete);
    m.def("make_random_strongly_connected", &make_random_strongly_connected, py::arg("n"), py::arg("p") = 0.4,
          py::arg("seed") = 0, py::arg("budget") = 1000);

    m.def("probability_matrix", [](const DirectedGraph& g, double alpha) {
        return to_numpy(build_probability_matrix(g, alpha).p);
    });
    m.def("perron_vector", [](const DirectedGraph& g, double alpha) {
        auto pv = perron_vector(build_probability_matrix(g, alpha));
        return py::make_tuple(to_numpy(pv.phi), pv.residual);
    });

    py::class_<OperatorBundle>(m, "OperatorBundle")
        .def_property_readonly("alpha", [](const OperatorBundle& b) { return b.alpha; })
        .def_property_readonly("phi", [](const OperatorBundle& b) { return to_numpy(b.phi); })
        .def_property_readonly("weights", [](const OperatorBundle& b) { return to_numpy(b.weights); })
        .def_property_readonly("laplacian_matrix", [](const OperatorBundle& b) { return to_numpy(b.laplacian); })
        .def("laplacian", [](const OperatorBundle& b, const Array& f) { return to_numpy(apply_laplacian(b, from_numpy(f))); })
        .def("gamma", [](const OperatorBundle& b, const Array& f, const Array& g, VertexId i) {
            return gamma_scalar(b, from_numpy(f), from_numpy(g), i);
        })
        .def("gamma2", [](const OperatorBundle& b, const Array& f, VertexId i) {
            return gamma2_scalar(b, from_numpy(f), i);
        })
        .def("gamma_closed_form", [](const OperatorBundle& b, const Array& f, VertexId i) {
            return gamma_closed_form(b, from_numpy(f), i);
        })
        .def("forms", [](const OperatorBundle& b, VertexId i) {
            auto f = forms_at(b, i);
            py::dict d;
            d["G"] = to_numpy(f.full_gamma());
            d["H"] = to_numpy(f.full_gamma2());
            d["l"] = to_numpy(f.full_laplacian_row());
            d["support"] = f.support;
            return d;
        })
        .def("local_constant_C", &local_constant_C)
        .def("optimal_K", [](const OperatorBundle& b, VertexId i, double m) {
            auto k = optimal_K(forms_at(b, i), m);
            return py::make_tuple(k.value, to_numpy(k.extremal));
        }, py::arg("i"), py::arg("m") = 2.0)
        .def("check_cd", [](const OperatorBundle& b, VertexId i, double m, double k, const Array& f) {
            return check_cd(b, i, m, k, from_numpy(f));
        }, py::arg("i"), py::arg("m"), py::arg("K"), py::arg("f"));

    m.def("make_bundle", py::overload_cast<const DirectedGraph&, double>(&make_bundle), py::arg("graph"),
          py::arg("alpha"));
    m.def("theorem_bound", &theorem_bound, py::arg("C"), py::arg("alpha"));

    py::class_<VertexReport>(m, "VertexReport")
        .def_readonly("label", &VertexReport::label)
        .def_readonly("phi", &VertexReport::phi)
        .def_readonly("C", &VertexReport::C)
        .def_readonly("K_theorem", &VertexReport::K_theorem)
        .def_readonly("K_optimal", &VertexReport::K_optimal)
        .def_readonly("K_checked", &VertexReport::K_checked)
        .def_readonly("cd_holds", &VertexReport::cd_holds)
        .def_readonly("min_sample_residual", &VertexReport::min_sample_residual)
        .def_property_readonly("worst_f", [](const VertexReport& v) { return to_numpy(v.worst_f); });

    py::class_<CurvatureReport>(m, "CurvatureReport")
        .def_readonly("alpha", &CurvatureReport::alpha)
        .def_readonly("m", &CurvatureReport::m)
        .def_readonly("vertices", &CurvatureReport::vertices)
        .def_property_readonly("violation_count", [](const CurvatureReport& r) { return r.violations.size(); })
        .def_property_readonly("all_cd_hold", &CurvatureReport::all_cd_hold)
        .def_property_readonly("min_K_theorem", &CurvatureReport::min_K_theorem)
        .def_property_readonly("min_K_optimal", &CurvatureReport::min_K_optimal)
        .def("to_csv", &report_csv)
        .def("to_json", [](const CurvatureReport& r) { return analyze_json(r).dump(2); });

    m.def("verify_graph",
          [](const DirectedGraph& g, double alpha, double m, int samples, std::uint64_t seed,
             std::optional<double> k_override, unsigned threads) {
              VerifyOptions opt{m, samples, seed, k_override, threads};
              py::gil_scoped_release release;
              return verify_graph(g, alpha, opt);
          },
          py::arg("graph"), py::arg("alpha"), py::arg("m") = 2.0, py::arg("samples") = 100, py::arg("seed") = 0,
          py::arg("K_override") = py::none(), py::arg("threads") = 1);
}

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "labelgeom/analysis.hpp"
#include "labelgeom/census.hpp"
#include "labelgeom/error.hpp"
#include "labelgeom/holonomy.hpp"
#include "labelgeom/report.hpp"

namespace py = pybind11;
using namespace labelgeom;

namespace {

SolverOptions options(int restarts, std::uint64_t seed, double tolerance) {
    SolverOptions o;
    if (restarts > 0) o.restarts = restarts;
    o.seed = seed;
    o.tolerance = tolerance;
    return o;
}

py::dict tags_dict(const SolutionTags& t) {
    py::dict d;
    d["nonzero_labels"] = t.nonzero_labels;
    d["nonneg_imaginary"] = t.nonneg_imaginary;
    d["real"] = t.real;
    d["conjugate_partner"] = t.conjugate_partner >= 0 ? py::object(py::int_(t.conjugate_partner)) : py::object(py::none());
    d["geometric"] = t.heuristic;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Label equations of link diagrams and the hyperbolic structures they give";

    py::register_exception<Error>(m, "LabelgeomError");

    py::class_<PlanarDiagram>(m, "Diagram")
        .def_property_readonly("crossing_count", &PlanarDiagram::crossing_count)
        .def_property_readonly("edge_count", &PlanarDiagram::edge_count)
        .def_property_readonly("face_count", &PlanarDiagram::face_count)
        .def_property_readonly("component_count", &PlanarDiagram::component_count)
        .def_property_readonly("is_alternating", &PlanarDiagram::is_alternating)
        .def_property_readonly("crossings",
                               [](const PlanarDiagram& d) {
                                   std::vector<std::array<int, 4>> out;
                                   for (const auto& t : d.crossings()) out.push_back(t.edges);
                                   return out;
                               })
        .def("face_sizes",
             [](const PlanarDiagram& d) {
                 std::vector<int> out;
                 for (const auto& r : d.regions()) out.push_back(static_cast<int>(r.sides()));
                 return out;
             })
        .def("to_pd", &PlanarDiagram::to_pd_text)
        .def("__repr__", [](const PlanarDiagram& d) {
            return "<Diagram " + std::to_string(d.crossing_count()) + " crossings, " + std::to_string(d.component_count()) +
                   " components>";
        });

    m.def("parse_pd", &parse_pd, py::arg("text"), "Diagram from PD text, one crossing per line");
    m.def("census_diagram", &census_diagram, py::arg("name"));
    m.def("census_names", &census_names);
    m.def("encircled_diagram", [](std::string_view v) { return encircled_census(v).diagram; }, py::arg("variant"));
    m.def("encircled_variants", [] {
        std::vector<std::string> out;
        for (auto v : encircled_variants()) out.emplace_back(v);
        return out;
    });

    py::class_<ResidualSystem>(m, "System")
        .def(py::init([](const PlanarDiagram& d) { return ResidualSystem::assemble(d); }), py::arg("diagram"))
        .def_property_readonly("diagram", &ResidualSystem::diagram)
        .def_property_readonly("unknown_count", &ResidualSystem::unknown_count)
        .def_property_readonly("residual_count", &ResidualSystem::residual_count)
        .def("residual", [](const ResidualSystem& s, const Vec& x) { return Vec(s.residual(x)); }, py::arg("x"))
        .def("jacobian", [](const ResidualSystem& s, const Vec& x) { return Mat(s.jacobian(x)); }, py::arg("x"))
        .def("shapes", &region_shapes, py::arg("x"), py::arg("face"));

    py::class_<Solution>(m, "Solution")
        .def_readonly("x", &Solution::x)
        .def_readonly("shapes", &Solution::shapes)
        .def_readonly("max_residual", &Solution::max_residual)
        .def_readonly("regularity_deviation", &Solution::regularity_deviation)
        .def_property_readonly("tags", [](const Solution& s) { return tags_dict(s.tags); })
        .def_property_readonly("edge_labels", [](const Solution& s) { return s.labels.black; })
        .def_property_readonly("white_labels", [](const Solution& s) { return s.labels.white; })
        .def_property_readonly("crossing_labels", [](const Solution& s) { return s.labels.crossing; });

    m.def(
        "solve",
        [](const ResidualSystem& s, int restarts, std::uint64_t seed, double tolerance) {
            py::gil_scoped_release release;
            return solve_all(s, options(restarts, seed, tolerance));
        },
        py::arg("system"), py::arg("restarts") = 0, py::arg("seed") = 1, py::arg("tolerance") = 1e-9,
        "All solutions found; restarts = 0 uses the default budget");
    m.def("select_geometric", &select_geometric, py::arg("system"), py::arg("solutions"));

    m.def(
        "holonomy",
        [](const ResidualSystem& s, const Vec& x) {
            PathGraph g(s.diagram());
            const auto rep = parabolic_rep(g, s, x);
            const auto v = verify(rep, g.presentation());
            std::vector<Mat> gens;
            for (const auto& a : rep.generators) {
                Mat mat(2, 2);
                mat << a.a(), a.b(), a.c(), a.d();
                gens.push_back(mat);
            }
            py::dict d;
            d["generators"] = gens;
            d["max_relator_deviation"] = v.max_relator_deviation;
            d["max_trace_defect"] = v.max_trace_defect;
            return d;
        },
        py::arg("system"), py::arg("x"), "Parabolic representation and its Wirtinger check");

    m.def("expanded_meridian", &expanded_meridian, py::arg("system"), py::arg("solution"));

    m.def(
        "report",
        [](const PlanarDiagram& d, int restarts, std::uint64_t seed, double tolerance, bool all_solutions, std::string census) {
            RunOptions o;
            o.solver = options(restarts, seed, tolerance);
            o.all_solutions = all_solutions;
            o.source = census;
            o.census = std::move(census);
            std::string text;
            {
                py::gil_scoped_release release;
                text = dump_report(run_pipeline(d, o).json);
            }
            return text;
        },
        py::arg("diagram"), py::arg("restarts") = 0, py::arg("seed") = 1, py::arg("tolerance") = 1e-9,
        py::arg("all_solutions") = false, py::arg("census") = "", "JSON run report as text");

    m.def(
        "verify_certificate",
        [](const PlanarDiagram& d, const std::string& text, double tolerance) {
            Json doc;
            try {
                doc = Json::parse(text);
            } catch (const Json::parse_error& e) {
                throw Error(ErrorCode::SchemaError, e.what());
            }
            const auto r = verify_certificate(d, doc, tolerance);
            py::dict out;
            out["max_residual"] = r.max_residual;
            out["max_relator_deviation"] = r.max_relator_deviation;
            out["tags_checked"] = r.tags_checked;
            return out;
        },
        py::arg("diagram"), py::arg("document"), py::arg("tolerance") = 1e-8);

    m.def(
        "punctured_sphere_label",
        [](std::string_view variant) {
            const auto enc = encircled_census(variant);
            const auto s = ResidualSystem::assemble(enc.diagram);
            const auto g = select_geometric(s, solve_all(s));
            return py::make_tuple(boundary_labels(s, g.x, enc).punctured_sphere_labels[0], enc.parallel);
        },
        py::arg("variant"), "Label across the disk bounded by the circle, and whether the strands are parallel");
}

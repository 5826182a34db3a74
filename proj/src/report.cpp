#include "labelgeom/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <optional>

#include "labelgeom/analysis.hpp"
#include "labelgeom/error.hpp"
#include "labelgeom/holonomy.hpp"

namespace labelgeom {

namespace {

const cplx kOmega{-0.5, std::numbers::sqrt3 / 2.0};

double round15(double v) {
    if (v == 0.0) return 0.0;  // no negative zero in output
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

Json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return round15(v);
}

Json complex(cplx z) { return Json::array({number(z.real()), number(z.imag())}); }

Json complex_list(const auto& zs) {
    Json out = Json::array();
    for (cplx z : zs) out.push_back(complex(z));
    return out;
}

Json matrix(const Moebius& m) {
    return Json::array({Json::array({complex(m.a()), complex(m.b())}), Json::array({complex(m.c()), complex(m.d())})});
}

// --- stored census values ---------------------------------------------------

std::vector<cplx> sides_toward(const ResidualSystem& s, const Vec& x, const Region& r, std::size_t other_sides) {
    std::vector<cplx> out;
    for (const auto& c : r.corners) {
        const auto& e = s.diagram().edge(c.edge_in);
        const int other = e.left_face == r.face ? e.right_face : e.left_face;
        if (s.diagram().region(other).sides() == other_sides) out.push_back(s.side_label(x, c.edge_in, r.face));
    }
    return out;
}

const Region* white_region(const PlanarDiagram& d, std::size_t n) {
    for (const auto& r : d.regions()) {
        if (r.color == Color::White && r.sides() == n) return &r;
    }
    return nullptr;
}

double max_distance(const std::vector<cplx>& zs, cplx target) {
    double e = 0.0;
    for (cplx z : zs) e = std::max(e, std::abs(z - target));
    return e;
}

// best rotation of `got` against `want`
double cyclic_error(const std::vector<cplx>& got, const std::vector<cplx>& want) {
    if (got.size() != want.size()) return INFINITY;
    double best = INFINITY;
    for (std::size_t s = 0; s < got.size(); ++s) {
        double e = 0.0;
        for (std::size_t i = 0; i < got.size(); ++i) e = std::max(e, std::abs(got[(s + i) % got.size()] - want[i]));
        best = std::min(best, e);
    }
    return best;
}

// best matching of two small multisets
double multiset_error(const std::vector<cplx>& got, const std::vector<cplx>& want) {
    if (got.size() != want.size()) return INFINITY;
    std::vector<std::size_t> p(got.size());
    std::iota(p.begin(), p.end(), 0);
    double best = INFINITY;
    do {
        double e = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) e = std::max(e, std::abs(got[p[i]] - want[i]));
        best = std::min(best, e);
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

void borromean_checks(std::vector<CensusCheck>& out, const ResidualSystem& s, const Solution& g) {
    double e = 0.0;
    for (int c = 0; c < s.diagram().crossing_count(); ++c) {
        const cplx w = g.x(s.w_index(c));
        e = std::max(e, std::min(std::abs(w - cplx(0, 0.5)), std::abs(w + cplx(0, 0.5))));
    }
    out.push_back({"crossing labels are +-i/2", e, 1e-9});
}

void ln_checks(std::vector<CensusCheck>& out, int n, const ResidualSystem& s, const Solution& g) {
    const double c = std::cos(std::numbers::pi / n);
    const double lambda = 0.5 / c;
    const Region* tri = white_region(s.diagram(), 3);
    const Region* big = white_region(s.diagram(), static_cast<std::size_t>(n));
    if (!tri || !big) throw Error(ErrorCode::PatternNotFound, "L_n regions not found");
    const auto u2s = sides_toward(s, g.x, *tri, 3);
    if (u2s.empty()) throw Error(ErrorCode::PatternNotFound, "no triangle-triangle edge");
    const cplx u2 = u2s.front();
    out.push_back({"(1+2cos(pi/n))u2^2 + (1+2cos(pi/n))u2 + 1 = 0", std::abs((1 + 2 * c) * u2 * u2 + (1 + 2 * c) * u2 + 1.0), 1e-9});
    out.push_back({"u1 = u2 / lambda_n", max_distance(sides_toward(s, g.x, *big, 3), u2 / lambda), 1e-9});
    if (n == 3) borromean_checks(out, s, g);
}

}  // namespace

std::vector<CensusCheck> census_checks(std::string_view name, const ResidualSystem& s, const std::vector<Solution>& all,
                                       const Solution& g) {
    std::vector<CensusCheck> out;
    const PlanarDiagram& d = s.diagram();
    if (name == "fig8") {
        std::vector<cplx> us;
        for (const auto& r : d.regions()) {
            if (r.color != Color::White || r.sides() != 3) continue;
            for (cplx u : sides_toward(s, g.x, r, 3)) us.push_back(u);
        }
        out.push_back({"edge labels between triangles are (-1+i*sqrt3)/2", max_distance(us, kOmega), 1e-9});
        double e = 0.0;
        for (int face : s.bigons()) {
            const cplx expect = d.color(face) == Color::Black ? kOmega : -(kOmega + 1.0);
            for (const auto& c : d.region(face).corners) e = std::max(e, std::abs(g.x(s.w_index(c.crossing)) - expect));
        }
        out.push_back({"bigon crossing labels are u and -(u+1)", e, 1e-9});
    } else if (name == "turks_head") {
        const Region* square = white_region(d, 4);
        if (!square) throw Error(ErrorCode::PatternNotFound, "no white square");
        double poly = 0.0, half = 0.0;
        int real = 0;
        for (const auto& sol : all) {
            const cplx u = s.side_label(sol.x, square->corners[0].edge_in, square->face);
            poly = std::max(poly, std::abs(std::pow(u, 4) - 6.0 * u * u - 8.0 * u - 4.0));
            for (const auto& c : square->corners) {
                const cplx w = sol.x(s.w_index(c.crossing));
                half = std::max(half, std::min(std::abs(w - u * u / 2.0), std::abs(w - std::conj(u * u) / 2.0)));
            }
            real += sol.tags.real ? 1 : 0;
        }
        out.push_back({"four solutions", std::abs(static_cast<double>(all.size()) - 4.0), 0.0});
        out.push_back({"u is a root of x^4 - 6x^2 - 8x - 4", poly, 1e-8});
        out.push_back({"w = u^2/2", half, 1e-9});
        out.push_back({"two real solutions", std::abs(real - 2.0), 0.0});
        out.push_back({"geometric solution has a conjugate partner", g.tags.conjugate_partner >= 0 ? 0.0 : 1.0, 0.0});
        const double r2 = std::numbers::sqrt2;
        const cplx expect(-1.0 / r2, std::sqrt(4.0 * r2 - 5.0) / r2);
        out.push_back({"geometric u = (-1 + i*sqrt(4*sqrt2 - 5))/sqrt2",
                       std::abs(s.side_label(g.x, square->corners[0].edge_in, square->face) - expect), 1e-9});
    } else if (name == "borromean") {
        borromean_checks(out, s, g);
    } else if (name.starts_with("Ln:")) {
        ln_checks(out, std::stoi(std::string(name.substr(3))), s, g);
    } else if (name == "9a37") {
        const std::vector<cplx> want{{0.469789, -0.090643}, {0.530211, 0.090643}, {0.469789, -0.090643}, {0.530211, 0.090643}};
        double stored = 0.0, symmetric = 0.0;
        std::optional<std::vector<cplx>> first;
        for (const auto& r : d.regions()) {
            if (r.sides() != 4) continue;
            const auto z = region_shapes(s, g.x, r.face);
            stored = std::max(stored, multiset_error(z, want));
            if (!first) first = z;
            symmetric = std::max(symmetric, multiset_error(z, *first));
        }
        out.push_back({"4-sided region shapes 0.469789-0.090643i, 0.530211+0.090643i", stored, 1e-5});
        out.push_back({"the three 4-sided regions share their shapes", symmetric, 1e-8});
    } else if (name == "11a79") {
        const std::vector<cplx> want{
            {0.312331, -0.008243}, {0.449632, -0.007097}, {0.346369, 0.018155}, {0.370339, -0.024868}, {0.432793, 0.022291}};
        double best = INFINITY;
        for (const auto& r : d.regions()) {
            if (r.sides() == 5) best = std::min(best, cyclic_error(region_shapes(s, g.x, r.face), want));
        }
        out.push_back({"5-sided region shapes in stored cyclic order", best, 1e-5});
    } else if (name.starts_with("encircled:")) {
        const auto enc = encircled_census(name.substr(10));
        const auto b = boundary_labels(s, g.x, enc);
        const cplx expect = enc.parallel ? 0.25 : -0.25;
        out.push_back({enc.parallel ? "punctured sphere label +1/4" : "punctured sphere label -1/4",
                       std::max(std::abs(b.punctured_sphere_labels[0] - expect), std::abs(b.punctured_sphere_labels[1] - expect)),
                       1e-9});
    }
    return out;
}

namespace {

// labels and shapes only when `full`; tags and scores always
Json solution_json(const ResidualSystem& s, const Solution& sol, int index, bool geometric, bool full) {
    const PlanarDiagram& d = s.diagram();
    Json j;
    j["index"] = index;
    j["max_residual"] = number(sol.max_residual);
    j["regularity_deviation"] = number(sol.regularity_deviation);
    Json partner = sol.tags.conjugate_partner >= 0 ? Json(sol.tags.conjugate_partner) : Json(nullptr);
    j["tags"] = {{"nonzero_labels", sol.tags.nonzero_labels},
                 {"nonneg_imaginary", sol.tags.nonneg_imaginary},
                 {"real", sol.tags.real},
                 {"conjugate_partner", partner},
                 {"geometric", geometric}};
    if (!full) return j;
    Json edges = Json::array();
    for (int e = 1; e <= d.edge_count(); ++e) edges.push_back(complex(sol.x(s.u_index(e))));
    j["edge_labels"] = std::move(edges);
    Json crossings = Json::array();
    for (int c = 0; c < d.crossing_count(); ++c) crossings.push_back(complex(sol.x(s.w_index(c))));
    j["crossing_labels"] = std::move(crossings);
    Json shapes = Json::array();
    for (std::size_t f = 0; f < sol.shapes.size(); ++f) {
        if (sol.shapes[f].empty()) continue;
        shapes.push_back({{"face", f}, {"sides", d.region(static_cast<int>(f)).sides()}, {"shapes", complex_list(sol.shapes[f])}});
    }
    j["shape_parameters"] = std::move(shapes);
    return j;
}

Json input_json(const PlanarDiagram& d, const std::string& source) {
    Json pd = Json::array();
    for (const auto& t : d.crossings()) pd.push_back(Json(t.edges));
    return {{"source", source},
            {"crossings", d.crossing_count()},
            {"edges", d.edge_count()},
            {"regions", d.face_count()},
            {"components", d.component_count()},
            {"alternating", d.is_alternating()},
            {"pd", std::move(pd)}};
}

Json holonomy_json(const ResidualSystem& s, const Vec& x, double& deviation) {
    PathGraph graph(s.diagram());
    const auto rep = parabolic_rep(graph, s, x);
    const auto v = verify(rep, graph.presentation());
    deviation = v.max_relator_deviation;
    Json gens = Json::array();
    for (const auto& g : rep.generators) gens.push_back(matrix(g));
    Json arcs = Json::array();
    for (int a : graph.presentation().arc_of_edge) arcs.push_back(a);
    return {{"basepoint_node", rep.basepoint_node},
            {"basepoint_arc", rep.basepoint_arc},
            {"arc_of_edge", std::move(arcs)},
            {"generators", std::move(gens)},
            {"max_relator_deviation", number(v.max_relator_deviation)},
            {"max_trace_defect", number(v.max_trace_defect)}};
}

Json geodesics_json(const ResidualSystem& s, const Solution& g) {
    const auto r = geodesic_report(s, g);
    Json cs = Json::array();
    for (const auto& c : r.crossings) {
        cs.push_back({{"crossing", c.crossing},
                      {"w", complex(c.w)},
                      {"distance", number(c.distance)},
                      {"angle", number(c.angle)},
                      {"degenerate", c.degenerate}});
    }
    return {{"crossings", std::move(cs)},
            {"max_regularity_deviation", number(r.max_regularity_deviation)},
            {"expanded_meridian", number(expanded_meridian(s, g))}};
}

Json tangle_json(const ResidualSystem& s, const Solution& g, std::string_view variant) {
    const auto enc = encircled_census(variant);
    const auto b = boundary_labels(s, g.x, enc);
    return {{"variant", variant},
            {"parallel", b.parallel},
            {"crossing_labels", complex_list(b.crossing_labels)},
            {"edge_labels", complex_list(b.edge_labels)},
            {"arc_labels", complex_list(b.arc_labels)},
            {"punctured_sphere_labels", complex_list(b.punctured_sphere_labels)},
            {"triangle_relation", complex(b.triangle_relation)}};
}

Json vertices_json(const Solution& g) {
    Json out = Json::array();
    for (std::size_t f = 0; f < g.shapes.size(); ++f) {
        if (g.shapes[f].empty()) continue;
        const auto dev = develop_region(g.shapes[f]);
        Json pts = Json::array();
        for (const auto& p : dev.vertices) pts.push_back(p.infinite ? Json(nullptr) : complex(p.z));
        out.push_back({{"face", f}, {"closure_error", number(dev.closure_error)}, {"vertices", std::move(pts)}});
    }
    return out;
}

}  // namespace

RunReport run_pipeline(const PlanarDiagram& diagram, const RunOptions& options) {
    const auto system = ResidualSystem::assemble(diagram);
    const PlanarDiagram& d = system.diagram();
    const SolverOptions& so = options.solver;

    std::vector<Solution> all;
    try {
        all = solve_all(system, so);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoConvergence) throw;
    }
    std::optional<Solution> g;
    int gi = -1;
    try {
        g = select_geometric(system, all);
        for (std::size_t i = 0; i < all.size(); ++i) {
            if ((all[i].x - g->x).norm() == 0.0) gi = static_cast<int>(i);
        }
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoCandidate) throw;
    }

    RunReport out;
    Json& j = out.json;
    j["schema_version"] = kSchemaVersion;
    j["input"] = input_json(d, options.source);
    j["solver"] = {{"seed", so.seed}, {"restarts", so.restarts}, {"tolerance", number(so.tolerance)},
                   {"all_solutions", options.all_solutions}};
    Json kappa = Json::array();
    for (const auto& e : d.edges()) kappa.push_back(e.kappa);
    j["white_side_rule"] = {{"white", "black - kappa"}, {"kappa", std::move(kappa)}};
    Json sols = Json::array();
    for (std::size_t i = 0; i < all.size(); ++i) {
        const bool chosen = static_cast<int>(i) == gi;
        sols.push_back(solution_json(system, all[i], static_cast<int>(i), chosen, chosen || options.all_solutions));
    }
    j["solutions"] = std::move(sols);
    j["geometric"] = gi >= 0 ? Json(gi) : Json(nullptr);
    j["holonomy"] = nullptr;
    j["geodesics"] = nullptr;
    if (g) {
        double deviation = 0.0;
        j["holonomy"] = holonomy_json(system, g->x, deviation);
        j["geodesics"] = geodesics_json(system, *g);
        out.certified = deviation < 1e-8;
        if (options.census.starts_with("encircled:")) j["tangle"] = tangle_json(system, *g, options.census.substr(10));
        if (options.dump_vertices) j["vertices"] = vertices_json(*g);
    }
    if (!options.census.empty()) {
        Json checks = Json::array();
        out.census_passed = g.has_value();
        if (g) {
            for (const auto& c : census_checks(options.census, system, all, *g)) {
                checks.push_back({{"check", c.what}, {"error", number(c.error)}, {"tolerance", number(c.tolerance)}, {"passed", c.passed()}});
                out.census_passed = out.census_passed && c.passed();
            }
        }
        j["census"] = {{"name", options.census}, {"checks", std::move(checks)}, {"passed", out.census_passed}};
    }
    return out;
}

std::string dump_report(const Json& json) { return json.dump(2) + "\n"; }

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw Error(ErrorCode::SchemaError, what); }

cplx parse_complex(const Json& v, const std::string& where) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) return {v[0].get<double>(), v[1].get<double>()};
    schema_error(where + " is not a complex number [re, im]");
}

void read_labels(const Json& sol, const char* key, std::size_t count, Vec& x, int offset) {
    if (!sol.contains(key)) schema_error(std::string("missing ") + key);
    const Json& a = sol[key];
    if (!a.is_array() || a.size() != count) {
        schema_error(std::string(key) + " must list " + std::to_string(count) + " values");
    }
    for (std::size_t i = 0; i < count; ++i) x(offset + static_cast<int>(i)) = parse_complex(a[i], std::string(key) + "[" + std::to_string(i) + "]");
}

}  // namespace

CertificateReport verify_certificate(const PlanarDiagram& diagram, const Json& document, double tolerance) {
    if (!document.is_object() || document.empty()) schema_error("solution document must be a non-empty object");
    const Json* sol = &document;
    if (document.contains("solutions")) {
        const Json& gi = document.value("geometric", Json());
        const Json& sols = document["solutions"];
        if (!gi.is_number_integer() || !sols.is_array() || gi.get<int>() < 0 || gi.get<std::size_t>() >= sols.size()) {
            schema_error("report has no geometric solution");
        }
        sol = &sols[gi.get<std::size_t>()];
    }
    if (!sol->is_object()) schema_error("solution must be an object");

    const auto system = ResidualSystem::assemble(diagram);
    const PlanarDiagram& d = system.diagram();
    Vec x(system.unknown_count());
    read_labels(*sol, "edge_labels", static_cast<std::size_t>(d.edge_count()), x, 0);
    read_labels(*sol, "crossing_labels", static_cast<std::size_t>(d.crossing_count()), x, d.edge_count());

    CertificateReport out;
    out.max_residual = system.residual(x).cwiseAbs().maxCoeff();
    if (!(out.max_residual <= tolerance)) {
        throw Error(ErrorCode::ToleranceExceeded, "residual " + std::to_string(out.max_residual));
    }
    PathGraph graph(d);
    out.max_relator_deviation = verify(parabolic_rep(graph, system, x), graph.presentation()).max_relator_deviation;
    if (!(out.max_relator_deviation <= tolerance)) {
        throw Error(ErrorCode::ToleranceExceeded, "relator deviation " + std::to_string(out.max_relator_deviation));
    }
    if (sol->contains("tags")) {
        const Json& t = (*sol)["tags"];
        if (!t.is_object()) schema_error("tags must be an object");
        const auto tags = describe(system, x).tags;
        const std::pair<const char*, bool> recomputed[] = {
            {"nonzero_labels", tags.nonzero_labels}, {"nonneg_imaginary", tags.nonneg_imaginary}, {"real", tags.real}};
        for (const auto& [key, value] : recomputed) {
            if (!t.contains(key)) continue;
            if (!t[key].is_boolean()) schema_error(std::string("tag ") + key + " must be boolean");
            if (t[key].get<bool>() != value) throw Error(ErrorCode::ToleranceExceeded, std::string("tag ") + key + " does not match the labels");
        }
        out.tags_checked = true;
    }
    return out;
}

}  // namespace labelgeom

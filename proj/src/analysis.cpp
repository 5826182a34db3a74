#include "labelgeom/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <string>

#include "labelgeom/error.hpp"

namespace labelgeom {

GeodesicReport geodesic_report(const ResidualSystem& system, const Solution& solution) {
    const PlanarDiagram& d = system.diagram();
    GeodesicReport out;
    for (int x = 0; x < d.crossing_count(); ++x) {
        CrossingGeodesic g;
        g.crossing = x;
        g.w = solution.x(system.w_index(x));
        const double m = std::abs(g.w);
        g.distance = -std::log(m);
        g.angle = std::arg(-g.w);
        g.degenerate = m >= 1.0 - 1e-12;
        for (int k = 0; k < 4; ++k) {
            const int face = d.face_at_corner(x, k);
            const auto& corners = d.region(face).corners;
            if (static_cast<std::size_t>(face) >= solution.shapes.size() || solution.shapes[face].empty()) continue;
            for (std::size_t i = 0; i < corners.size(); ++i) {
                if (corners[i].crossing == x && corners[i].corner == k) g.corner_shapes[k] = solution.shapes[face][i];
            }
        }
        out.crossings.push_back(g);
    }
    for (std::size_t f = 0; f < solution.shapes.size(); ++f) {
        const auto n = static_cast<int>(d.region(static_cast<int>(f)).sides());
        if (n < 3) continue;
        for (cplx z : solution.shapes[f]) {
            out.max_regularity_deviation = std::max(out.max_regularity_deviation, std::abs(z - regular_shape(n)));
        }
    }
    return out;
}

double expanded_meridian(const ResidualSystem& system, const Solution& solution) {
    double top = 0.0;
    for (int x = 0; x < system.diagram().crossing_count(); ++x) {
        top = std::max(top, std::abs(solution.x(system.w_index(x))));
    }
    if (top == 0.0) throw Error(ErrorCode::ZeroEdgeLabel, "all crossing labels vanish");
    return 1.0 / std::sqrt(top);
}

cplx chord_label(const ResidualSystem& system, const Vec& x, int face, int from, int to) {
    const Region& r = system.diagram().region(face);
    const int n = static_cast<int>(r.sides());
    if (from < 0 || from >= n || to <= from || to - from >= n) {
        throw Error(ErrorCode::InvalidArgument, "chord sides out of range");
    }
    Moebius p = Moebius::identity();
    for (int k = from; k < to; ++k) {
        const Corner& c = r.corners[k % n];
        p = Moebius{0.0, -x(system.w_index(c.crossing)), 1.0,
                    static_cast<double>(c.eps_in) * system.side_label(x, c.edge_in, face)} *
            p;
    }
    if (p.c() == 0.0) throw Error(ErrorCode::DegenerateShape, "chord ends on one cusp");
    return p.det() / (p.c() * p.c());
}

Tangle tangle_from_pd(std::string_view text) {
    PlanarGraph g;
    std::map<int, std::vector<Port>> ports;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head.front() == '#') continue;
        std::array<int, 4> t{};
        if (head != "X" || !(ls >> t[0] >> t[1] >> t[2] >> t[3])) {
            throw Error(ErrorCode::MalformedLine, "line " + std::to_string(lineno) + ": expected X a b c d");
        }
        const int node = g.add_crossing(false, g.node_count());
        g.set_entering({node, 0}, true);
        for (int k = 0; k < 4; ++k) ports[t[k]].push_back({node, k});
    }
    std::vector<Port> free;
    for (const auto& [label, at] : ports) {
        if (at.size() > 2) throw Error(ErrorCode::EdgeIndexNotTwice, "label " + std::to_string(label) + " used more than twice");
        if (at.size() == 2) g.connect(at[0], at[1]);
        else free.push_back(at[0]);
    }
    if (free.size() != 4) {
        throw Error(ErrorCode::WrongEndCount, "fragment has " + std::to_string(free.size()) + " free ends, not 4");
    }
    // walk the face with the outside on the left, starting at the lowest free label
    std::array<Port, 4> ends{};
    int found = 0;
    Port cur = free.front();
    for (int guard = 0; guard < 4 * g.node_count() + 8; ++guard) {
        const Port leave{cur.node, (cur.slot + 3) % 4};
        if (g.link(leave).valid()) {
            cur = g.link(leave);
            continue;
        }
        if (leave == free.front()) break;
        if (found == 3) break;
        ends[++found] = leave;
        cur = leave;
    }
    ends[0] = free.front();
    if (found != 3) throw Error(ErrorCode::WrongEndCount, "free ends do not lie on one face");
    std::array<Port, 4> by_end{};
    by_end[NW] = ends[0];
    by_end[NE] = ends[1];
    by_end[SE] = ends[2];
    by_end[SW] = ends[3];
    return Tangle::from_graph(std::move(g), by_end);
}

namespace {

int first_crossing(const PlanarGraph& g) {
    for (int n = 0; n < g.node_count(); ++n) {
        if (g.is_crossing(n)) return n;
    }
    return -1;
}

int side_index(const Region& r, int edge) {
    for (std::size_t i = 0; i < r.sides(); ++i) {
        if (r.corners[i].edge_in == edge) return static_cast<int>(i);
    }
    return -1;
}

void require_pattern(const ResidualSystem& system, const EncircledDiagram& enc) {
    if (system.diagram().crossings() != enc.diagram.crossings()) {
        throw Error(ErrorCode::PatternNotFound, "system is not built on the encircled diagram");
    }
}

}  // namespace

EncircledDiagram encircle(const Tangle& inner, bool reverse_lower) {
    PlanarGraph g = inner.graph();
    int dangling = 0;
    for (int n = 0; n < g.node_count(); ++n) {
        for (int s = 0; s < (g.is_crossing(n) ? 4 : 2); ++s) dangling += g.link({n, s}).valid() ? 0 : 1;
    }
    if (dangling != 4) throw Error(ErrorCode::WrongEndCount, "inner tangle has " + std::to_string(dangling) + " free ends");
    const int keep = first_crossing(g);

    // slots at K: outward, along C counterclockwise, inward, along C clockwise
    const std::array<End, 4> order{NE, NW, SW, SE};
    std::array<int, 4> k{};
    for (int i = 0; i < 4; ++i) k[i] = g.add_crossing(false, -1 - i);
    for (int i = 0; i < 4; ++i) {
        g.connect({k[i], 1}, {k[(i + 1) % 4], 3});
        g.connect({k[i], 2}, inner.end(order[i]));
    }
    g.connect({k[0], 0}, {k[1], 0});
    g.connect({k[2], 0}, {k[3], 0});
    g.make_alternating(keep);

    BuiltDiagram b = g.to_diagram();
    if (reverse_lower) {
        std::vector<bool> rev(b.diagram.component_count(), false);
        rev[b.diagram.edge(b.edge_at_slot[k[2]][0]).component] = true;
        b = g.to_diagram(rev);
    }

    EncircledDiagram out;
    out.diagram = b.diagram;
    const PlanarDiagram& d = out.diagram;
    int start = 0;
    for (int i = 1; i < 4; ++i) {
        if (b.edge_at_slot[k[i]][1] < b.edge_at_slot[k[start]][1]) start = i;
    }
    for (int j = 0; j < 4; ++j) {
        const int node = k[(start + j) % 4];
        const int x = b.pd_of_node[node];
        const int arc = b.edge_at_slot[node][1];
        const int inward = b.edge_at_slot[node][2];
        out.circle_crossings[j] = x;
        out.circle_edges[j] = arc;
        out.inward_edges[j] = inward;
        const auto& t = d.crossing(x).edges;
        for (int p = 0; p < 4; ++p) {
            if (t[p] == arc && t[(p + 1) % 4] == inward) out.inside_faces[j] = d.face_at_corner(x, p);
        }
    }
    out.closure_edges = {b.edge_at_slot[k[0]][0], b.edge_at_slot[k[2]][0]};
    for (const auto& r : d.regions()) {
        const bool upper = side_index(r, out.closure_edges[0]) >= 0;
        const bool lower = side_index(r, out.closure_edges[1]) >= 0;
        if (upper && lower) out.outer_face = r.face;
        if (!upper && !lower) out.interior_faces.push_back(r.face);
    }
    if (out.outer_face < 0) throw Error(ErrorCode::PatternNotFound, "no face touches both closing arcs");
    out.parallel = d.edge(out.closure_edges[0]).tail_level() == d.edge(out.closure_edges[1]).tail_level();
    return out;
}

std::vector<std::string_view> encircled_variants() {
    return {"crossing", "clasp", "hclasp", "hclasp_reversed", "twist3", "twist4", "pretzel"};
}

EncircledDiagram encircled_census(std::string_view variant) {
    if (variant == "crossing") return encircle(Tangle::crossing(1));
    if (variant == "clasp") return encircle(Tangle::twist(2).rotated());
    if (variant == "hclasp") return encircle(Tangle::twist(2));
    if (variant == "hclasp_reversed") return encircle(Tangle::twist(2), true);
    if (variant == "twist3") return encircle(Tangle::twist(3).rotated());
    if (variant == "twist4") return encircle(Tangle::twist(4).rotated());
    if (variant == "pretzel") return encircle(Tangle::twist(2).rotated() + Tangle::crossing(1));
    throw Error(ErrorCode::UnknownCensusName, "unknown encircled variant '" + std::string(variant) + "'");
}

TangleBoundary boundary_labels(const ResidualSystem& system, const Vec& x, const EncircledDiagram& enc) {
    require_pattern(system, enc);
    const PlanarDiagram& d = system.diagram();
    TangleBoundary out;
    out.parallel = enc.parallel;
    for (int i = 0; i < 4; ++i) {
        out.crossing_labels[i] = x(system.w_index(enc.circle_crossings[i]));
        out.edge_labels[i] = system.side_label(x, enc.circle_edges[i], enc.inside_faces[i]);
        const Region& r = d.region(enc.inside_faces[i]);
        const int n = static_cast<int>(r.sides());
        const int a = side_index(r, enc.inward_edges[i]);
        const int b = side_index(r, enc.inward_edges[(i + 1) % 4]);
        const int arc = side_index(r, enc.circle_edges[i]);
        if (a < 0 || b < 0 || arc < 0 || a == b) throw Error(ErrorCode::PatternNotFound, "inside face lost its boundary arc");
        // go round the way that passes the arc of C
        const bool direct = (arc - a + n) % n < (b - a + n) % n;
        out.arc_labels[i] = direct ? chord_label(system, x, r.face, a, b > a ? b : b + n)
                                   : chord_label(system, x, r.face, b, a > b ? a : a + n);
    }
    const Region& outer = d.region(enc.outer_face);
    const int top = side_index(outer, enc.closure_edges[0]);
    const int bottom = side_index(outer, enc.closure_edges[1]);
    const int lo = std::min(top, bottom), hi = std::max(top, bottom);
    const int n = static_cast<int>(outer.sides());
    out.punctured_sphere_labels = {chord_label(system, x, outer.face, lo, hi),
                                   chord_label(system, x, outer.face, hi, lo + n)};
    const Corner& c1 = outer.corners[lo];
    const Corner& c2 = outer.corners[(lo + 1) % n];
    const cplx u = system.side_label(x, c2.edge_in, outer.face);
    out.triangle_relation = x(system.w_index(c1.crossing)) * x(system.w_index(c2.crossing)) / (u * u);
    return out;
}

ScaleReport scale_boundary(const ResidualSystem& system, const Vec& x, const EncircledDiagram& enc, cplx k) {
    if (k == 0.0) throw Error(ErrorCode::ZeroScale, "boundary labels cannot be scaled by zero");
    require_pattern(system, enc);
    const PlanarDiagram& d = system.diagram();
    LabelAssignment labels = system.expand(x);
    for (int i = 0; i < 4; ++i) {
        labels.crossing[enc.circle_crossings[i]] *= k;
        const int e = enc.circle_edges[i];
        const double kappa = d.edge(e).kappa;
        if (d.color(enc.inside_faces[i]) == Color::Black) {
            labels.black[e - 1] *= k;
            labels.white[e - 1] = labels.black[e - 1] - kappa;
        } else {
            labels.white[e - 1] *= k;
            labels.black[e - 1] = labels.white[e - 1] + kappa;
        }
    }
    ScaleReport out;
    for (int face : enc.interior_faces) {
        const Region& r = d.region(face);
        const auto& side = r.color == Color::Black ? labels.black : labels.white;
        std::vector<cplx> u, w;
        for (const auto& c : r.corners) {
            u.push_back(side[c.edge_in - 1]);
            w.push_back(labels.crossing[c.crossing]);
        }
        const Moebius p = region_product(r, u, w);
        double worst = std::max({std::abs(p.b()), std::abs(p.c()), std::abs(p.a() - p.d())});
        if (r.sides() == 2) {
            for (cplx v : u) worst = std::max(worst, std::abs(v));
        }
        out.interior_residual = std::max(out.interior_residual, worst);
    }
    out.full_residual = system.residual(system.reduce(labels)).cwiseAbs().maxCoeff();
    return out;
}

FlypeReport flype_compare(const Flype& flype, const SolverOptions& options) {
    if (flype.sign != 1 && flype.sign != -1) throw Error(ErrorCode::IllegalFlype, "crossing sign must be +1 or -1");
    const int rest_first = first_crossing(flype.rest.graph());
    if (rest_first < 0) throw Error(ErrorCode::IllegalFlype, "the rest of the diagram needs a crossing");
    const Tangle x = Tangle::crossing(flype.sign, -1);
    PlanarGraph g1, g2;
    try {
        g1 = (x + flype.tangle + flype.rest).numerator();
        g2 = (flype.tangle.flipped() + x + flype.rest).numerator();
    } catch (const Error& e) {
        throw Error(ErrorCode::IllegalFlype, e.what());
    }
    const int nx = x.graph().node_count(), nr = flype.tangle.graph().node_count();
    // node j of g1 sits at after[j] in g2
    std::vector<int> after(g1.node_count());
    for (int j = 0; j < g1.node_count(); ++j) {
        if (j < nx) after[j] = nr + j;
        else if (j < nx + nr) after[j] = j - nx;
        else after[j] = j;
    }
    // fix the mirror image by a crossing outside the move
    g1.make_alternating(nx + nr + rest_first);
    g2.make_alternating(nx + nr + rest_first);
    const BuiltDiagram b1 = g1.to_diagram();
    BuiltDiagram b2 = g2.to_diagram();

    // orient the second diagram so crossing signs agree
    auto agreement = [&](const BuiltDiagram& b) {
        int n = 0;
        for (int j = 0; j < g1.node_count(); ++j) {
            if (!g1.is_crossing(j)) continue;
            n += b1.diagram.handedness(b1.pd_of_node[j]) == b.diagram.handedness(b.pd_of_node[after[j]]) ? 1 : 0;
        }
        return n;
    };
    const int comps = b2.diagram.component_count();
    int best = agreement(b2);
    for (int mask = 1; mask < (1 << comps); ++mask) {
        std::vector<bool> rev(comps);
        for (int c = 0; c < comps; ++c) rev[c] = (mask >> c) & 1;
        BuiltDiagram cand = g2.to_diagram(rev);
        const int a = agreement(cand);
        if (a > best) {
            best = a;
            b2 = std::move(cand);
        }
    }

    FlypeReport out;
    out.before = b1.diagram;
    out.after = b2.diagram;
    out.same_diagram = b1.diagram.crossings() == b2.diagram.crossings();
    const auto s1 = ResidualSystem::assemble(b1.diagram);
    const auto s2 = ResidualSystem::assemble(b2.diagram);
    const Vec v1 = select_geometric(s1, solve_all(s1, options)).x;
    const Vec v2 = select_geometric(s2, solve_all(s2, options)).x;
    for (int j = 0; j < g1.node_count(); ++j) {
        if (!g1.is_crossing(j)) continue;
        const cplx w1 = v1(s1.w_index(b1.pd_of_node[j]));
        const cplx w2 = v2(s2.w_index(b2.pd_of_node[after[j]]));
        out.correspondence.emplace_back(g1.tag(j), w1, w2);
        if (j < nx) {
            out.w_before = w1;
            out.w_after = w2;
        }
    }
    out.difference = std::abs(out.w_before - out.w_after);
    return out;
}

}  // namespace labelgeom

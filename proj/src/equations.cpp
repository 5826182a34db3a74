#include "labelgeom/equations.hpp"

#include <string>

#include "labelgeom/error.hpp"

namespace labelgeom {

ResidualSystem::ResidualSystem(PlanarDiagram diagram) : diagram_(std::move(diagram)) {
    for (const auto& r : diagram_.regions()) {
        if (r.sides() == 2) bigons_.push_back(r.face);
    }
}

ResidualSystem ResidualSystem::assemble(const PlanarDiagram& diagram, const ValidationPolicy& policy) {
    auto report = validate(diagram, policy);
    if (!report.accepted) {
        std::string why;
        for (const auto& r : report.reasons) why += (why.empty() ? "" : "; ") + r;
        throw Error(ErrorCode::UnvalidatedDiagram, why);
    }
    return ResidualSystem(diagram);
}

ResidualSystem ResidualSystem::unchecked(const PlanarDiagram& diagram) { return ResidualSystem(diagram); }

cplx ResidualSystem::side_label(const Vec& x, int edge, int face) const {
    const auto& e = diagram_.edge(edge);
    const cplx black = x(u_index(edge));
    if (e.left_face != face && e.right_face != face) {
        throw Error(ErrorCode::InvalidArgument, "edge " + std::to_string(edge) + " does not bound face " + std::to_string(face));
    }
    return diagram_.color(face) == Color::Black ? black : black - static_cast<double>(e.kappa);
}

Moebius ResidualSystem::region_product(const Vec& x, int face, int start) const {
    const Region& r = diagram_.region(face);
    const int n = static_cast<int>(r.sides());
    Moebius p = Moebius::identity();
    for (int k = 0; k < n; ++k) {
        const Corner& c = r.corners[(start + k) % n];
        const cplx u = side_label(x, c.edge_in, face);
        p = Moebius{0.0, -x(w_index(c.crossing)), 1.0, static_cast<double>(c.eps_in) * u} * p;
    }
    return p;
}

Vec ResidualSystem::residual(const Vec& x) const {
    Vec r(residual_count());
    int row = 0;
    for (const auto& region : diagram_.regions()) {
        const Moebius p = region_product(x, region.face);
        r(row++) = p.b();
        r(row++) = p.c();
        r(row++) = p.a() - p.d();
    }
    for (int face : bigons_) {
        for (const auto& c : diagram_.region(face).corners) r(row++) = side_label(x, c.edge_in, face);
    }
    return r;
}

Mat ResidualSystem::jacobian(const Vec& x) const {
    Mat j = Mat::Zero(residual_count(), unknown_count());
    int row = 0;
    for (const auto& region : diagram_.regions()) {
        const int n = static_cast<int>(region.sides());
        std::vector<Moebius> a;
        for (const auto& c : region.corners) {
            const cplx u = side_label(x, c.edge_in, region.face);
            a.push_back({0.0, -x(w_index(c.crossing)), 1.0, static_cast<double>(c.eps_in) * u});
        }
        // suffix[i] = A_{i-1} ... A_0, prefix[i] = A_{n-1} ... A_{i+1}
        std::vector<Moebius> right(n, Moebius::identity()), left(n, Moebius::identity());
        for (int i = 1; i < n; ++i) right[i] = a[i - 1] * right[i - 1];
        for (int i = n - 2; i >= 0; --i) left[i] = left[i + 1] * a[i + 1];
        for (int i = 0; i < n; ++i) {
            const Corner& c = region.corners[i];
            const Moebius du = left[i] * Moebius{0.0, 0.0, 0.0, static_cast<double>(c.eps_in)} * right[i];
            const Moebius dw = left[i] * Moebius{0.0, -1.0, 0.0, 0.0} * right[i];
            const int cu = u_index(c.edge_in), cw = w_index(c.crossing);
            j(row, cu) += du.b();
            j(row + 1, cu) += du.c();
            j(row + 2, cu) += du.a() - du.d();
            j(row, cw) += dw.b();
            j(row + 1, cw) += dw.c();
            j(row + 2, cw) += dw.a() - dw.d();
        }
        row += 3;
    }
    for (int face : bigons_) {
        for (const auto& c : diagram_.region(face).corners) j(row++, u_index(c.edge_in)) = 1.0;
    }
    return j;
}

LabelAssignment ResidualSystem::expand(const Vec& x) const {
    LabelAssignment out;
    for (const auto& e : diagram_.edges()) {
        out.black.push_back(x(u_index(e.index)));
        out.white.push_back(x(u_index(e.index)) - static_cast<double>(e.kappa));
    }
    for (int c = 0; c < diagram_.crossing_count(); ++c) out.crossing.push_back(x(w_index(c)));
    return out;
}

Vec ResidualSystem::reduce(const LabelAssignment& labels) const {
    if (static_cast<int>(labels.black.size()) != diagram_.edge_count() ||
        static_cast<int>(labels.crossing.size()) != diagram_.crossing_count()) {
        throw Error(ErrorCode::InvalidArgument, "label assignment does not match the diagram");
    }
    Vec x(unknown_count());
    for (int e = 1; e <= diagram_.edge_count(); ++e) x(u_index(e)) = labels.black[e - 1];
    for (int c = 0; c < diagram_.crossing_count(); ++c) x(w_index(c)) = labels.crossing[c];
    return x;
}

Moebius region_product(const Region& region, const std::vector<cplx>& u, const std::vector<cplx>& w) {
    if (u.size() != region.sides() || w.size() != region.sides()) {
        throw Error(ErrorCode::InvalidArgument, "one side label and one corner label per side");
    }
    Moebius p = Moebius::identity();
    for (std::size_t i = 0; i < region.sides(); ++i) {
        p = Moebius{0.0, -w[i], 1.0, static_cast<double>(region.corners[i].eps_in) * u[i]} * p;
    }
    return p;
}

cplx shape_from_labels(cplx w, cplx u1, cplx u2, int kappa) {
    if (u1 == 0.0 || u2 == 0.0) throw Error(ErrorCode::ZeroEdgeLabel, "edge label vanishes at a corner");
    return static_cast<double>(kappa) * w / (u1 * u2);
}

std::vector<cplx> region_shapes(const ResidualSystem& system, const Vec& x, int face) {
    const Region& r = system.diagram().region(face);
    const std::size_t n = r.sides();
    std::vector<cplx> out;
    for (std::size_t i = 0; i < n; ++i) {
        const Corner& c = r.corners[i];
        const cplx u1 = system.side_label(x, c.edge_in, face);
        const cplx u2 = system.side_label(x, r.corners[(i + 1) % n].edge_in, face);
        out.push_back(std::conj(shape_from_labels(x(system.w_index(c.crossing)), u1, u2, c.kappa())));
    }
    return out;
}

}  // namespace labelgeom

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "labelgeom/analysis.hpp"
#include "labelgeom/census.hpp"
#include "labelgeom/error.hpp"

using namespace labelgeom;

namespace {

Solution geometric(const ResidualSystem& s, int restarts = 48) {
    SolverOptions o;
    o.restarts = restarts;
    return select_geometric(s, solve_all(s, o));
}

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Geodesics, BorromeanPerpendicularAtLnTwo) {
    auto s = ResidualSystem::assemble(census_diagram("borromean"));
    auto r = geodesic_report(s, geometric(s));
    ASSERT_EQ(r.crossings.size(), 6u);
    for (const auto& g : r.crossings) {
        EXPECT_NEAR(g.distance, std::log(2.0), 1e-9);
        EXPECT_NEAR(std::abs(g.angle), std::numbers::pi / 2, 1e-9);
        EXPECT_FALSE(g.degenerate);
        for (const auto& z : g.corner_shapes) EXPECT_TRUE(z.has_value());
    }
    EXPECT_LT(r.max_regularity_deviation, 1e-9);
}

TEST(Geodesics, FigureEightCuspsTouch) {
    auto s = ResidualSystem::assemble(census_diagram("fig8"));
    auto g = geometric(s);
    auto r = geodesic_report(s, g);
    for (const auto& c : r.crossings) {
        EXPECT_TRUE(c.degenerate);
        EXPECT_NEAR(c.distance, 0.0, 1e-9);
        // one corner of each crossing sits in a bigon
        int shapes = 0;
        for (const auto& z : c.corner_shapes) shapes += z.has_value() ? 1 : 0;
        EXPECT_EQ(shapes, 3);
    }
    EXPECT_NEAR(expanded_meridian(s, g), 1.0, 1e-9);
}

TEST(Geodesics, CornerShapesComeFromTheSolution) {
    auto s = ResidualSystem::assemble(census_diagram("9a37"));
    auto g = geometric(s);
    auto r = geodesic_report(s, g);
    const auto& d = s.diagram();
    for (const auto& c : r.crossings) {
        for (int k = 0; k < 4; ++k) {
            ASSERT_TRUE(c.corner_shapes[k].has_value());
            const Region& reg = d.region(d.face_at_corner(c.crossing, k));
            for (std::size_t i = 0; i < reg.sides(); ++i) {
                if (reg.corners[i].crossing == c.crossing && reg.corners[i].corner == k) {
                    EXPECT_EQ(*c.corner_shapes[k], region_shapes(s, g.x, reg.face)[i]);
                }
            }
        }
    }
    EXPECT_GT(r.max_regularity_deviation, 1e-3);
}

TEST(Geodesics, ExpandedMeridianApproachesRootThree) {
    double last = 1e9;
    for (int n : {6, 10, 14}) {
        auto s = ResidualSystem::assemble(census_diagram("Ln:" + std::to_string(n)));
        const double gap = std::abs(expanded_meridian(s, geometric(s, 8)) - std::sqrt(3.0));
        EXPECT_LT(gap, last) << n;
        last = gap;
    }
    EXPECT_LT(last, 0.1);
}

TEST(Chords, SingleCornerIsCrossingLabel) {
    auto s = ResidualSystem::assemble(census_diagram("11a79"));
    auto g = geometric(s);
    for (const auto& r : s.diagram().regions()) {
        for (int i = 0; i < static_cast<int>(r.sides()); ++i) {
            EXPECT_LT(std::abs(chord_label(s, g.x, r.face, i, i + 1) - g.x(s.w_index(r.corners[i].crossing))), 1e-12);
        }
    }
}

TEST(Chords, TriangleChordIsThirdCorner) {
    auto s = ResidualSystem::assemble(census_diagram("borromean"));
    auto g = geometric(s);
    for (const auto& r : s.diagram().regions()) {
        if (r.sides() != 3) continue;
        for (int i = 0; i < 3; ++i) {
            const cplx third = g.x(s.w_index(r.corners[(i + 2) % 3].crossing));
            EXPECT_LT(std::abs(chord_label(s, g.x, r.face, i, i + 2) - third), 1e-9);
        }
    }
    EXPECT_THROW(chord_label(s, g.x, 0, 1, 1), Error);
}

TEST(Tangles, FragmentEndsMustBeFour) {
    EXPECT_EQ(code_of([] { tangle_from_pd("X 1 2 2 3\n"); }), ErrorCode::WrongEndCount);
    EXPECT_EQ(code_of([] { tangle_from_pd("X 1 2 3 4\nX 5 6 7 8\n"); }), ErrorCode::WrongEndCount);
    EXPECT_EQ(code_of([] { tangle_from_pd("X 1 1 1 2\n"); }), ErrorCode::EdgeIndexNotTwice);
    PlanarGraph g;
    const int x = g.add_crossing(false);
    g.add_joint();
    auto t = Tangle::from_graph(g, {Port{x, 0}, Port{x, 1}, Port{x, 2}, Port{x, 3}});
    EXPECT_EQ(code_of([&] { encircle(t); }), ErrorCode::WrongEndCount);
}

TEST(Tangles, SingleCrossingGivesFiveCrossingLink) {
    auto e = encircle(tangle_from_pd("X 1 2 3 4\n"));
    EXPECT_EQ(e.diagram.crossing_count(), 5);
    EXPECT_TRUE(e.diagram.is_alternating());
    EXPECT_TRUE(validate(e.diagram).accepted);
}

TEST(Tangles, ClaspFragment) {
    auto e = encircle(tangle_from_pd("X 1 2 5 6\nX 6 5 3 4\n"));
    EXPECT_EQ(e.diagram.crossing_count(), 6);
    auto s = ResidualSystem::assemble(e.diagram);
    auto b = boundary_labels(s, geometric(s).x, e);
    EXPECT_LT(std::abs(std::abs(b.punctured_sphere_labels[0]) - 0.25), 1e-9);
}

TEST(Tangles, ArcOneHasLowestEdge) {
    for (auto v : encircled_variants()) {
        auto e = encircled_census(v);
        EXPECT_EQ(e.circle_edges[0], *std::min_element(e.circle_edges.begin(), e.circle_edges.end())) << v;
        EXPECT_EQ(e.diagram.region(e.outer_face).sides(), 4u) << v;
    }
}

TEST(Tangles, CensusNames) {
    EXPECT_EQ(census_diagram("encircled:clasp").crossings(), encircled_census("clasp").diagram.crossings());
    EXPECT_EQ(code_of([] { census_diagram("encircled:nope"); }), ErrorCode::UnknownCensusName);
}

TEST(Tangles, WrongSystemIsRejected) {
    auto e = encircled_census("crossing");
    auto s = ResidualSystem::assemble(census_diagram("fig8"));
    Vec x = Vec::Ones(s.unknown_count());
    EXPECT_EQ(code_of([&] { boundary_labels(s, x, e); }), ErrorCode::PatternNotFound);
    EXPECT_EQ(code_of([&] { scale_boundary(s, x, e, 2.0); }), ErrorCode::PatternNotFound);
}

class Encircled : public ::testing::TestWithParam<std::string_view> {
protected:
    void SetUp() override {
        enc = encircled_census(GetParam());
        system.emplace(ResidualSystem::assemble(enc.diagram));
        sol = geometric(*system);
    }
    EncircledDiagram enc;
    std::optional<ResidualSystem> system;
    Solution sol;
};

TEST_P(Encircled, OppositeArcsAgree) {
    auto b = boundary_labels(*system, sol.x, enc);
    EXPECT_LT(std::abs(b.arc_labels[0] - b.arc_labels[2]), 1e-9);
    EXPECT_LT(std::abs(b.arc_labels[1] - b.arc_labels[3]), 1e-9);
}

TEST_P(Encircled, BoundaryLabelsRigidity) {
    auto b = boundary_labels(*system, sol.x, enc);
    EXPECT_LT(std::abs(b.edge_labels[0] - b.edge_labels[2]), 1e-9);
    EXPECT_LT(std::abs(b.edge_labels[1] - b.edge_labels[3]), 1e-9);
    const auto& d = system->diagram();
    for (int i = 1; i < 4; ++i) {
        const int sign = d.handedness(enc.circle_crossings[0]) * d.handedness(enc.circle_crossings[i]);
        EXPECT_LT(std::abs(b.crossing_labels[i] - static_cast<double>(sign) * b.crossing_labels[0]), 1e-9) << i;
    }
}

TEST_P(Encircled, PuncturedSphereLabelIsQuarter) {
    auto b = boundary_labels(*system, sol.x, enc);
    const cplx expect = enc.parallel ? 0.25 : -0.25;
    for (cplx g : b.punctured_sphere_labels) EXPECT_LT(std::abs(g - expect), 1e-9);
    EXPECT_LT(std::abs(b.triangle_relation - b.punctured_sphere_labels[0]), 1e-12);
}

TEST_P(Encircled, OuterFaceIsTheTwoStrandPattern) {
    // outside C the closing arcs and C form the two-strand pattern: bigon
    // sides vanish, the two arcs of C agree and |w| is half their label
    const auto& d = system->diagram();
    const Region& outer = d.region(enc.outer_face);
    std::vector<cplx> arcs;
    for (const auto& c : outer.corners) {
        if (c.edge_in == enc.closure_edges[0] || c.edge_in == enc.closure_edges[1]) continue;
        arcs.push_back(system->side_label(sol.x, c.edge_in, outer.face));
    }
    ASSERT_EQ(arcs.size(), 2u);
    EXPECT_LT(std::abs(arcs[0] - arcs[1]), 1e-9);
    for (int x : enc.circle_crossings) EXPECT_NEAR(std::abs(sol.x(system->w_index(x))), std::abs(arcs[0]) / 2, 1e-9);
}

TEST_P(Encircled, ScalingKeepsInteriorSolved) {
    for (cplx k : {cplx(2.0), cplx(0.0, 1.0), cplx(0.3, -0.7)}) {
        auto r = scale_boundary(*system, sol.x, enc, k);
        EXPECT_LT(r.interior_residual, 1e-10) << k;
        EXPECT_GT(r.full_residual, 1e-3) << k;
    }
    auto same = scale_boundary(*system, sol.x, enc, 1.0);
    EXPECT_DOUBLE_EQ(same.full_residual, system->residual(sol.x).cwiseAbs().maxCoeff());
    EXPECT_EQ(code_of([&] { scale_boundary(*system, sol.x, enc, 0.0); }), ErrorCode::ZeroScale);
}

INSTANTIATE_TEST_SUITE_P(Variants, Encircled, ::testing::ValuesIn(encircled_variants()),
                         [](const auto& info) { return std::string(info.param); });

TEST(Flypes, TradedCrossingsShareLabels) {
    const Tangle r = (Tangle::crossing(1, 1) * Tangle::crossing(1, 2)) + Tangle::crossing(1, 3);
    const Tangle s = Tangle::crossing(1, 4) * Tangle::crossing(1, 5) * Tangle::crossing(1, 6);
    SolverOptions o;
    o.restarts = 16;
    for (const Tangle& t : {r, r.rotated()}) {
        auto rep = flype_compare({t, s, 1}, o);
        EXPECT_EQ(rep.before.crossing_count(), 7);
        EXPECT_TRUE(rep.after.is_alternating());
        EXPECT_FALSE(rep.same_diagram);
        EXPECT_LT(rep.difference, 1e-9);
        for (const auto& [tag, a, b] : rep.correspondence) EXPECT_LT(std::abs(a - b), 1e-9) << "tag " << tag;
    }
}

TEST(Flypes, EmptyTangleChangesNothing) {
    const Tangle s = Tangle::crossing(1, 4) * Tangle::crossing(1, 5) * Tangle::crossing(1, 6) + Tangle::crossing(1, 7);
    auto rep = flype_compare({Tangle::zero(), s, 1});
    EXPECT_TRUE(rep.same_diagram);
    EXPECT_EQ(rep.difference, 0.0);
}

TEST(Flypes, IllegalMoves) {
    EXPECT_EQ(code_of([] { flype_compare({Tangle::crossing(), Tangle::crossing(), 0}); }), ErrorCode::IllegalFlype);
    EXPECT_EQ(code_of([] { flype_compare({Tangle::crossing(), Tangle::zero(), 1}); }), ErrorCode::IllegalFlype);
}

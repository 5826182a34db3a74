#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <tuple>
#include <vector>

#include "labelgeom/planar.hpp"
#include "labelgeom/solver.hpp"

namespace labelgeom {

struct CrossingGeodesic {
    int crossing = -1;
    cplx w;
    double distance = 0.0;  ///< -ln|w|
    double angle = 0.0;     ///< arg(-w)
    bool degenerate = false;  ///< |w| >= 1, cusps already touching
    /// Shapes at the four corners, PD corner order; empty at bigon corners.
    std::array<std::optional<cplx>, 4> corner_shapes;
};

struct GeodesicReport {
    std::vector<CrossingGeodesic> crossings;
    /// max |zeta - regular_shape(n)| over corners of regions with n >= 3
    double max_regularity_deviation = 0.0;
};

GeodesicReport geodesic_report(const ResidualSystem& system, const Solution& solution);

/// Meridian length once equal cusps are grown until they first touch.
double expanded_meridian(const ResidualSystem& system, const Solution& solution);

/// Label of the geodesic joining the cusps of sides `from` and `to` of a
/// region (from < to), read off the product of the corners between them:
/// det / (2,1)^2.  A single corner gives back its crossing label.
cplx chord_label(const ResidualSystem& system, const Vec& x, int face, int from, int to);

/// A four-ended tangle read from PD lines.  Labels used once are the free
/// ends; their order round the tangle comes from its outer face.
Tangle tangle_from_pd(std::string_view text);

/// Link diagram of an inner tangle encircled by an unknotted circle C that
/// weaves alternately over and under its four ends, closed outside C by two
/// arcs (NE to NW, SW to SE).  Boundary bookkeeping is kept from the build.
struct EncircledDiagram {
    PlanarDiagram diagram;
    std::array<int, 4> circle_crossings{};  ///< K_1..K_4 counterclockwise
    std::array<int, 4> circle_edges{};      ///< arc i runs between K_i and K_{i+1}; arc 1 has the lowest index
    std::array<int, 4> inside_faces{};      ///< face inside C along arc i
    std::array<int, 4> inward_edges{};      ///< edge from K_i into the inner tangle
    std::array<int, 2> closure_edges{};     ///< upper, lower closing arc
    int outer_face = -1;                    ///< the 4-gon touching both closing arcs
    std::vector<int> interior_faces;        ///< faces inside C
    /// Both closing arcs pass through the disk bounded by C the same way.
    bool parallel = false;
};

/// Throws WrongEndCount when the inner tangle has a dangling port besides
/// its four ends.  `reverse_lower` flips the component of the lower arc.
EncircledDiagram encircle(const Tangle& inner, bool reverse_lower = false);

/// Named examples: crossing, clasp, hclasp, hclasp_reversed, twist3,
/// twist4, pretzel.  Throws UnknownCensusName.
EncircledDiagram encircled_census(std::string_view variant);
std::vector<std::string_view> encircled_variants();

struct TangleBoundary {
    std::array<cplx, 4> crossing_labels;  ///< w_i at K_i
    std::array<cplx, 4> edge_labels;      ///< u_i on the inside of arc i
    std::array<cplx, 4> arc_labels;       ///< w_{i,i+1}, across the inside face of arc i
    /// Label of the geodesic joining the two closing arcs inside the disk
    /// bounded by C, both ways round the outer face.
    std::array<cplx, 2> punctured_sphere_labels;
    /// w_a w_b / u^2 from the two corners and middle side used above.
    cplx triangle_relation;
    bool parallel = false;
};

/// Throws PatternNotFound when the system is not built on `encircled`.
TangleBoundary boundary_labels(const ResidualSystem& system, const Vec& x, const EncircledDiagram& encircled);

struct ScaleReport {
    double interior_residual = 0.0;  ///< regions inside C after scaling
    double full_residual = 0.0;      ///< whole link, outside labels following the edge rule
};

/// Multiplies the eight boundary labels by k, keeps interior labels.
/// Throws ZeroScale for k = 0 and PatternNotFound as above.
ScaleReport scale_boundary(const ResidualSystem& system, const Vec& x, const EncircledDiagram& encircled, cplx k);

/// A flype of numerator(X + R + S) into numerator(R' + X + S), where X is
/// a single crossing and R' is R turned over about the horizontal axis.
struct Flype {
    Tangle tangle;  ///< R
    Tangle rest;    ///< S, must contain a crossing
    int sign = 1;   ///< type of X
};

struct FlypeReport {
    PlanarDiagram before;
    PlanarDiagram after;
    bool same_diagram = false;
    cplx w_before;  ///< X before the move (c_1)
    cplx w_after;   ///< X after the move (c_2)
    double difference = 0.0;
    /// (tag, label before, label after) for every crossing
    std::vector<std::tuple<int, cplx, cplx>> correspondence;
};

/// Tags: X is -1, crossings of R and S keep theirs.  Throws IllegalFlype.
FlypeReport flype_compare(const Flype& flype, const SolverOptions& options = {});

}  // namespace labelgeom

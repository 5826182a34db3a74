#pragma once

#include <Eigen/Dense>
#include <vector>

#include "labelgeom/diagram.hpp"
#include "labelgeom/moebius.hpp"

namespace labelgeom {

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Labels on both sides of every edge plus the crossing labels.
struct LabelAssignment {
    std::vector<cplx> black;     ///< indexed by edge - 1
    std::vector<cplx> white;     ///< indexed by edge - 1
    std::vector<cplx> crossing;  ///< indexed by crossing
};

/// The polynomial map whose zeros are label solutions.  Unknowns are the
/// black-side label of each edge (ascending index) followed by the crossing
/// labels; white sides are black minus kappa.  Each region contributes the
/// off-diagonal entries and the diagonal difference of its matrix product,
/// and each bigon adds its two side labels.
class ResidualSystem {
public:
    /// Requires the diagram to pass `validate` under `policy`.
    static ResidualSystem assemble(const PlanarDiagram& diagram, const ValidationPolicy& policy = {});
    /// No validation; for experiments on diagrams outside the accepted class.
    static ResidualSystem unchecked(const PlanarDiagram& diagram);

    const PlanarDiagram& diagram() const { return diagram_; }
    int unknown_count() const { return 3 * diagram_.crossing_count(); }
    int residual_count() const { return 3 * diagram_.face_count() + 2 * static_cast<int>(bigons_.size()); }
    const std::vector<int>& bigons() const { return bigons_; }

    int u_index(int edge) const { return edge - 1; }
    int w_index(int crossing) const { return diagram_.edge_count() + crossing; }

    /// Label on the side of `edge` facing `face`.
    cplx side_label(const Vec& x, int edge, int face) const;

    /// Product around a region, starting at side `start` instead of side 0.
    Moebius region_product(const Vec& x, int face, int start = 0) const;

    Vec residual(const Vec& x) const;
    Mat jacobian(const Vec& x) const;

    LabelAssignment expand(const Vec& x) const;
    Vec reduce(const LabelAssignment& labels) const;

private:
    explicit ResidualSystem(PlanarDiagram diagram);

    PlanarDiagram diagram_;
    std::vector<int> bigons_;
};

/// Product A_n ... A_1 with A_i = [[0, -w_i], [1, eps_i u_i]] for explicit
/// side labels u_i and corner labels w_i.
Moebius region_product(const Region& region, const std::vector<cplx>& u, const std::vector<cplx>& w);

/// Conjugate shape parameter kappa w / (u1 u2) at a corner.
cplx shape_from_labels(cplx w, cplx u1, cplx u2, int kappa);

/// Shape parameters (not conjugated) at the corners of a region; corner i
/// sits between sides i and i+1.
std::vector<cplx> region_shapes(const ResidualSystem& system, const Vec& x, int face);

}  // namespace labelgeom

#pragma once

#include <map>
#include <random>
#include <string_view>
#include <vector>

#include "labelgeom/equations.hpp"

namespace labelgeom {

/// outgoing = over^sign * incoming * over^-sign
struct WirtingerRelation {
    int crossing = -1;
    int over = -1;
    int incoming = -1;
    int outgoing = -1;
    int sign = 1;
};

/// Generators are the overpass arcs, numbered in the order met when walking
/// the components from edge 1; the basepoint is arc 0.
struct WirtingerPresentation {
    int generator_count = 0;
    std::vector<int> arc_of_edge;  ///< indexed by edge - 1
    std::vector<WirtingerRelation> relations;
    int basepoint = 0;
};

WirtingerPresentation wirtinger(const PlanarDiagram& diagram);

/// Point where the crossing geodesic of `crossing` meets the torus of one
/// strand, approached from one side of the over strand (0 left, 1 right).
struct PathNode {
    int crossing = -1;
    Level level = Level::Under;
    int side = 0;

    friend bool operator==(const PathNode&, const PathNode&) = default;
};

enum class StepKind { Vertical, Torus, Meridian };

/// Directed move between nodes.  Torus steps run along `edge` on the side
/// facing `face`, with or against the edge.
struct PathStep {
    StepKind kind = StepKind::Vertical;
    int from = -1;
    int to = -1;
    int crossing = -1;
    int edge = -1;
    int face = -1;
    int direction = 1;  ///< +1 along the edge (torus), left to right (meridian)
};

class PathGraph {
public:
    explicit PathGraph(const PlanarDiagram& diagram);

    const PlanarDiagram& diagram() const { return *diagram_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    const PathNode& node(int n) const { return nodes_.at(n); }
    int index(const PathNode& n) const;
    const std::vector<PathStep>& steps() const { return steps_; }
    /// Outgoing step ids of a node.
    const std::vector<int>& out(int n) const { return out_.at(n); }
    /// Overpass arc whose torus carries the node.
    int arc_of(int n) const { return arc_of_node_.at(n); }
    const WirtingerPresentation& presentation() const { return presentation_; }

    /// Matrix of one step under the labels x.
    Moebius matrix(const PathStep& step, const ResidualSystem& system, const Vec& x) const;

    /// Default basepoint: a node on arc 0, on the over strand when arc 0
    /// passes over anything.
    int default_basepoint() const;

private:
    const PlanarDiagram* diagram_;
    WirtingerPresentation presentation_;
    std::vector<PathNode> nodes_;
    std::vector<PathStep> steps_;
    std::vector<std::vector<int>> out_;
    std::vector<int> arc_of_node_;
};

/// Step ids of a shortest path from `from` to any node on `arc`.  With an
/// rng, ties are broken at random (for path-independence checks).
std::vector<int> shortest_path(const PathGraph& graph, int from, int arc, std::mt19937_64* rng = nullptr);

/// Ordered product of the step matrices along a path.  Throws Unreachable
/// when the arc cannot be reached.
Moebius conjugator(const PathGraph& graph, const ResidualSystem& system, const Vec& x, int from, int arc,
                   std::mt19937_64* rng = nullptr);

struct ParabolicRep {
    std::vector<Moebius> generators;   ///< M T M^-1 per arc
    std::vector<Moebius> conjugators;  ///< M per arc
    int basepoint_node = -1;
    int basepoint_arc = 0;
};

ParabolicRep parabolic_rep(const PathGraph& graph, const ResidualSystem& system, const Vec& x, int basepoint_node = -1,
                           std::mt19937_64* rng = nullptr);

struct VerifyReport {
    std::vector<double> relator_deviation;  ///< projective distance from the identity, per relation
    double max_relator_deviation = 0.0;
    double max_trace_defect = 0.0;  ///< max | |tr| - 2 | over normalized generator images
};

VerifyReport verify(const ParabolicRep& rep, const WirtingerPresentation& presentation);

/// Word in letters mapped to arcs; a lower-case letter is the generator,
/// upper-case its inverse.  Throws InvalidArgument on unknown letters.
Moebius evaluate_word(const ParabolicRep& rep, std::string_view word, const std::map<char, int>& letters);

}  // namespace labelgeom

#pragma once

#include <array>
#include <random>
#include <vector>

#include "labelgeom/diagram.hpp"

namespace labelgeom {

/// One slot of a node in an unoriented planar graph.  Crossing nodes have
/// four slots in counterclockwise order; joints are two-slot pass-throughs
/// used for free arcs and closures.
struct Port {
    int node = -1;
    int slot = -1;

    bool valid() const { return node >= 0; }
    friend bool operator==(const Port&, const Port&) = default;
};

struct BuiltDiagram {
    PlanarDiagram diagram;
    std::vector<int> tags;         ///< caller tag of each PD crossing
    std::vector<int> pd_of_node;   ///< PD crossing index of each graph node, -1 for joints
    std::vector<std::array<int, 4>> edge_at_slot;  ///< PD edge at each crossing slot, 0 for joints
};

/// Projection-level link or tangle graph.  Orientation is assigned only
/// when converting to a PD code.
class PlanarGraph {
public:
    int add_crossing(bool over_even, int tag = 0);
    int add_joint();
    void connect(Port a, Port b);

    Port link(Port p) const { return nodes_.at(p.node).adj.at(p.slot); }
    bool is_crossing(int node) const { return nodes_.at(node).crossing; }
    bool over_even(int node) const { return nodes_.at(node).over_even; }
    int tag(int node) const { return nodes_.at(node).tag; }
    int node_count() const { return static_cast<int>(nodes_.size()); }

    /// Orientation hint: the strand through this crossing slot enters here.
    void set_entering(Port p, bool entering);

    /// Node offset of `other` inside this graph after appending it.
    int append(const PlanarGraph& other);

    /// Reverse the cyclic order at every crossing and exchange over with
    /// under: a half-turn of the ball about an axis in the plane.
    void flip_all();

    /// Reassign crossing types so the projection alternates.  With `keep`
    /// set, the choice of mirror keeps that crossing's current type.
    void make_alternating(int keep = -1);

    /// First crossing slot reached from crossing slot `p`, skipping joints.
    Port next_crossing_port(Port p) const;

    /// Orients every component (hint, else leaving the lowest slot of its
    /// lowest crossing), optionally reverses some, numbers edges per
    /// component and emits PD tuples.
    BuiltDiagram to_diagram(const std::vector<bool>& reverse = {}) const;

private:
    struct Node {
        bool crossing = true;
        bool over_even = false;  ///< over-strand uses slots 0 and 2
        int tag = 0;
        std::array<Port, 4> adj{};
        std::array<int, 4> hint{};  ///< +1 entering, -1 leaving, 0 unknown
    };
    std::vector<Node> nodes_;
};

enum End : int { NW = 0, NE = 1, SE = 2, SW = 3 };

/// Four-ended tangle: a planar graph plus its free ports, indexed by End.
class Tangle {
public:
    /// Single crossing with its strands SW-NE and SE-NW; sign +1 puts the
    /// SE-NW strand on top.
    static Tangle crossing(int sign = 1, int tag = 0);
    /// Two free arcs NW-NE and SW-SE.
    static Tangle zero();
    /// Two free arcs NW-SW and NE-SE.
    static Tangle infinity();
    /// Horizontal twist of |n| crossings of the given sign (n = 0 gives zero()).
    static Tangle twist(int n, int tag = 0);
    /// Wraps a graph whose only free ports are `ends`.
    static Tangle from_graph(PlanarGraph graph, const std::array<Port, 4>& ends);

    const PlanarGraph& graph() const { return graph_; }
    PlanarGraph& graph() { return graph_; }
    Port end(End e) const { return ends_[e]; }

    /// Quarter-turn counterclockwise.
    Tangle rotated() const;
    /// Half-turn about the horizontal axis (NW and SW trade places).
    Tangle flipped() const;

    PlanarGraph numerator() const;
    PlanarGraph denominator() const;

    friend Tangle operator+(const Tangle& a, const Tangle& b);
    /// `a` stacked on top of `b`.
    friend Tangle operator*(const Tangle& a, const Tangle& b);

private:
    PlanarGraph graph_;
    std::array<Port, 4> ends_{};
};

/// Closed braid on `strands` strands; letter +i is sigma_i, -i its inverse.
/// Strands run upward.
BuiltDiagram braid_closure(int strands, const std::vector<int>& word);

/// Closure of (sigma_1 sigma_2^-1)^n.
PlanarDiagram braid_closure_L(int n);

/// Standard (2,n) torus diagram.
PlanarDiagram torus_2n(int n);

/// Random alternating diagram of an algebraic link with c crossings.
PlanarDiagram random_alternating_diagram(int c, std::mt19937_64& rng);

/// Projection graph of a PD diagram, with orientation hints.  Crossing
/// node i is PD crossing i with PD positions as slots and tag i.
PlanarGraph graph_of(const PlanarDiagram& diagram);

}  // namespace labelgeom

#include "labelgeom/planar.hpp"

#include <cstdlib>
#include <queue>
#include <string>

#include "labelgeom/error.hpp"

namespace labelgeom {

int PlanarGraph::add_crossing(bool over_even, int tag) {
    Node n;
    n.crossing = true;
    n.over_even = over_even;
    n.tag = tag;
    nodes_.push_back(n);
    return node_count() - 1;
}

int PlanarGraph::add_joint() {
    Node n;
    n.crossing = false;
    nodes_.push_back(n);
    return node_count() - 1;
}

void PlanarGraph::connect(Port a, Port b) {
    auto& pa = nodes_.at(a.node).adj.at(a.slot);
    auto& pb = nodes_.at(b.node).adj.at(b.slot);
    if (pa.valid() || pb.valid()) throw Error(ErrorCode::InvalidArgument, "port already connected");
    pa = b;
    pb = a;
}

void PlanarGraph::set_entering(Port p, bool entering) {
    auto& n = nodes_.at(p.node);
    n.hint.at(p.slot) = entering ? 1 : -1;
    n.hint.at((p.slot + 2) % 4) = entering ? -1 : 1;
}

int PlanarGraph::append(const PlanarGraph& other) {
    const int offset = node_count();
    for (Node n : other.nodes_) {
        for (auto& p : n.adj) {
            if (p.valid()) p.node += offset;
        }
        nodes_.push_back(n);
    }
    return offset;
}

void PlanarGraph::flip_all() {
    auto remap = [&](Port p) {
        if (p.valid() && nodes_[p.node].crossing) p.slot = (4 - p.slot) % 4;
        return p;
    };
    std::vector<Node> out = nodes_;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        Node& m = out[i];
        if (n.crossing) {
            for (int s = 0; s < 4; ++s) {
                m.adj[(4 - s) % 4] = remap(n.adj[s]);
                m.hint[(4 - s) % 4] = n.hint[s];
            }
            m.over_even = !n.over_even;
        } else {
            for (int s = 0; s < 2; ++s) m.adj[s] = remap(n.adj[s]);
        }
    }
    nodes_ = std::move(out);
}

Port PlanarGraph::next_crossing_port(Port p) const {
    Port q = link(p);
    int guard = 0;
    while (q.valid() && !nodes_[q.node].crossing) {
        q = link({q.node, 1 - q.slot});
        if (++guard > node_count()) throw Error(ErrorCode::InvalidArgument, "joint cycle");
    }
    if (!q.valid()) throw Error(ErrorCode::WrongEndCount, "graph has an unconnected port");
    return q;
}

void PlanarGraph::make_alternating(int keep) {
    const int n = node_count();
    // faces on crossing corners; corner k sits between slots k and k+1
    std::vector<std::array<int, 4>> face(n, {-1, -1, -1, -1});
    int faces = 0;
    for (int x = 0; x < n; ++x) {
        if (!nodes_[x].crossing) continue;
        for (int s = 0; s < 4; ++s) {
            if (face[x][s] >= 0) continue;
            Port dart{x, s};
            do {
                Port arrive = next_crossing_port(dart);
                Port leave{arrive.node, (arrive.slot + 3) % 4};
                face[leave.node][leave.slot] = faces;
                dart = leave;
            } while (!(dart == Port{x, s}));
            ++faces;
        }
    }
    // faces across the edge leaving (x,s): corner s and corner s-1 at x
    std::vector<std::vector<int>> adj(faces);
    for (int x = 0; x < n; ++x) {
        if (!nodes_[x].crossing) continue;
        for (int s = 0; s < 4; ++s) {
            int f = face[x][s], g = face[x][(s + 3) % 4];
            adj[f].push_back(g);
            adj[g].push_back(f);
        }
    }
    std::vector<int> col(faces, -1);
    for (int start = 0; start < faces; ++start) {
        if (col[start] >= 0) continue;
        col[start] = 0;
        std::queue<int> q;
        q.push(start);
        while (!q.empty()) {
            int f = q.front();
            q.pop();
            for (int g : adj[f]) {
                if (col[g] < 0) {
                    col[g] = 1 - col[f];
                    q.push(g);
                } else if (col[g] == col[f]) {
                    throw Error(ErrorCode::ColoringInconsistent, "projection is not checkerboard colorable");
                }
            }
        }
    }
    bool flip = false;
    if (keep >= 0) flip = (col[face[keep][0]] == 0) != nodes_.at(keep).over_even;
    for (int x = 0; x < n; ++x) {
        if (nodes_[x].crossing) nodes_[x].over_even = (col[face[x][0]] == 0) != flip;
    }
}

BuiltDiagram PlanarGraph::to_diagram(const std::vector<bool>& reverse) const {
    const int n = node_count();
    struct Pass {
        int node, in, out;
    };
    std::vector<std::array<bool, 4>> used(n, {false, false, false, false});
    std::vector<std::array<int, 4>> edge_at(n, {0, 0, 0, 0});
    std::vector<std::array<bool, 4>> entering(n, {false, false, false, false});
    int next_edge = 1;
    int comp = 0;
    for (int x = 0; x < n; ++x) {
        if (!nodes_[x].crossing) continue;
        for (int s0 = 0; s0 < 4; ++s0) {
            if (used[x][s0]) continue;
            // trace the strand through (x, s0)
            std::vector<Pass> passes;
            Pass p{x, (s0 + 2) % 4, s0};
            for (;;) {
                passes.push_back(p);
                used[p.node][p.in] = used[p.node][p.out] = true;
                Port arrive = next_crossing_port({p.node, p.out});
                if (used[arrive.node][arrive.slot]) break;
                p = Pass{arrive.node, arrive.slot, (arrive.slot + 2) % 4};
            }
            // orientation: hint wins, else leave through the lowest slot
            int dir = 0;
            for (const auto& q : passes) {
                int h = nodes_[q.node].hint[q.out];
                if (h != 0) {
                    dir = h < 0 ? 1 : -1;
                    break;
                }
            }
            bool backwards = dir < 0;
            if (comp < static_cast<int>(reverse.size()) && reverse[comp]) backwards = !backwards;
            if (backwards) {
                std::vector<Pass> rev;
                rev.push_back({passes[0].node, passes[0].out, passes[0].in});
                for (auto it = passes.rbegin(); it != passes.rend() - 1; ++it) rev.push_back({it->node, it->out, it->in});
                passes = std::move(rev);
            }
            const int len = static_cast<int>(passes.size());
            for (int i = 0; i < len; ++i) {
                const Pass& a = passes[i];
                const Pass& b = passes[(i + 1) % len];
                edge_at[a.node][a.out] = next_edge;
                edge_at[b.node][b.in] = next_edge;
                entering[b.node][b.in] = true;
                ++next_edge;
            }
            ++comp;
        }
    }
    BuiltDiagram out{};
    std::vector<CrossingTuple> tuples;
    out.pd_of_node.assign(n, -1);
    out.edge_at_slot = edge_at;
    for (int x = 0; x < n; ++x) {
        if (!nodes_[x].crossing) continue;
        int u = nodes_[x].over_even ? 1 : 0;
        if (!entering[x][u]) u += 2;
        CrossingTuple t;
        for (int k = 0; k < 4; ++k) t.edges[k] = edge_at[x][(u + k) % 4];
        out.pd_of_node[x] = static_cast<int>(tuples.size());
        out.tags.push_back(nodes_[x].tag);
        tuples.push_back(t);
    }
    out.diagram = PlanarDiagram::from_tuples(std::move(tuples));
    return out;
}

Tangle Tangle::crossing(int sign, int tag) {
    Tangle t;
    // slots counterclockwise: SW, SE, NE, NW
    const int x = t.graph_.add_crossing(sign < 0, tag);
    t.ends_[NW] = {x, 3};
    t.ends_[NE] = {x, 2};
    t.ends_[SE] = {x, 1};
    t.ends_[SW] = {x, 0};
    return t;
}

Tangle Tangle::zero() {
    Tangle t;
    const int top = t.graph_.add_joint();
    const int bottom = t.graph_.add_joint();
    t.ends_[NW] = {top, 0};
    t.ends_[NE] = {top, 1};
    t.ends_[SW] = {bottom, 0};
    t.ends_[SE] = {bottom, 1};
    return t;
}

Tangle Tangle::infinity() {
    Tangle t;
    const int left = t.graph_.add_joint();
    const int right = t.graph_.add_joint();
    t.ends_[NW] = {left, 0};
    t.ends_[SW] = {left, 1};
    t.ends_[NE] = {right, 0};
    t.ends_[SE] = {right, 1};
    return t;
}

Tangle Tangle::twist(int n, int tag) {
    if (n == 0) return zero();
    const int sign = n > 0 ? 1 : -1;
    Tangle t = crossing(sign, tag);
    for (int k = 1; k < std::abs(n); ++k) t = t + crossing(sign, tag);
    return t;
}

Tangle Tangle::from_graph(PlanarGraph graph, const std::array<Port, 4>& ends) {
    Tangle t;
    t.graph_ = std::move(graph);
    t.ends_ = ends;
    return t;
}

Tangle Tangle::rotated() const {
    Tangle t = *this;
    for (int i = 0; i < 4; ++i) t.ends_[i] = ends_[(i + 1) % 4];
    return t;
}

Tangle Tangle::flipped() const {
    Tangle t;
    t.graph_ = graph_;
    t.graph_.flip_all();
    auto remap = [&](Port p) {
        if (graph_.is_crossing(p.node)) p.slot = (4 - p.slot) % 4;
        return p;
    };
    t.ends_[NW] = remap(ends_[SW]);
    t.ends_[SW] = remap(ends_[NW]);
    t.ends_[NE] = remap(ends_[SE]);
    t.ends_[SE] = remap(ends_[NE]);
    return t;
}

PlanarGraph Tangle::numerator() const {
    PlanarGraph g = graph_;
    g.connect(ends_[NW], ends_[NE]);
    g.connect(ends_[SW], ends_[SE]);
    return g;
}

PlanarGraph Tangle::denominator() const {
    PlanarGraph g = graph_;
    g.connect(ends_[NW], ends_[SW]);
    g.connect(ends_[NE], ends_[SE]);
    return g;
}

namespace {

Port shifted(Port p, int offset) { return {p.node + offset, p.slot}; }

}  // namespace

Tangle operator+(const Tangle& a, const Tangle& b) {
    Tangle t = a;
    const int off = t.graph_.append(b.graph_);
    t.graph_.connect(a.ends_[NE], shifted(b.ends_[NW], off));
    t.graph_.connect(a.ends_[SE], shifted(b.ends_[SW], off));
    t.ends_[NE] = shifted(b.ends_[NE], off);
    t.ends_[SE] = shifted(b.ends_[SE], off);
    return t;
}

Tangle operator*(const Tangle& a, const Tangle& b) {
    Tangle t = a;
    const int off = t.graph_.append(b.graph_);
    t.graph_.connect(a.ends_[SW], shifted(b.ends_[NW], off));
    t.graph_.connect(a.ends_[SE], shifted(b.ends_[NE], off));
    t.ends_[SW] = shifted(b.ends_[SW], off);
    t.ends_[SE] = shifted(b.ends_[SE], off);
    return t;
}

BuiltDiagram braid_closure(int strands, const std::vector<int>& word) {
    if (strands < 2 || word.empty()) throw Error(ErrorCode::InvalidArgument, "braid needs two strands and a letter");
    PlanarGraph g;
    std::vector<int> joints;
    std::vector<Port> open;
    for (int p = 0; p < strands; ++p) {
        joints.push_back(g.add_joint());
        open.push_back({joints.back(), 0});
    }
    int tag = 0;
    for (int letter : word) {
        const int i = std::abs(letter) - 1;
        if (letter == 0 || i + 1 >= strands) throw Error(ErrorCode::InvalidArgument, "braid letter out of range");
        // slots counterclockwise: SE, NE, NW, SW; positive letters put SW-NE on top
        const int x = g.add_crossing(letter < 0, tag++);
        g.connect(open[i], {x, 3});
        g.connect(open[i + 1], {x, 0});
        g.set_entering({x, 3}, true);
        g.set_entering({x, 0}, true);
        open[i] = {x, 2};
        open[i + 1] = {x, 1};
    }
    for (int p = 0; p < strands; ++p) g.connect(open[p], {joints[p], 1});
    return g.to_diagram();
}

PlanarDiagram braid_closure_L(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
    std::vector<int> word;
    for (int k = 0; k < n; ++k) {
        word.push_back(1);
        word.push_back(-2);
    }
    PlanarDiagram d = braid_closure(3, word).diagram;
    if (d.face_count() != 2 * n + 2) throw Error(ErrorCode::NonPlanarRotationSystem, "unexpected face count");
    return d;
}

PlanarDiagram torus_2n(int n) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be at least 2");
    return braid_closure(2, std::vector<int>(n, 1)).diagram;
}

PlanarDiagram random_alternating_diagram(int c, std::mt19937_64& rng) {
    if (c < 1) throw Error(ErrorCode::InvalidArgument, "need at least one crossing");
    std::vector<Tangle> pool;
    for (int k = 0; k < c; ++k) pool.push_back(Tangle::crossing(1, k));
    while (pool.size() > 1) {
        std::size_t i = rng() % pool.size();
        Tangle a = pool[i];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
        std::size_t j = rng() % pool.size();
        Tangle b = pool[j];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
        if (rng() % 2) b = b.rotated();
        if (rng() % 3 == 0) b = b.flipped();
        pool.push_back(rng() % 2 ? a + b : a * b);
    }
    PlanarGraph g = rng() % 2 ? pool[0].numerator() : pool[0].denominator();
    g.make_alternating();
    return g.to_diagram().diagram;
}

PlanarGraph graph_of(const PlanarDiagram& diagram) {
    PlanarGraph g;
    for (int x = 0; x < diagram.crossing_count(); ++x) g.add_crossing(false, x);
    for (const auto& e : diagram.edges()) {
        g.connect({e.tail.crossing, e.tail.position}, {e.head.crossing, e.head.position});
    }
    for (int x = 0; x < diagram.crossing_count(); ++x) {
        g.set_entering({x, 0}, true);
        g.set_entering({x, diagram.over_in_position(x)}, true);
    }
    return g;
}

}  // namespace labelgeom

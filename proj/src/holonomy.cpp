#include "labelgeom/holonomy.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <queue>
#include <string>

#include "labelgeom/error.hpp"

namespace labelgeom {

namespace {

// translation by +u when a path runs along the edge
constexpr int translation_sign = 1;
// passing under the over strand from its left to its right is a meridian
// of this power; forced by the edge-side rule u_black - u_white = kappa
constexpr int meridian_turn = kMeridianSign * translation_sign;
// generator image M T^p M^-1, and Wirtinger sign per handedness
constexpr int generator_power = 1;
constexpr int wirtinger_sign = generator_power;

// edge entering the tail crossing of e along the same strand
int predecessor(const PlanarDiagram& d, int e) {
    const Slot t = d.edge(e).tail;
    return d.edge_at({t.crossing, (t.position + 2) % 4});
}

int successor(const PlanarDiagram& d, int e) {
    const Slot h = d.edge(e).head;
    return d.edge_at({h.crossing, (h.position + 2) % 4});
}

// side of the over strand on which the incoming under-edge lies; the
// outgoing under-edge is on the other side
int incoming_side(const PlanarDiagram& d, int x) { return d.handedness(x) == -1 ? 0 : 1; }

Moebius meridian(int power) { return Moebius::translation(static_cast<double>(power)); }

}  // namespace

WirtingerPresentation wirtinger(const PlanarDiagram& d) {
    WirtingerPresentation p;
    p.arc_of_edge.assign(d.edge_count(), -1);
    for (const auto& comp : d.components()) {
        // walk back from the component's first edge to the start of its arc
        int start = comp.front();
        for (std::size_t k = 0; k < comp.size(); ++k) {
            const int prev = predecessor(d, start);
            if (d.edge(prev).head.position == 0) break;
            start = prev;
        }
        int arc = p.generator_count++;
        int e = start;
        for (std::size_t k = 0; k < comp.size(); ++k) {
            p.arc_of_edge[e - 1] = arc;
            const bool breaks = d.edge(e).head.position == 0;
            e = successor(d, e);
            if (breaks && k + 1 < comp.size()) arc = p.generator_count++;
        }
    }
    for (int x = 0; x < d.crossing_count(); ++x) {
        const auto& t = d.crossing(x).edges;
        WirtingerRelation r;
        r.crossing = x;
        r.incoming = p.arc_of_edge[t[0] - 1];
        r.outgoing = p.arc_of_edge[t[2] - 1];
        r.over = p.arc_of_edge[t[1] - 1];
        r.sign = wirtinger_sign * d.handedness(x);
        p.relations.push_back(r);
    }
    p.basepoint = p.arc_of_edge[0];
    return p;
}

PathGraph::PathGraph(const PlanarDiagram& diagram) : diagram_(&diagram), presentation_(wirtinger(diagram)) {
    const PlanarDiagram& d = diagram;
    for (int x = 0; x < d.crossing_count(); ++x) {
        const auto& t = d.crossing(x).edges;
        const int in_side = incoming_side(d, x);
        for (Level level : {Level::Under, Level::Over}) {
            for (int side = 0; side < 2; ++side) {
                nodes_.push_back({x, level, side});
                int arc;
                if (level == Level::Over) arc = presentation_.arc_of_edge[t[1] - 1];
                else arc = presentation_.arc_of_edge[(side == in_side ? t[0] : t[2]) - 1];
                arc_of_node_.push_back(arc);
            }
        }
    }
    out_.resize(nodes_.size());
    auto add = [&](PathStep s) {
        out_[s.from].push_back(static_cast<int>(steps_.size()));
        steps_.push_back(s);
        std::swap(s.from, s.to);
        s.direction = -s.direction;
        out_[s.from].push_back(static_cast<int>(steps_.size()));
        steps_.push_back(s);
    };
    for (int x = 0; x < d.crossing_count(); ++x) {
        for (int side = 0; side < 2; ++side) {
            add({StepKind::Vertical, index({x, Level::Under, side}), index({x, Level::Over, side}), x, -1, -1, 1});
        }
        add({StepKind::Meridian, index({x, Level::Over, 0}), index({x, Level::Over, 1}), x, -1, -1, 1});
    }
    for (const auto& e : d.edges()) {
        for (int face : {e.left_face, e.right_face}) {
            const int lr = face == e.left_face ? 0 : 1;
            const Level tl = e.tail_level(), hl = e.head_level();
            const int ts = tl == Level::Over ? lr : 1 - incoming_side(d, e.tail.crossing);
            const int hs = hl == Level::Over ? lr : incoming_side(d, e.head.crossing);
            add({StepKind::Torus, index({e.tail.crossing, tl, ts}), index({e.head.crossing, hl, hs}), -1, e.index, face, 1});
        }
    }
}

int PathGraph::index(const PathNode& n) const {
    return 4 * n.crossing + (n.level == Level::Over ? 2 : 0) + n.side;
}

Moebius PathGraph::matrix(const PathStep& step, const ResidualSystem& system, const Vec& x) const {
    switch (step.kind) {
        case StepKind::Vertical:
            return Moebius::crossing(x(system.w_index(step.crossing)));
        case StepKind::Meridian:
            return meridian(meridian_turn * step.direction);
        case StepKind::Torus:
            return Moebius::translation(static_cast<double>(translation_sign * step.direction) *
                                        system.side_label(x, step.edge, step.face));
    }
    throw Error(ErrorCode::InvalidArgument, "unknown step kind");
}

int PathGraph::default_basepoint() const {
    const PlanarDiagram& d = *diagram_;
    const int arc = presentation_.basepoint;
    int first = -1;
    for (const auto& e : d.edges()) {
        if (presentation_.arc_of_edge[e.index - 1] == arc && presentation_.arc_of_edge[predecessor(d, e.index) - 1] != arc) {
            first = e.index;
        }
    }
    if (first < 0) first = 1;  // the arc is a whole component
    int e = first;
    for (int k = 0; k < d.edge_count() && presentation_.arc_of_edge[e - 1] == arc; ++k) {
        if (d.edge(e).head_level() == Level::Over) return index({d.edge(e).head.crossing, Level::Over, 0});
        e = successor(d, e);
    }
    const Slot t = d.edge(first).tail;
    return index({t.crossing, Level::Under, 1 - incoming_side(d, t.crossing)});
}

std::vector<int> shortest_path(const PathGraph& graph, int from, int arc, std::mt19937_64* rng) {
    if (graph.arc_of(from) == arc) return {};
    std::vector<int> via(graph.node_count(), -1);
    std::vector<bool> seen(graph.node_count(), false);
    std::queue<int> q;
    q.push(from);
    seen[from] = true;
    while (!q.empty()) {
        const int n = q.front();
        q.pop();
        std::vector<int> order = graph.out(n);
        if (rng) std::shuffle(order.begin(), order.end(), *rng);
        for (int s : order) {
            const int m = graph.steps()[s].to;
            if (seen[m]) continue;
            seen[m] = true;
            via[m] = s;
            if (graph.arc_of(m) == arc) {
                std::vector<int> path;
                for (int k = m; k != from; k = graph.steps()[via[k]].from) path.push_back(via[k]);
                std::reverse(path.begin(), path.end());
                return path;
            }
            q.push(m);
        }
    }
    throw Error(ErrorCode::Unreachable, "arc " + std::to_string(arc) + " cannot be reached");
}

Moebius conjugator(const PathGraph& graph, const ResidualSystem& system, const Vec& x, int from, int arc,
                   std::mt19937_64* rng) {
    Moebius m = Moebius::identity();
    for (int s : shortest_path(graph, from, arc, rng)) m = m * graph.matrix(graph.steps()[s], system, x);
    return m;
}

ParabolicRep parabolic_rep(const PathGraph& graph, const ResidualSystem& system, const Vec& x, int basepoint_node,
                           std::mt19937_64* rng) {
    ParabolicRep rep;
    rep.basepoint_node = basepoint_node >= 0 ? basepoint_node : graph.default_basepoint();
    rep.basepoint_arc = graph.arc_of(rep.basepoint_node);
    const Moebius t = meridian(generator_power);
    for (int arc = 0; arc < graph.presentation().generator_count; ++arc) {
        const Moebius m = conjugator(graph, system, x, rep.basepoint_node, arc, rng);
        rep.conjugators.push_back(m);
        rep.generators.push_back((m * t * m.inverse()).normalized());
    }
    return rep;
}

namespace {

Moebius power(const Moebius& g, int sign) { return sign > 0 ? g : g.inverse(); }

}  // namespace

VerifyReport verify(const ParabolicRep& rep, const WirtingerPresentation& presentation) {
    VerifyReport out;
    for (const auto& r : presentation.relations) {
        const Moebius& over = rep.generators.at(r.over);
        const Moebius word =
            rep.generators.at(r.outgoing).inverse() * power(over, r.sign) * rep.generators.at(r.incoming) * power(over, -r.sign);
        out.relator_deviation.push_back(distance_from_identity(word));
    }
    for (double v : out.relator_deviation) out.max_relator_deviation = std::max(out.max_relator_deviation, v);
    for (const auto& g : rep.generators) {
        out.max_trace_defect = std::max(out.max_trace_defect, std::abs(std::abs(g.normalized().trace()) - 2.0));
    }
    return out;
}

Moebius evaluate_word(const ParabolicRep& rep, std::string_view word, const std::map<char, int>& letters) {
    Moebius m = Moebius::identity();
    for (char ch : word) {
        const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        const auto it = letters.find(lower);
        if (it == letters.end()) throw Error(ErrorCode::InvalidArgument, std::string("no generator for letter ") + ch);
        const Moebius& g = rep.generators.at(it->second);
        m = m * (ch == lower ? g : g.inverse());
    }
    return m;
}

}  // namespace labelgeom

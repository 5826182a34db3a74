#include "labelgeom/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "labelgeom/error.hpp"

namespace labelgeom {

namespace {

int partner(int position) { return (position + 2) % 4; }

// Two slots per edge, in order of appearance.
std::vector<std::array<Slot, 2>> collect_slots(const std::vector<CrossingTuple>& tuples) {
    const int n_edges = 2 * static_cast<int>(tuples.size());
    std::vector<std::vector<Slot>> seen(n_edges + 1);
    for (int x = 0; x < static_cast<int>(tuples.size()); ++x) {
        for (int p = 0; p < 4; ++p) {
            int e = tuples[x].edges[p];
            if (e < 1 || e > n_edges) {
                throw Error(ErrorCode::MalformedLine,
                            "edge index " + std::to_string(e) + " outside 1.." + std::to_string(n_edges));
            }
            seen[e].push_back({x, p});
        }
    }
    std::vector<std::array<Slot, 2>> out(n_edges + 1);
    for (int e = 1; e <= n_edges; ++e) {
        if (seen[e].size() != 2) {
            throw Error(ErrorCode::EdgeIndexNotTwice,
                        "edge " + std::to_string(e) + " appears " + std::to_string(seen[e].size()) + " times");
        }
        out[e] = {seen[e][0], seen[e][1]};
    }
    return out;
}

int kappa_for(const EdgeInfo& e, Color left_color, int sigma) {
    // u_right - u_left
    int diff = 0;
    if (e.tail_level() == Level::Under && e.head_level() == Level::Over) diff = sigma;
    if (e.tail_level() == Level::Over && e.head_level() == Level::Under) diff = -sigma;
    // kappa = u_black - u_white
    return left_color == Color::Black ? -diff : diff;
}

}  // namespace

bool same_cycle(const Region& a, const Region& b) {
    const auto n = a.corners.size();
    if (n != b.corners.size()) return false;
    if (n == 0) return true;
    for (std::size_t shift = 0; shift < n; ++shift) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) ok = a.corners[i] == b.corners[(i + shift) % n];
        if (ok) return true;
    }
    return false;
}

PlanarDiagram PlanarDiagram::from_tuples(std::vector<CrossingTuple> tuples) {
    if (tuples.empty()) throw Error(ErrorCode::MalformedLine, "diagram has no crossings");
    PlanarDiagram d;
    d.tuples_ = std::move(tuples);
    const int c = d.crossing_count();
    const int n_edges = 2 * c;
    const auto slots = collect_slots(d.tuples_);

    // connectivity of the crossing graph
    {
        std::vector<int> parent(c);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        for (int e = 1; e <= n_edges; ++e) parent[find(slots[e][0].crossing)] = find(slots[e][1].crossing);
        for (int x = 1; x < c; ++x) {
            if (find(x) != find(0)) throw Error(ErrorCode::DisconnectedDiagram, "crossing graph is disconnected");
        }
    }

    auto other_slot = [&](Slot s) {
        int e = d.tuples_[s.crossing].edges[s.position];
        return slots[e][0] == s ? slots[e][1] : slots[e][0];
    };
    auto edge_at = [&](Slot s) { return d.tuples_[s.crossing].edges[s.position]; };

    d.edges_.resize(n_edges);
    for (int e = 1; e <= n_edges; ++e) d.edges_[e - 1].index = e;

    // components: follow the strand through each crossing
    std::vector<bool> visited(n_edges + 1, false);
    for (int start = 1; start <= n_edges; ++start) {
        if (visited[start]) continue;
        std::vector<int> cycle{start};
        visited[start] = true;
        Slot s = slots[start][1];
        for (;;) {
            Slot through{s.crossing, partner(s.position)};
            int next = edge_at(through);
            if (next == start) break;
            if (visited[next]) throw Error(ErrorCode::InconsistentOrientation, "strand revisits an edge");
            visited[next] = true;
            cycle.push_back(next);
            s = other_slot(through);
        }
        const int lo = *std::min_element(cycle.begin(), cycle.end());
        const int hi = *std::max_element(cycle.begin(), cycle.end());
        const int len = static_cast<int>(cycle.size());
        if (hi - lo + 1 != len) {
            throw Error(ErrorCode::InconsistentOrientation, "component edges are not a consecutive range");
        }
        // the traced cycle must read lo, lo+1, ... in one direction or the other
        auto pos = std::find(cycle.begin(), cycle.end(), lo) - cycle.begin();
        bool forward = true, backward = true;
        for (int i = 0; i < len; ++i) {
            forward = forward && cycle[(pos + i) % len] == lo + i;
            backward = backward && cycle[(pos - i + len) % len] == lo + i;
        }
        if (!forward && !backward) {
            throw Error(ErrorCode::InconsistentOrientation, "component edges are not numbered consecutively");
        }
        const int comp = static_cast<int>(d.components_.size());
        std::vector<int> order(len);
        std::iota(order.begin(), order.end(), lo);
        d.components_.push_back(order);

        for (int e = lo; e <= hi; ++e) {
            EdgeInfo& info = d.edges_[e - 1];
            info.component = comp;
            const int nxt = e == hi ? lo : e + 1;
            const Slot a = slots[e][0];
            const Slot b = slots[e][1];
            const bool a_head = edge_at({a.crossing, partner(a.position)}) == nxt;
            const bool b_head = edge_at({b.crossing, partner(b.position)}) == nxt;
            if (a_head && !b_head) {
                info.head = a;
                info.tail = b;
            } else if (b_head && !a_head) {
                info.head = b;
                info.tail = a;
            } else {
                // two-edge component: an under end decides, otherwise keep listing order
                if (a.position == 0 || b.position == 2) {
                    info.head = a;
                    info.tail = b;
                } else if (b.position == 0 || a.position == 2) {
                    info.head = b;
                    info.tail = a;
                } else if (e == lo) {
                    info.head = b;
                    info.tail = a;
                } else {
                    const EdgeInfo& prev = d.edges_[lo - 1];
                    info.head = prev.tail;
                    info.tail = prev.head;
                }
            }
        }
    }

    // every crossing: position 0 is a head, position 2 a tail, one over end of each kind
    d.handedness_.assign(c, 0);
    for (int x = 0; x < c; ++x) {
        const auto& t = d.tuples_[x].edges;
        if (!(d.edges_[t[0] - 1].head == Slot{x, 0})) {
            throw Error(ErrorCode::InconsistentOrientation,
                        "crossing " + std::to_string(x) + ": first entry is not the incoming under-edge");
        }
        if (!(d.edges_[t[2] - 1].tail == Slot{x, 2})) {
            throw Error(ErrorCode::InconsistentOrientation,
                        "crossing " + std::to_string(x) + ": third entry is not the outgoing under-edge");
        }
        const bool three_in = d.edges_[t[3] - 1].head == Slot{x, 3};
        const bool one_in = d.edges_[t[1] - 1].head == Slot{x, 1};
        if (three_in == one_in) {
            throw Error(ErrorCode::InconsistentOrientation,
                        "crossing " + std::to_string(x) + ": over-strand direction is undefined");
        }
        d.handedness_[x] = three_in ? 1 : -1;
    }

    // faces, walking with the face on the left
    std::vector<std::array<int, 4>> dart_face(c, {-1, -1, -1, -1});
    d.corner_faces_.assign(c, {-1, -1, -1, -1});
    for (int x = 0; x < c; ++x) {
        for (int p = 0; p < 4; ++p) {
            if (dart_face[x][p] >= 0) continue;
            Region r;
            r.face = static_cast<int>(d.regions_.size());
            Slot dart{x, p};
            do {
                dart_face[dart.crossing][dart.position] = r.face;
                const int e = edge_at(dart);
                const Slot arrive = other_slot(dart);
                const Slot leave{arrive.crossing, (arrive.position + 3) % 4};
                const int e_out = edge_at(leave);
                Corner k;
                k.crossing = arrive.crossing;
                k.corner = leave.position;
                k.edge_in = e;
                k.edge_out = e_out;
                k.eps_in = d.edges_[e - 1].head == arrive ? 1 : -1;
                k.eps_out = d.edges_[e_out - 1].tail == leave ? 1 : -1;
                d.corner_faces_[k.crossing][k.corner] = r.face;
                r.corners.push_back(k);
                dart = leave;
            } while (!(dart == Slot{x, p}));
            d.regions_.push_back(std::move(r));
        }
    }
    if (d.face_count() != c + 2) {
        throw Error(ErrorCode::NonPlanarRotationSystem,
                    std::to_string(d.face_count()) + " faces for " + std::to_string(c) + " crossings");
    }
    for (auto& info : d.edges_) {
        info.left_face = dart_face[info.tail.crossing][info.tail.position];
        info.right_face = dart_face[info.head.crossing][info.head.position];
    }

    // two-coloring of the faces
    std::vector<int> col(d.face_count(), -1);
    std::queue<int> q;
    col[0] = 0;
    q.push(0);
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        for (const auto& info : d.edges_) {
            int g = -1;
            if (info.left_face == f) g = info.right_face;
            if (info.right_face == f) g = info.left_face;
            if (g < 0) continue;
            if (g == f) throw Error(ErrorCode::ColoringInconsistent, "edge with the same face on both sides");
            if (col[g] < 0) {
                col[g] = 1 - col[f];
                q.push(g);
            } else if (col[g] == col[f]) {
                throw Error(ErrorCode::ColoringInconsistent, "faces do not admit a checkerboard coloring");
            }
        }
    }
    int total = 0;
    for (const auto& info : d.edges_) {
        total += kappa_for(info, col[info.left_face] == 0 ? Color::Black : Color::White, kMeridianSign);
    }
    const bool swap = total < 0;
    for (auto& r : d.regions_) r.color = (col[r.face] == 0) != swap ? Color::Black : Color::White;
    for (auto& info : d.edges_) info.kappa = kappa_for(info, d.regions_[info.left_face].color, kMeridianSign);
    return d;
}

bool PlanarDiagram::is_alternating() const {
    return std::all_of(edges_.begin(), edges_.end(),
                       [](const EdgeInfo& e) { return e.tail_level() != e.head_level(); });
}

std::string PlanarDiagram::to_pd_text() const {
    std::ostringstream os;
    for (const auto& t : tuples_) {
        os << "X " << t.edges[0] << ' ' << t.edges[1] << ' ' << t.edges[2] << ' ' << t.edges[3] << '\n';
    }
    return os.str();
}

PlanarDiagram parse_pd(std::string_view text) {
    std::vector<CrossingTuple> tuples;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        for (char& ch : line) {
            if (ch == '[' || ch == ']' || ch == ',' || ch == '\t' || ch == '\r') ch = ' ';
        }
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        CrossingTuple t;
        bool ok = tag == "X";
        for (int k = 0; k < 4 && ok; ++k) ok = static_cast<bool>(ls >> t.edges[k]);
        std::string extra;
        if (!ok || (ls >> extra)) {
            throw Error(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": expected `X a b c d`");
        }
        tuples.push_back(t);
    }
    return PlanarDiagram::from_tuples(std::move(tuples));
}

std::vector<Color> checkerboard(const PlanarDiagram& diagram) {
    std::vector<Color> out;
    out.reserve(diagram.face_count());
    for (const auto& r : diagram.regions()) out.push_back(r.color);
    return out;
}

Region region_corners(const PlanarDiagram& diagram, int face) {
    if (face < 0 || face >= diagram.face_count()) {
        throw Error(ErrorCode::InvalidArgument, "no face " + std::to_string(face));
    }
    return diagram.region(face);
}

ValidationReport validate(const PlanarDiagram& diagram, const ValidationPolicy& policy) {
    ValidationReport rep;
    const int c = diagram.crossing_count();
    rep.alternating = diagram.is_alternating();

    for (int x = 0; x < c; ++x) {
        std::set<int> faces;
        for (int k = 0; k < 4; ++k) faces.insert(diagram.face_at_corner(x, k));
        if (faces.size() < 4) rep.nugatory_crossings.push_back(x);
    }
    rep.reduced = rep.nugatory_crossings.empty();

    std::vector<int> sides;
    for (const auto& r : diagram.regions()) {
        sides.push_back(static_cast<int>(r.sides()));
        if (r.sides() == 2) rep.bigons.push_back(r.face);
    }

    // a closed curve meeting the diagram twice crosses two edges separating
    // the same pair of faces; it is essential when both sides hold crossings
    rep.prime = true;
    std::map<std::pair<int, int>, std::vector<int>> by_faces;
    for (const auto& e : diagram.edges()) {
        by_faces[std::minmax(e.left_face, e.right_face)].push_back(e.index);
    }
    for (const auto& [faces, list] : by_faces) {
        for (std::size_t i = 0; i < list.size() && rep.prime; ++i) {
            for (std::size_t j = i + 1; j < list.size() && rep.prime; ++j) {
                std::vector<int> parent(c);
                std::iota(parent.begin(), parent.end(), 0);
                auto find = [&](int v) {
                    while (parent[v] != v) v = parent[v] = parent[parent[v]];
                    return v;
                };
                for (const auto& e : diagram.edges()) {
                    if (e.index == list[i] || e.index == list[j]) continue;
                    parent[find(e.tail.crossing)] = find(e.head.crossing);
                }
                for (int x = 1; x < c; ++x) {
                    if (find(x) != find(0)) {
                        rep.prime = false;
                        break;
                    }
                }
            }
        }
    }

    std::vector<int> pattern(c, 2);
    pattern.push_back(c);
    pattern.push_back(c);
    std::sort(pattern.begin(), pattern.end());
    std::sort(sides.begin(), sides.end());
    rep.torus_2n = sides == pattern;

    if (!rep.alternating && !policy.assume_taut) rep.reasons.emplace_back("diagram is not alternating");
    if (!rep.reduced) rep.reasons.emplace_back("diagram has a nugatory crossing");
    if (!rep.prime) rep.reasons.emplace_back("diagram is not prime");
    if (rep.torus_2n) rep.reasons.emplace_back("diagram is a (2,n) torus pattern");
    rep.accepted = rep.reasons.empty();
    return rep;
}

PlanarDiagram reoriented(const PlanarDiagram& diagram, int component) {
    if (component < 0 || component >= diagram.component_count()) {
        throw Error(ErrorCode::InvalidArgument, "no component " + std::to_string(component));
    }
    const auto& edges = diagram.components()[component];
    const int lo = edges.front();
    const int hi = edges.back();
    auto relabel = [&](int e) { return (e >= lo && e <= hi) ? lo + hi - e : e; };
    std::vector<CrossingTuple> out;
    for (const auto& t : diagram.crossings()) {
        CrossingTuple n;
        for (int k = 0; k < 4; ++k) n.edges[k] = relabel(t.edges[k]);
        if (diagram.edge(t.edges[0]).component == component) {
            n = CrossingTuple{{n.edges[2], n.edges[3], n.edges[0], n.edges[1]}};
        }
        out.push_back(n);
    }
    return PlanarDiagram::from_tuples(std::move(out));
}

PlanarDiagram mirrored(const PlanarDiagram& diagram) {
    std::vector<CrossingTuple> out;
    for (const auto& t : diagram.crossings()) out.push_back({{t.edges[0], t.edges[3], t.edges[2], t.edges[1]}});
    return PlanarDiagram::from_tuples(std::move(out));
}

PlanarDiagram turned_over(const PlanarDiagram& diagram) {
    std::vector<CrossingTuple> out;
    for (int x = 0; x < diagram.crossing_count(); ++x) {
        const auto& t = diagram.crossing(x).edges;
        // reflected order is (a, d, c, b); the old over strand b-d goes under
        const bool d_enters = diagram.edge(t[3]).head.crossing == x && diagram.edge(t[3]).head.position == 3;
        out.push_back(d_enters ? CrossingTuple{{t[3], t[2], t[1], t[0]}} : CrossingTuple{{t[1], t[0], t[3], t[2]}});
    }
    return PlanarDiagram::from_tuples(std::move(out));
}

}  // namespace labelgeom

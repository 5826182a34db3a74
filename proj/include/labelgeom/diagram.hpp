#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace labelgeom {

/// Sign relating the two side labels of an edge to the way it ends.  For an
/// edge running from an under-crossing to an over-crossing the label on its
/// right side exceeds the label on its left side by this amount; an edge
/// running over-to-under has the opposite relation.  The same sign orients
/// half-meridians in the holonomy path graph.
inline constexpr int kMeridianSign = -1;

enum class Level : std::uint8_t { Under, Over };
enum class Color : std::uint8_t { Black, White };

/// A position inside one PD tuple: `position` 0 and 2 are the under-strand,
/// 1 and 3 the over-strand, listed counterclockwise.
struct Slot {
    int crossing = -1;
    int position = -1;

    friend bool operator==(const Slot&, const Slot&) = default;
};

inline Level level_of(int position) { return position % 2 == 0 ? Level::Under : Level::Over; }

struct CrossingTuple {
    std::array<int, 4> edges{};  ///< incoming under, then counterclockwise

    friend bool operator==(const CrossingTuple&, const CrossingTuple&) = default;
};

struct EdgeInfo {
    int index = 0;  ///< PD label, 1-based
    Slot tail;      ///< crossing the edge leaves
    Slot head;      ///< crossing the edge enters
    int component = -1;
    int left_face = -1;
    int right_face = -1;
    int kappa = 0;  ///< u_black - u_white

    Level tail_level() const { return level_of(tail.position); }
    Level head_level() const { return level_of(head.position); }
};

/// Corner of a region at a crossing.  `corner` k sits between tuple
/// positions k and k+1.  The region boundary arrives along `edge_in` and
/// leaves along `edge_out`; eps is +1 where the edge runs with the
/// traversal.
struct Corner {
    int crossing = -1;
    int corner = -1;
    int edge_in = 0;
    int edge_out = 0;
    int eps_in = 1;
    int eps_out = 1;

    int kappa() const { return eps_in * eps_out; }

    friend bool operator==(const Corner&, const Corner&) = default;
};

/// A face of the diagram traversed with the face on the walker's left.
/// Side i is `corners[i].edge_in`; corner i follows it.
struct Region {
    int face = -1;
    Color color = Color::Black;
    std::vector<Corner> corners;

    std::size_t sides() const { return corners.size(); }
};

/// Equality of corner cycles up to cyclic rotation.
bool same_cycle(const Region& a, const Region& b);

class PlanarDiagram {
public:
    /// Builds and validates the combinatorics (orientation, faces, colors).
    /// Throws Error on malformed input.
    static PlanarDiagram from_tuples(std::vector<CrossingTuple> tuples);

    int crossing_count() const { return static_cast<int>(tuples_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int face_count() const { return static_cast<int>(regions_.size()); }
    int component_count() const { return static_cast<int>(components_.size()); }

    const std::vector<CrossingTuple>& crossings() const { return tuples_; }
    const CrossingTuple& crossing(int id) const { return tuples_.at(id); }
    const EdgeInfo& edge(int index) const { return edges_.at(index - 1); }
    const std::vector<EdgeInfo>& edges() const { return edges_; }
    const Region& region(int face) const { return regions_.at(face); }
    const std::vector<Region>& regions() const { return regions_; }

    /// Edge indices of each component, in orientation order.
    const std::vector<std::vector<int>>& components() const { return components_; }

    int edge_at(Slot s) const { return tuples_.at(s.crossing).edges.at(s.position); }
    int face_at_corner(int crossing, int corner) const { return corner_faces_.at(crossing).at(corner & 3); }
    Color color(int face) const { return regions_.at(face).color; }

    /// +1 when the over-strand runs from position 3 to position 1.
    int handedness(int crossing) const { return handedness_.at(crossing); }

    /// Tuple position at which the over-strand enters the crossing (1 or 3).
    int over_in_position(int crossing) const { return handedness_.at(crossing) > 0 ? 3 : 1; }

    /// Every edge goes from an under end to an over end or vice versa.
    bool is_alternating() const;

    std::string to_pd_text() const;

private:
    std::vector<CrossingTuple> tuples_;
    std::vector<EdgeInfo> edges_;
    std::vector<Region> regions_;
    std::vector<std::array<int, 4>> corner_faces_;
    std::vector<int> handedness_;
    std::vector<std::vector<int>> components_;
};

/// Parses the PD text format: lines `X a b c d`, `#` comments, blank lines.
PlanarDiagram parse_pd(std::string_view text);

/// Face colors chosen so that black-side minus white-side labels are as
/// often +1 as possible; for alternating input every edge gets +1.
std::vector<Color> checkerboard(const PlanarDiagram& diagram);

Region region_corners(const PlanarDiagram& diagram, int face);

struct ValidationPolicy {
    /// Accept non-alternating input, trusting the caller that it is taut.
    bool assume_taut = false;
};

struct ValidationReport {
    bool connected = true;
    bool alternating = false;
    bool reduced = false;
    bool prime = false;
    bool torus_2n = false;
    std::vector<int> bigons;
    std::vector<int> nugatory_crossings;
    bool accepted = false;
    std::vector<std::string> reasons;
};

ValidationReport validate(const PlanarDiagram& diagram, const ValidationPolicy& policy = {});

/// The same diagram with one component's orientation reversed.
PlanarDiagram reoriented(const PlanarDiagram& diagram, int component);

/// Reflection of the diagram in the projection plane's line (reverses the
/// counterclockwise order at every crossing).
PlanarDiagram mirrored(const PlanarDiagram& diagram);

/// The same link seen from the other side of the plane: reflected and with
/// every crossing switched.  Region corners come out in the opposite order.
PlanarDiagram turned_over(const PlanarDiagram& diagram);

}  // namespace labelgeom

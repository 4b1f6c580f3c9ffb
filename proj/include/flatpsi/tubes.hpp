#ifndef FLATPSI_TUBES_HPP
#define FLATPSI_TUBES_HPP

#include <string>
#include <vector>

#include "flatpsi/graph.hpp"

namespace flatpsi {

/// A tube: a nonempty connected subgraph.
class Tube {
public:
    explicit Tube(Subgraph sub);

    const Subgraph& sub() const { return sub_; }
    const Graph& graph() const { return sub_.graph(); }
    std::uint32_t vertex_mask() const { return sub_.vertex_mask(); }
    std::uint32_t edge_mask() const { return sub_.edge_mask(); }

    friend bool operator==(const Tube& a, const Tube& b) { return a.sub_ == b.sub_; }
    friend bool operator<(const Tube& a, const Tube& b) {
        if (a.vertex_mask() != b.vertex_mask()) return a.vertex_mask() < b.vertex_mask();
        return a.edge_mask() < b.edge_mask();
    }

private:
    Subgraph sub_;
};

/// All tubes of g, ordered by (vertex mask, edge mask) ascending.
std::vector<Tube> enumerate_tubes(const Graph& g);
/// All tubes living inside a host subgraph (same order).
std::vector<Tube> enumerate_tubes(const Subgraph& host);

/// True iff t carries every parent edge between its vertices.
bool is_induced(const Tube& t);
/// Induced within a spanning subgraph given by its edge mask.
bool is_induced_in(const Tube& t, std::uint32_t host_edge_mask);

/// Containment as subgraphs, either way round.
bool nested(const Tube& s, const Tube& t);
/// Vertex sets intersect and not nested.
bool overlapping(const Tube& s, const Tube& t);
/// Not nested, and the tubes intersect or some parent edge joins them.
bool incompatible(const Tube& s, const Tube& t);
/// Same, with "edge between" ranging over a spanning subgraph's edges.
bool incompatible_in(const Tube& s, const Tube& t, std::uint32_t host_edge_mask);

/// Textual form "{v1,v2|A,B}": 1-based vertices ascending, edge ids sorted.
std::string tube_str(const Tube& t);

}  // namespace flatpsi

#endif

#include "flatpsi/tubes.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace flatpsi {

Tube::Tube(Subgraph sub) : sub_(std::move(sub)) {
    if (!is_connected(sub_)) throw ValidationError("tube must be a nonempty connected subgraph");
}

std::vector<Tube> enumerate_tubes(const Graph& g) {
    return enumerate_tubes(Subgraph(g, g.full_vertex_mask(), g.full_edge_mask()));
}

std::vector<Tube> enumerate_tubes(const Subgraph& host) {
    const Graph& g = host.graph();
    std::vector<std::uint32_t> verts;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
        if (host.vertex_mask() >> v & 1) verts.push_back(v);

    std::vector<Tube> out;
    const std::uint64_t top = std::uint64_t(1) << verts.size();
    for (std::uint64_t pick = 1; pick < top; ++pick) {
        std::uint32_t vmask = 0;
        for (std::size_t k = 0; k < verts.size(); ++k)
            if (pick >> k & 1) vmask |= 1u << verts[k];

        std::uint32_t internal = g.internal_edges(vmask) & host.edge_mask();
        std::vector<std::uint32_t> eidx;
        for (std::uint32_t i = 0; i < g.edge_count(); ++i)
            if (internal >> i & 1) eidx.push_back(i);

        const std::uint64_t etop = std::uint64_t(1) << eidx.size();
        for (std::uint64_t es = 0; es < etop; ++es) {
            std::uint32_t emask = 0;
            for (std::size_t k = 0; k < eidx.size(); ++k)
                if (es >> k & 1) emask |= 1u << eidx[k];
            Subgraph s(g, vmask, emask);
            if (is_connected(s)) out.emplace_back(std::move(s));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_induced(const Tube& t) {
    return t.edge_mask() == t.graph().internal_edges(t.vertex_mask());
}

bool is_induced_in(const Tube& t, std::uint32_t host_edge_mask) {
    return t.edge_mask() == (t.graph().internal_edges(t.vertex_mask()) & host_edge_mask);
}

bool nested(const Tube& s, const Tube& t) {
    auto contains = [](const Tube& a, const Tube& b) {
        return (b.vertex_mask() & ~a.vertex_mask()) == 0 && (b.edge_mask() & ~a.edge_mask()) == 0;
    };
    return contains(s, t) || contains(t, s);
}

bool overlapping(const Tube& s, const Tube& t) {
    if ((s.vertex_mask() & t.vertex_mask()) == 0) return false;
    return !nested(s, t);
}

bool incompatible_in(const Tube& s, const Tube& t, std::uint32_t host_edge_mask) {
    if (nested(s, t)) return false;
    if (s.vertex_mask() & t.vertex_mask()) return true;
    const Graph& g = s.graph();
    for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
        if (!(host_edge_mask >> i & 1)) continue;
        const Edge& e = g.edge(i);
        bool su = s.vertex_mask() >> e.u & 1, sv = s.vertex_mask() >> e.v & 1;
        bool tu = t.vertex_mask() >> e.u & 1, tv = t.vertex_mask() >> e.v & 1;
        if ((su && tv) || (sv && tu)) return true;
    }
    return false;
}

bool incompatible(const Tube& s, const Tube& t) {
    return incompatible_in(s, t, s.graph().full_edge_mask());
}

std::string tube_str(const Tube& t) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (std::uint32_t v = 0; v < t.graph().vertex_count(); ++v) {
        if (!(t.vertex_mask() >> v & 1)) continue;
        if (!first) os << ",";
        os << (v + 1);
        first = false;
    }
    os << "|";
    std::vector<std::string> ids;
    for (std::uint32_t i = 0; i < t.graph().edge_count(); ++i)
        if (t.edge_mask() >> i & 1) ids.push_back(t.graph().edge(i).id);
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) os << ",";
        os << ids[i];
    }
    os << "}";
    return os.str();
}

}  // namespace flatpsi

#include "flatpsi/graph.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace flatpsi {

Graph::Graph(std::uint32_t vertex_count, std::vector<Edge> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
    if (n_ > kMaxVertices)
        throw SizeBoundError("graph has " + std::to_string(n_) + " vertices; bound is 32");
    if (edges_.size() > kMaxEdges)
        throw SizeBoundError("graph has " + std::to_string(edges_.size()) + " edges; bound is 32");
    std::set<std::string> ids;
    for (const Edge& e : edges_) {
        if (e.u >= n_ || e.v >= n_)
            throw ValidationError("edge '" + e.id + "' has an endpoint outside 1.." +
                                  std::to_string(n_));
        if (e.id.empty()) throw ValidationError("edge with empty id");
        if (!ids.insert(e.id).second) throw ValidationError("duplicate edge id '" + e.id + "'");
    }
}

bool Graph::has_loop() const {
    return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); });
}

std::uint32_t Graph::internal_edges(std::uint32_t vmask) const {
    std::uint32_t out = 0;
    for (std::uint32_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if ((vmask >> e.u & 1) && (vmask >> e.v & 1)) out |= 1u << i;
    }
    return out;
}

VarTable Graph::var_table() const {
    std::vector<std::string> ids;
    ids.reserve(edges_.size());
    for (const Edge& e : edges_) ids.push_back(e.id);
    return VarTable(n_, std::move(ids));
}

Subgraph::Subgraph(const Graph& g, std::uint32_t vertex_mask, std::uint32_t edge_mask)
    : graph_(&g), vmask_(vertex_mask), emask_(edge_mask) {
    if (vmask_ & ~g.full_vertex_mask()) throw ValidationError("subgraph vertex mask out of range");
    if (emask_ & ~g.full_edge_mask()) throw ValidationError("subgraph edge mask out of range");
    for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
        if (!(emask_ >> i & 1)) continue;
        const Edge& e = g.edge(i);
        if (!(vmask_ >> e.u & 1) || !(vmask_ >> e.v & 1))
            throw ValidationError("subgraph edge '" + e.id + "' has an endpoint outside the vertex set");
    }
}

namespace {

// Vertices of vmask reachable from `start` through edges of emask.
std::uint32_t flood(const Graph& g, std::uint32_t vmask, std::uint32_t emask, std::uint32_t start) {
    std::uint32_t reach = 1u << start;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
            if (!(emask >> i & 1)) continue;
            const Edge& e = g.edge(i);
            bool a = reach >> e.u & 1, b = reach >> e.v & 1;
            if (a != b) {
                reach |= (1u << e.u) | (1u << e.v);
                changed = true;
            }
        }
    }
    return reach & vmask;
}

}  // namespace

bool is_connected(const Subgraph& sub) {
    std::uint32_t vmask = sub.vertex_mask();
    if (vmask == 0) return false;
    std::uint32_t start = std::countr_zero(vmask);
    return flood(sub.graph(), vmask, sub.edge_mask(), start) == vmask;
}

std::vector<Subgraph> connected_components(const Subgraph& sub) {
    const Graph& g = sub.graph();
    std::vector<Subgraph> out;
    std::uint32_t rest = sub.vertex_mask();
    while (rest) {
        std::uint32_t start = std::countr_zero(rest);
        std::uint32_t block = flood(g, rest, sub.edge_mask(), start);
        out.emplace_back(g, block, sub.edge_mask() & g.internal_edges(block));
        rest &= ~block;
    }
    return out;
}

Subgraph induced_subgraph(const Graph& g, std::uint32_t vmask) {
    return Subgraph(g, vmask, g.internal_edges(vmask));
}

LineGraphResult line_graph(const Graph& g) {
    if (g.edge_count() == 0) throw ValidationError("line graph requires at least one edge");
    const std::uint32_t m = g.edge_count();
    std::vector<Edge> ledges;
    std::uint32_t next = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        for (std::uint32_t j = i + 1; j < m; ++j) {
            const Edge& a = g.edge(i);
            const Edge& b = g.edge(j);
            if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v)
                ledges.push_back({"e" + std::to_string(next++), i, j});
        }
    }
    LineGraphResult out{Graph(m, std::move(ledges)), {}};
    for (std::uint32_t i = 0; i < m; ++i) out.edge_to_vertex[g.edge(i).id] = i;
    return out;
}

Orientation::Orientation(const Graph& g,
                         std::vector<std::pair<std::uint32_t, std::uint32_t>> directed)
    : graph_(&g), directed_(std::move(directed)) {
    if (g.has_loop()) throw ValidationError("orientations are defined for loopless graphs only");
    if (directed_.size() != g.edge_count())
        throw ValidationError("orientation must direct every edge");
    for (std::uint32_t i = 0; i < directed_.size(); ++i) {
        auto [s, t] = directed_[i];
        const Edge& e = g.edge(i);
        bool matches = (s == e.u && t == e.v) || (s == e.v && t == e.u);
        if (!matches)
            throw ValidationError("direction of edge '" + e.id + "' does not match its endpoints");
    }
}

bool is_acyclic(const Orientation& o) {
    const Graph& g = o.graph();
    const std::uint32_t n = g.vertex_count();
    std::vector<std::uint32_t> indeg(n, 0);
    for (std::uint32_t i = 0; i < g.edge_count(); ++i) ++indeg[o.target(i)];
    std::vector<std::uint32_t> queue;
    for (std::uint32_t v = 0; v < n; ++v)
        if (indeg[v] == 0) queue.push_back(v);
    std::uint32_t seen = 0;
    while (!queue.empty()) {
        std::uint32_t v = queue.back();
        queue.pop_back();
        ++seen;
        for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
            if (o.source(i) != v) continue;
            if (--indeg[o.target(i)] == 0) queue.push_back(o.target(i));
        }
    }
    return seen == n;
}

}  // namespace flatpsi

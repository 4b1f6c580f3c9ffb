#ifndef FLATPSI_GRAPH_HPP
#define FLATPSI_GRAPH_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "flatpsi/algebra.hpp"
#include "flatpsi/errors.hpp"

namespace flatpsi {

/// Undirected edge with a stable string id. Endpoints are 0-based vertex
/// indices; u == v marks a loop.
struct Edge {
    std::string id;
    std::uint32_t u = 0;
    std::uint32_t v = 0;

    bool is_loop() const { return u == v; }
};

/// Finite multigraph: loops and parallel edges allowed, at most 32 vertices
/// and 32 edges (everything downstream enumerates exponentially, so vertex
/// and edge sets live in single 32-bit masks). Vertices are identified by
/// index, edges by list position and by id; both orders are stable.
class Graph {
public:
    static constexpr std::uint32_t kMaxVertices = 32;
    static constexpr std::uint32_t kMaxEdges = 32;

    Graph() = default;
    Graph(std::uint32_t vertex_count, std::vector<Edge> edges);

    std::uint32_t vertex_count() const { return n_; }
    std::uint32_t edge_count() const { return static_cast<std::uint32_t>(edges_.size()); }
    const Edge& edge(std::uint32_t i) const { return edges_[i]; }
    const std::vector<Edge>& edges() const { return edges_; }

    std::uint32_t full_vertex_mask() const { return n_ == 32 ? ~0u : (1u << n_) - 1; }
    std::uint32_t full_edge_mask() const {
        return edges_.size() == 32 ? ~0u : (1u << edges_.size()) - 1;
    }
    bool has_loop() const;
    /// Edges with both endpoints inside vmask (loops at members included).
    std::uint32_t internal_edges(std::uint32_t vmask) const;

    /// X/Y symbol table for this graph.
    VarTable var_table() const;

private:
    std::uint32_t n_ = 0;
    std::vector<Edge> edges_;
};

/// A subgraph of a fixed parent, closed under edge endpoints.
class Subgraph {
public:
    Subgraph(const Graph& g, std::uint32_t vertex_mask, std::uint32_t edge_mask);

    const Graph& graph() const { return *graph_; }
    std::uint32_t vertex_mask() const { return vmask_; }
    std::uint32_t edge_mask() const { return emask_; }
    bool empty() const { return vmask_ == 0; }

    friend bool operator==(const Subgraph& a, const Subgraph& b) {
        return a.graph_ == b.graph_ && a.vmask_ == b.vmask_ && a.emask_ == b.emask_;
    }

private:
    const Graph* graph_ = nullptr;
    std::uint32_t vmask_ = 0;
    std::uint32_t emask_ = 0;
};

/// True iff the subgraph is nonempty and connected through its own edges.
bool is_connected(const Subgraph& sub);

/// Maximal connected blocks, ordered by smallest vertex index.
std::vector<Subgraph> connected_components(const Subgraph& sub);

/// Subgraph on vmask with every edge of g internal to vmask.
Subgraph induced_subgraph(const Graph& g, std::uint32_t vmask);

/// Lazily iterates all 2^|E| spanning subgraphs in ascending edge-mask order.
class SpanningSubgraphs {
public:
    explicit SpanningSubgraphs(const Graph& g) : graph_(&g) {}

    class iterator {
    public:
        iterator(const Graph* g, std::uint64_t mask) : graph_(g), mask_(mask) {}
        Subgraph operator*() const {
            return Subgraph(*graph_, graph_->full_vertex_mask(),
                            static_cast<std::uint32_t>(mask_));
        }
        iterator& operator++() { return ++mask_, *this; }
        friend bool operator==(const iterator& a, const iterator& b) { return a.mask_ == b.mask_; }

    private:
        const Graph* graph_;
        std::uint64_t mask_;
    };

    iterator begin() const { return {graph_, 0}; }
    iterator end() const { return {graph_, std::uint64_t(1) << graph_->edge_count()}; }
    std::uint64_t size() const { return std::uint64_t(1) << graph_->edge_count(); }

private:
    const Graph* graph_;
};

inline SpanningSubgraphs spanning_subgraphs(const Graph& g) { return SpanningSubgraphs(g); }

struct LineGraphResult {
    Graph graph;                                       // the line graph L(G)
    std::map<std::string, std::uint32_t> edge_to_vertex;  // edge id of G -> vertex index of L(G)
};

/// L(G): one vertex per edge of g, one edge per unordered pair of distinct
/// edges sharing an endpoint (parallel edges induce a single line edge).
/// Requires at least one edge.
LineGraphResult line_graph(const Graph& g);

/// A direction for every edge of a loopless graph.
class Orientation {
public:
    /// directed[i] is the ordered endpoint pair of edge i.
    Orientation(const Graph& g, std::vector<std::pair<std::uint32_t, std::uint32_t>> directed);

    const Graph& graph() const { return *graph_; }
    std::uint32_t source(std::uint32_t edge) const { return directed_[edge].first; }
    std::uint32_t target(std::uint32_t edge) const { return directed_[edge].second; }

    friend bool operator==(const Orientation& a, const Orientation& b) {
        return a.graph_ == b.graph_ && a.directed_ == b.directed_;
    }
    friend bool operator<(const Orientation& a, const Orientation& b) {
        return a.directed_ < b.directed_;
    }

private:
    const Graph* graph_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> directed_;
};

/// Standard DAG check.
bool is_acyclic(const Orientation& o);

}  // namespace flatpsi

#endif

#ifndef FLATPSI_TUBINGS_HPP
#define FLATPSI_TUBINGS_HPP

#include <boost/dynamic_bitset.hpp>

#include <functional>
#include <span>
#include <vector>

#include "flatpsi/tubes.hpp"

namespace flatpsi {

enum class TubingKind { Complete, Admissible };

/// A maximal collection of tubes: pairwise non-overlapping (Complete) or
/// pairwise compatible induced tubes (Admissible). Admissible tubings may
/// live on a spanning subgraph of the parent graph; host_edge_mask records
/// which one.
class Tubing {
public:
    Tubing(const Graph& g, std::uint32_t host_edge_mask, TubingKind kind, std::vector<Tube> tubes);

    const Graph& graph() const { return *graph_; }
    std::uint32_t host_edge_mask() const { return host_emask_; }
    TubingKind kind() const { return kind_; }
    const std::vector<Tube>& tubes() const { return tubes_; }
    std::size_t size() const { return tubes_.size(); }

    /// Set-of-tubes equality (tubes compared by mask pairs).
    friend bool operator==(const Tubing& a, const Tubing& b);
    friend bool operator<(const Tubing& a, const Tubing& b);

private:
    const Graph* graph_;
    std::uint32_t host_emask_;
    TubingKind kind_;
    std::vector<Tube> tubes_;  // sorted by (vertex mask, edge mask)
};

/// All maximal sets of pairwise non-overlapping tubes, via maximal
/// independent sets of the overlap graph. Every result has size |V|+|E|.
std::vector<Tubing> enumerate_complete_tubings(const Graph& g);

/// All maximal sets of pairwise compatible induced tubes; size |V| each.
std::vector<Tubing> enumerate_admissible_tubings(const Graph& g);
/// Admissible tubings of a spanning subgraph (tubes induced in the host,
/// compatibility over the host's edges).
std::vector<Tubing> enumerate_admissible_tubings(const Subgraph& host);

/// Labels each tube with the unique vertex (admissible) or edge (complete,
/// tubes with at least one edge) inside it and outside every strictly
/// smaller tube.
struct TubingLabeling {
    static constexpr std::uint32_t kNone = UINT32_MAX;
    /// Per tube (aligned with Tubing::tubes()): vertex index, or edge index,
    /// or kNone for the edgeless tubes of a complete tubing.
    std::vector<std::uint32_t> labels;
    /// Inverse: vertex (admissible) or edge (complete) -> tube position.
    std::vector<std::uint32_t> owner;
};
TubingLabeling label_tubing(const Tubing& t);

/// The unique admissible tubing respecting a vertex order: the k-th vertex
/// contributes its connected component among the first k vertices.
Tubing admissible_from_vertex_order(const Graph& g, std::span<const std::uint32_t> order);

/// Orients each edge toward the endpoint whose labeled tube is larger.
Orientation orientation_from_tubing(const Tubing& t);

/// Checks the DAG characterization: |tubes| = |V|, induced, pairwise
/// non-overlapping, and no tube has an incoming edge.
bool is_admissible_for_dag(const Orientation& h, const std::vector<Tube>& tubes);

/// Pushes a complete tubing of g through T -> L(T) onto an admissible
/// tubing of the line graph.
Tubing complete_to_line_admissible(const Tubing& complete, const LineGraphResult& lg);

namespace detail {

using TubeBitset = boost::dynamic_bitset<std::uint64_t>;

/// Maximal-independent-set enumeration (pivoting Bron–Kerbosch on the
/// complement). enter/leave bracket each branch and report the candidates
/// eliminated by the chosen tube — the hook the adjoint's carried products
/// build on; leaf receives each maximal set.
struct MisCallbacks {
    std::function<void(std::uint32_t chosen, const std::vector<std::uint32_t>& dropped)> enter;
    std::function<void()> leave;
    std::function<void(const std::vector<std::uint32_t>& members)> leaf;
};
void enumerate_maximal_independent_sets(const std::vector<TubeBitset>& conflict,
                                        const MisCallbacks& cb);

/// Overlap adjacency over a tube list.
std::vector<TubeBitset> overlap_conflicts(const std::vector<Tube>& tubes);
/// Incompatibility adjacency over a tube list, relative to a host edge mask.
std::vector<TubeBitset> incompatibility_conflicts(const std::vector<Tube>& tubes,
                                                  std::uint32_t host_edge_mask);

}  // namespace detail

}  // namespace flatpsi

#endif

#include "flatpsi/tubings.hpp"

#include <algorithm>
#include <bit>

namespace flatpsi {

namespace detail {

void enumerate_maximal_independent_sets(const std::vector<TubeBitset>& conflict,
                                        const MisCallbacks& cb) {
    const std::size_t n = conflict.size();
    std::vector<TubeBitset> nonconf(n);
    for (std::size_t v = 0; v < n; ++v) {
        nonconf[v] = ~conflict[v];
        nonconf[v].reset(v);
    }

    std::vector<std::uint32_t> members;
    constexpr std::size_t npos = TubeBitset::npos;

    // Bron-Kerbosch with pivoting on the complement graph: maximal cliques
    // there are exactly the maximal independent sets here.
    auto bk = [&](auto&& self, TubeBitset P, TubeBitset X) -> void {
        if (P.none()) {
            if (X.none() && cb.leaf) cb.leaf(members);
            return;
        }
        std::size_t pivot = npos, pivot_score = 0;
        TubeBitset PX = P | X;
        for (std::size_t u = PX.find_first(); u != npos; u = PX.find_next(u)) {
            std::size_t score = (P & nonconf[u]).count();
            if (pivot == npos || score > pivot_score) {
                pivot = u;
                pivot_score = score;
            }
        }
        TubeBitset branch = P & ~nonconf[pivot];
        for (std::size_t v = branch.find_first(); v != npos; v = branch.find_next(v)) {
            TubeBitset P2 = P & nonconf[v];
            TubeBitset X2 = X & nonconf[v];
            if (cb.enter) {
                TubeBitset gone = (P | X) & ~(P2 | X2);
                gone.reset(v);
                std::vector<std::uint32_t> dropped;
                for (std::size_t w = gone.find_first(); w != npos; w = gone.find_next(w))
                    dropped.push_back(static_cast<std::uint32_t>(w));
                cb.enter(static_cast<std::uint32_t>(v), dropped);
            }
            members.push_back(static_cast<std::uint32_t>(v));
            self(self, std::move(P2), std::move(X2));
            members.pop_back();
            if (cb.leave) cb.leave();
            P.reset(v);
            X.set(v);
        }
    };

    TubeBitset P(n), X(n);
    P.set();
    bk(bk, std::move(P), std::move(X));
}

std::vector<TubeBitset> overlap_conflicts(const std::vector<Tube>& tubes) {
    const std::size_t n = tubes.size();
    std::vector<TubeBitset> adj(n, TubeBitset(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (overlapping(tubes[i], tubes[j])) {
                adj[i].set(j);
                adj[j].set(i);
            }
    return adj;
}

std::vector<TubeBitset> incompatibility_conflicts(const std::vector<Tube>& tubes,
                                                  std::uint32_t host_edge_mask) {
    const std::size_t n = tubes.size();
    std::vector<TubeBitset> adj(n, TubeBitset(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (incompatible_in(tubes[i], tubes[j], host_edge_mask)) {
                adj[i].set(j);
                adj[j].set(i);
            }
    return adj;
}

}  // namespace detail

namespace {

bool proper_subtube(const Tube& a, const Tube& b) {
    return (a.vertex_mask() & ~b.vertex_mask()) == 0 && (a.edge_mask() & ~b.edge_mask()) == 0 &&
           !(a.vertex_mask() == b.vertex_mask() && a.edge_mask() == b.edge_mask());
}

}  // namespace

Tubing::Tubing(const Graph& g, std::uint32_t host_edge_mask, TubingKind kind,
               std::vector<Tube> tubes)
    : graph_(&g), host_emask_(host_edge_mask), kind_(kind), tubes_(std::move(tubes)) {
    for (const Tube& t : tubes_)
        if (&t.graph() != &g) throw ValidationError("tubing mixes tubes of different graphs");
    std::sort(tubes_.begin(), tubes_.end());
    for (std::size_t i = 1; i < tubes_.size(); ++i)
        if (tubes_[i] == tubes_[i - 1]) throw ValidationError("tubing contains a duplicate tube");
}

bool operator==(const Tubing& a, const Tubing& b) {
    if (a.graph_ != b.graph_ || a.tubes_.size() != b.tubes_.size()) return false;
    for (std::size_t i = 0; i < a.tubes_.size(); ++i)
        if (!(a.tubes_[i] == b.tubes_[i])) return false;
    return true;
}

bool operator<(const Tubing& a, const Tubing& b) {
    return std::lexicographical_compare(a.tubes_.begin(), a.tubes_.end(), b.tubes_.begin(),
                                        b.tubes_.end());
}

std::vector<Tubing> enumerate_complete_tubings(const Graph& g) {
    std::vector<Tube> tubes = enumerate_tubes(g);
    auto conflict = detail::overlap_conflicts(tubes);
    std::vector<Tubing> out;
    detail::MisCallbacks cb;
    cb.leaf = [&](const std::vector<std::uint32_t>& members) {
        std::vector<Tube> picked;
        picked.reserve(members.size());
        for (std::uint32_t i : members) picked.push_back(tubes[i]);
        out.emplace_back(g, g.full_edge_mask(), TubingKind::Complete, std::move(picked));
    };
    detail::enumerate_maximal_independent_sets(conflict, cb);
    const std::size_t expect = g.vertex_count() + g.edge_count();
    for (const Tubing& t : out)
        if (t.size() != expect)
            throw std::logic_error("complete tubing size law |V|+|E| violated");
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Tubing> enumerate_admissible_tubings(const Subgraph& host) {
    const Graph& g = host.graph();
    std::vector<Tube> tubes;
    for (Tube& t : enumerate_tubes(host))
        if (is_induced_in(t, host.edge_mask())) tubes.push_back(std::move(t));
    auto conflict = detail::incompatibility_conflicts(tubes, host.edge_mask());
    std::vector<Tubing> out;
    detail::MisCallbacks cb;
    cb.leaf = [&](const std::vector<std::uint32_t>& members) {
        std::vector<Tube> picked;
        picked.reserve(members.size());
        for (std::uint32_t i : members) picked.push_back(tubes[i]);
        out.emplace_back(g, host.edge_mask(), TubingKind::Admissible, std::move(picked));
    };
    detail::enumerate_maximal_independent_sets(conflict, cb);
    const std::size_t expect = std::popcount(host.vertex_mask());
    for (const Tubing& t : out)
        if (t.size() != expect) throw std::logic_error("admissible tubing size law |V| violated");
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Tubing> enumerate_admissible_tubings(const Graph& g) {
    return enumerate_admissible_tubings(Subgraph(g, g.full_vertex_mask(), g.full_edge_mask()));
}

TubingLabeling label_tubing(const Tubing& t) {
    const auto& tubes = t.tubes();
    const Graph& g = t.graph();
    TubingLabeling out;
    out.labels.assign(tubes.size(), TubingLabeling::kNone);
    const bool admissible = t.kind() == TubingKind::Admissible;
    out.owner.assign(admissible ? g.vertex_count() : g.edge_count(), TubingLabeling::kNone);

    for (std::size_t i = 0; i < tubes.size(); ++i) {
        std::uint32_t cand = admissible ? tubes[i].vertex_mask() : tubes[i].edge_mask();
        if (!admissible && cand == 0) continue;  // edgeless tubes stay unlabeled
        for (std::size_t j = 0; j < tubes.size(); ++j) {
            if (j == i || !proper_subtube(tubes[j], tubes[i])) continue;
            cand &= admissible ? ~tubes[j].vertex_mask() : ~tubes[j].edge_mask();
        }
        if (std::popcount(cand) != 1)
            throw ValidationError("labeling is not unique; input is not a tubing");
        std::uint32_t label = std::countr_zero(cand);
        out.labels[i] = label;
        if (out.owner[label] != TubingLabeling::kNone)
            throw ValidationError("labeling is not a bijection; input is not a tubing");
        out.owner[label] = static_cast<std::uint32_t>(i);
    }
    for (std::uint32_t x : out.owner)
        if (x == TubingLabeling::kNone)
            throw ValidationError("labeling does not cover all labels; input is not a tubing");
    return out;
}

Tubing admissible_from_vertex_order(const Graph& g, std::span<const std::uint32_t> order) {
    const std::uint32_t n = g.vertex_count();
    if (order.size() != n) throw ValidationError("vertex order must list every vertex once");
    std::uint32_t seen = 0;
    for (std::uint32_t v : order) {
        if (v >= n || (seen >> v & 1)) throw ValidationError("vertex order is not a permutation");
        seen |= 1u << v;
    }
    std::vector<Tube> tubes;
    std::uint32_t processed = 0;
    for (std::uint32_t v : order) {
        processed |= 1u << v;
        Subgraph stage = induced_subgraph(g, processed);
        for (const Subgraph& block : connected_components(stage)) {
            if (block.vertex_mask() >> v & 1) {
                tubes.emplace_back(block);
                break;
            }
        }
    }
    return Tubing(g, g.full_edge_mask(), TubingKind::Admissible, std::move(tubes));
}

Orientation orientation_from_tubing(const Tubing& t) {
    if (t.kind() != TubingKind::Admissible)
        throw ValidationError("orientation requires an admissible tubing");
    const Graph& g = t.graph();
    if (g.has_loop()) throw ValidationError("orientations are defined for loopless graphs only");
    TubingLabeling lab = label_tubing(t);
    const auto& tubes = t.tubes();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> directed;
    directed.reserve(g.edge_count());
    for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
        const Edge& e = g.edge(i);
        const Tube& tu = tubes[lab.owner[e.u]];
        const Tube& tv = tubes[lab.owner[e.v]];
        if (proper_subtube(tu, tv))
            directed.emplace_back(e.u, e.v);
        else if (proper_subtube(tv, tu))
            directed.emplace_back(e.v, e.u);
        else
            throw ValidationError("labeled tubes of edge '" + e.id +
                                  "' are not nested; input is not an admissible tubing");
    }
    Orientation o(g, std::move(directed));
    if (!is_acyclic(o)) throw std::logic_error("tubing induced a cyclic orientation");
    return o;
}

bool is_admissible_for_dag(const Orientation& h, const std::vector<Tube>& tubes) {
    const Graph& g = h.graph();
    for (const Tube& t : tubes)
        if (&t.graph() != &g) throw ValidationError("tube set does not live on the DAG's graph");
    if (tubes.size() != g.vertex_count()) return false;
    for (const Tube& t : tubes)
        if (!is_induced(t)) return false;
    for (std::size_t i = 0; i < tubes.size(); ++i)
        for (std::size_t j = i + 1; j < tubes.size(); ++j)
            if (overlapping(tubes[i], tubes[j])) return false;
    for (const Tube& t : tubes) {
        for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
            bool src_in = t.vertex_mask() >> h.source(i) & 1;
            bool dst_in = t.vertex_mask() >> h.target(i) & 1;
            if (dst_in && !src_in) return false;  // incoming edge
        }
    }
    return true;
}

Tubing complete_to_line_admissible(const Tubing& complete, const LineGraphResult& lg) {
    if (complete.kind() != TubingKind::Complete)
        throw ValidationError("expected a complete tubing");
    const Graph& lgraph = lg.graph;
    std::vector<Tube> tubes;
    for (const Tube& t : complete.tubes()) {
        if (t.edge_mask() == 0) continue;
        // Edge indices of g are vertex indices of L(g); L(T) is induced.
        std::uint32_t vmask = t.edge_mask();
        tubes.emplace_back(Subgraph(lgraph, vmask, lgraph.internal_edges(vmask)));
    }
    Tubing out(lgraph, lgraph.full_edge_mask(), TubingKind::Admissible, std::move(tubes));
    if (out.size() != complete.graph().edge_count())
        throw std::logic_error("line-graph image has wrong size");
    return out;
}

}  // namespace flatpsi

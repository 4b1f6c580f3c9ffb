#include "flatpsi/wavefunction.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <unordered_map>

namespace flatpsi {

LinearForm linear_form(const Graph& g, const Tube& t) {
    const VarTable vt = g.var_table();
    std::vector<std::pair<std::uint32_t, Int>> terms;
    const std::uint32_t vmask = t.vertex_mask();
    const std::uint32_t emask = t.edge_mask();
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
        if (vmask >> v & 1) terms.emplace_back(vt.x(v), Int(1));
    for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
        const Edge& e = g.edge(i);
        if (e.is_loop()) {
            // A loop never crosses; omitted internal loops count doubled.
            if ((vmask >> e.u & 1) && !(emask >> i & 1)) terms.emplace_back(vt.y(i), Int(2));
            continue;
        }
        bool a = vmask >> e.u & 1, b = vmask >> e.v & 1;
        if (a != b)
            terms.emplace_back(vt.y(i), Int(1));
        else if (a && b && !(emask >> i & 1))
            terms.emplace_back(vt.y(i), Int(2));
    }
    return LinearForm(vt.nvars(), std::move(terms));
}

LinearForm primed_form(const Graph& g, const Tube& t) {
    const VarTable vt = g.var_table();
    std::vector<Int> acc(vt.nvars(), Int(0));
    const std::uint32_t vmask = t.vertex_mask();
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
        if (vmask >> v & 1) acc[vt.x(v)] += Int(1);
    for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
        const Edge& e = g.edge(i);
        // X'_v = X_v + sum of incident Y (a loop is incident twice).
        if (vmask >> e.u & 1) acc[vt.y(i)] += Int(1);
        if (vmask >> e.v & 1) acc[vt.y(i)] += Int(1);
        if (t.edge_mask() >> i & 1) acc[vt.y(i)] += Int(-2);  // Y'_e = -2 Y_e
    }
    std::vector<std::pair<std::uint32_t, Int>> terms;
    for (std::uint32_t v = 0; v < vt.nvars(); ++v)
        if (!acc[v].is_zero()) terms.emplace_back(v, acc[v]);
    return LinearForm(vt.nvars(), std::move(terms));
}

OverlapCheckReport overlap_relation_check(const Graph& g) {
    OverlapCheckReport report;
    std::vector<Tube> tubes = enumerate_tubes(g);
    for (std::size_t i = 0; i < tubes.size(); ++i) {
        for (std::size_t j = i + 1; j < tubes.size(); ++j) {
            if (!overlapping(tubes[i], tubes[j])) continue;
            const Tube& s = tubes[i];
            const Tube& t = tubes[j];
            Tube u(Subgraph(g, s.vertex_mask() | t.vertex_mask(), s.edge_mask() | t.edge_mask()));
            Subgraph meet(g, s.vertex_mask() & t.vertex_mask(), s.edge_mask() & t.edge_mask());
            Polynomial lhs =
                Polynomial::add(linear_form(g, s).poly(), linear_form(g, t).poly());
            Polynomial rhs = linear_form(g, u).poly();
            for (const Subgraph& block : connected_components(meet))
                rhs = Polynomial::add(rhs, linear_form(g, Tube(block)).poly());
            if (!(lhs == rhs)) {
                report.ok = false;
                report.failing_pair = {s, t};
                return report;
            }
        }
    }
    return report;
}

std::string psi_method_name(PsiMethod m) {
    switch (m) {
        case PsiMethod::Bulk: return "bulk";
        case PsiMethod::Boundary: return "boundary";
        case PsiMethod::Canonical: return "canonical";
        case PsiMethod::Recursion: return "recursion";
    }
    return "?";
}

PsiResult psi_boundary(const Graph& g) {
    const std::uint32_t nv = g.var_table().nvars();
    std::vector<FactoredRational> terms;
    for (const Tubing& tubing : enumerate_complete_tubings(g)) {
        std::vector<LinearForm> atoms;
        atoms.reserve(tubing.size());
        for (const Tube& t : tubing.tubes()) atoms.push_back(linear_form(g, t));
        terms.push_back(FactoredRational::reciprocal_product(nv, std::move(atoms)));
    }
    return {FactoredRational::sum(std::move(terms), nv), PsiMethod::Boundary, &g};
}

PsiResult psi_bulk(const Graph& g) {
    const VarTable vt = g.var_table();
    const std::uint32_t nv = vt.nvars();
    const std::vector<Tube> all_tubes = enumerate_tubes(g);
    std::vector<LinearForm> forms;
    forms.reserve(all_tubes.size());
    for (const Tube& t : all_tubes) forms.push_back(linear_form(g, t));

    std::vector<FactoredRational> terms;
    const std::uint32_t full = g.full_edge_mask();
    for (std::uint64_t emask_h = 0; emask_h <= full; ++emask_h) {
        // Tubes of the spanning subgraph H that are induced in H.
        std::vector<Tube> tubes;
        std::vector<std::uint32_t> tube_ix;
        for (std::uint32_t i = 0; i < all_tubes.size(); ++i) {
            const Tube& t = all_tubes[i];
            if (t.edge_mask() & ~emask_h) continue;
            if (!is_induced_in(t, static_cast<std::uint32_t>(emask_h))) continue;
            tubes.push_back(t);
            tube_ix.push_back(i);
        }
        auto conflict =
            detail::incompatibility_conflicts(tubes, static_cast<std::uint32_t>(emask_h));
        bool negative = std::popcount(full & ~static_cast<std::uint32_t>(emask_h)) & 1;

        detail::MisCallbacks cb;
        cb.leaf = [&](const std::vector<std::uint32_t>& members) {
            if (members.size() != g.vertex_count())
                throw std::logic_error("admissible tubing size law |V| violated");
            std::vector<LinearForm> atoms;
            atoms.reserve(members.size());
            for (std::uint32_t i : members) atoms.push_back(forms[tube_ix[i]]);
            FactoredRational term = FactoredRational::reciprocal_product(nv, std::move(atoms));
            terms.push_back(negative ? term.negated() : std::move(term));
        };
        detail::enumerate_maximal_independent_sets(conflict, cb);
        if (full == 0) break;  // lone empty spanning subgraph
    }

    // Cluster summands with similar denominators so the balanced reduction
    // multiplies by small atom differences.
    std::sort(terms.begin(), terms.end(),
              [](const FactoredRational& a, const FactoredRational& b) {
                  return std::lexicographical_compare(a.denominator().begin(),
                                                      a.denominator().end(),
                                                      b.denominator().begin(),
                                                      b.denominator().end());
              });
    FactoredRational sum = FactoredRational::sum(std::move(terms), nv);
    // Prefactor 1 / prod_e (2 Y_e).
    std::vector<LinearForm> den = sum.denominator();
    Rational scalar = sum.scalar();
    for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
        den.emplace_back(nv, std::vector<std::pair<std::uint32_t, Int>>{{vt.y(i), Int(1)}});
        scalar /= 2;
    }
    return {FactoredRational::make(sum.numerator(), std::move(den), std::move(scalar)),
            PsiMethod::Bulk, &g};
}

Polynomial adjoint(const Graph& g) {
    const std::uint32_t nv = g.var_table().nvars();
    std::vector<Tube> tubes = enumerate_tubes(g);
    std::vector<LinearForm> forms;
    forms.reserve(tubes.size());
    for (const Tube& t : tubes) forms.push_back(linear_form(g, t));

    // Sum over complete tubings of the product of omitted forms. An
    // aggregate (n, u) stands for sum over a block of tubings of
    // prod_{T in u \ tubing} l_T; merging two aggregates multiplies each
    // side by its missing forms only, so shared factors are never expanded
    // twice. The final union is all of Tub(g) (every tube extends to a
    // complete tubing).
    struct Agg {
        Polynomial n;
        detail::TubeBitset u;
    };
    std::vector<Agg> items;
    for (const Tubing& tubing : enumerate_complete_tubings(g)) {
        detail::TubeBitset u(tubes.size());
        for (const Tube& t : tubing.tubes()) {
            auto it = std::lower_bound(tubes.begin(), tubes.end(), t);
            u.set(static_cast<std::size_t>(it - tubes.begin()));
        }
        items.push_back({Polynomial::constant(nv, Int(1)), std::move(u)});
    }

    auto times_missing = [&](Polynomial p, const detail::TubeBitset& missing) {
        for (std::size_t i = missing.find_first(); i != detail::TubeBitset::npos;
             i = missing.find_next(i))
            p = p.mul_linear(forms[i]);
        return p;
    };
    while (items.size() > 1) {
        std::vector<Agg> next;
        next.reserve((items.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < items.size(); i += 2) {
            Agg& a = items[i];
            Agg& b = items[i + 1];
            Polynomial na = times_missing(std::move(a.n), b.u & ~a.u);
            Polynomial nb = times_missing(std::move(b.n), a.u & ~b.u);
            next.push_back({Polynomial::add(na, nb), a.u | b.u});
        }
        if (items.size() % 2 == 1) next.push_back(std::move(items.back()));
        items = std::move(next);
    }
    Polynomial acc = std::move(items.front().n);
    detail::TubeBitset rest = ~items.front().u;
    return times_missing(std::move(acc), rest);
}

PsiResult psi_canonical(const Graph& g) {
    std::vector<LinearForm> den;
    for (const Tube& t : enumerate_tubes(g)) den.push_back(linear_form(g, t));
    return {FactoredRational::make(adjoint(g), std::move(den)), PsiMethod::Canonical, &g};
}

namespace {

class RecursionEngine {
public:
    explicit RecursionEngine(const Graph& g) : g_(g), vt_(g.var_table()) {}

    FactoredRational run() { return eval(g_.full_vertex_mask(), g_.full_edge_mask()); }

private:
    FactoredRational eval(std::uint32_t vmask, std::uint32_t emask) {
        const std::uint64_t key = (std::uint64_t(vmask) << 32) | emask;
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        FactoredRational out = compute(vmask, emask);
        memo_.emplace(key, out);
        return out;
    }

    FactoredRational compute(std::uint32_t vmask, std::uint32_t emask) {
        const std::uint32_t nv = vt_.nvars();
        if (vmask == 0) return FactoredRational::one(nv);
        Subgraph sub(g_, vmask, emask);
        std::vector<Subgraph> blocks = connected_components(sub);
        if (blocks.size() > 1) {
            FactoredRational out = FactoredRational::one(nv);
            for (const Subgraph& b : blocks)
                out = FactoredRational::mul(out, eval(b.vertex_mask(), b.edge_mask()));
            return out;
        }
        if (emask == 0) {
            // Bare vertex.
            std::uint32_t v = std::countr_zero(vmask);
            LinearForm x(nv, {{vt_.x(v), Int(1)}});
            return FactoredRational::reciprocal_product(nv, {std::move(x)});
        }
        // Connected with at least one edge: 1/l_G times the sum over deleted
        // edges of the shifted sub-values.
        std::vector<std::pair<std::uint32_t, Int>> lterms;
        for (std::uint32_t v = 0; v < g_.vertex_count(); ++v)
            if (vmask >> v & 1) lterms.emplace_back(vt_.x(v), Int(1));
        LinearForm lg(nv, std::move(lterms));

        std::vector<FactoredRational> terms;
        for (std::uint32_t i = 0; i < g_.edge_count(); ++i) {
            if (!(emask >> i & 1)) continue;
            FactoredRational val = eval(vmask, emask & ~(1u << i));
            const Edge& e = g_.edge(i);
            if (e.is_loop()) {
                LinearForm twice(nv, {{vt_.y(i), Int(2)}});
                val = val.substitute_shift(vt_.x(e.u), twice);
            } else {
                LinearForm once(nv, {{vt_.y(i), Int(1)}});
                val = val.substitute_shift(vt_.x(e.u), once);
                val = val.substitute_shift(vt_.x(e.v), once);
            }
            terms.push_back(std::move(val));
        }
        return FactoredRational::sum(std::move(terms), nv).div_atom(lg);
    }

    const Graph& g_;
    VarTable vt_;
    std::unordered_map<std::uint64_t, FactoredRational> memo_;
};

}  // namespace

PsiResult psi_recursion(const Graph& g) {
    return {RecursionEngine(g).run(), PsiMethod::Recursion, &g};
}

VerifyReport verify_all(const Graph& g) {
    using clock = std::chrono::steady_clock;
    VerifyReport report;
    auto timed = [&](int slot, auto&& fn) {
        auto t0 = clock::now();
        report.results[slot] = fn(g);
        auto t1 = clock::now();
        report.timings_ms[slot] = std::chrono::duration<double, std::milli>(t1 - t0).count();
    };
    timed(0, psi_bulk);
    timed(1, psi_boundary);
    timed(2, psi_canonical);
    timed(3, psi_recursion);

    report.all_equal = true;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if (!FactoredRational::equal(report.results[i].value, report.results[j].value)) {
                report.all_equal = false;
                report.disagreements.emplace_back(report.results[i].method,
                                                  report.results[j].method);
            }
        }
    }
    return report;
}

}  // namespace flatpsi

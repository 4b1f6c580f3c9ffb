#ifndef FLATPSI_WAVEFUNCTION_HPP
#define FLATPSI_WAVEFUNCTION_HPP

#include <array>
#include <optional>
#include <string>

#include "flatpsi/rational.hpp"
#include "flatpsi/tubings.hpp"

namespace flatpsi {

/// The linear form of a tube, always taken against the full parent graph:
/// X over the tube's vertices, Y for each crossing edge, 2Y for each parent
/// edge internal to the tube's vertices but absent from its edge set (loops
/// included; loops never cross).
LinearForm linear_form(const Graph& g, const Tube& t);

/// The same form assembled in shifted coordinates X' = X + sum of incident
/// Y (loops twice), Y' = -2Y, as sum X' over vertices + sum Y' over edges,
/// expanded back to X,Y. Identical to linear_form for every tube.
LinearForm primed_form(const Graph& g, const Tube& t);

/// For every overlapping pair (S,T), checks
///   l_S + l_T = l_{S∪T} + sum over components U of S∩T of l_U
/// exactly. Reports the first failing pair, if any.
struct OverlapCheckReport {
    bool ok = true;
    std::optional<std::pair<Tube, Tube>> failing_pair;
    explicit operator bool() const { return ok; }
};
OverlapCheckReport overlap_relation_check(const Graph& g);

enum class PsiMethod { Bulk, Boundary, Canonical, Recursion };
std::string psi_method_name(PsiMethod m);

struct PsiResult {
    FactoredRational value;
    PsiMethod method;
    const Graph* graph;
};

/// Boundary representation: sum of 1 / prod(tube forms) over all complete
/// tubings.
PsiResult psi_boundary(const Graph& g);

/// Bulk representation: 1/prod(2Y) times the signed sum over all spanning
/// subgraphs H and all admissible tubings of H of 1 / prod(tube forms),
/// forms taken against the full graph.
PsiResult psi_bulk(const Graph& g);

/// Adjoint polynomial: sum over complete tubings of the product of the
/// omitted tube forms, expanded. Degree |Tub| - |V| - |E|.
Polynomial adjoint(const Graph& g);

/// Canonical-form representation: adjoint / prod over all tubes.
PsiResult psi_canonical(const Graph& g);

/// Edge-deletion recursion: product over components; 1/X on a bare vertex;
/// otherwise 1/l_G times the sum over edges of the deleted-edge value with
/// X_i += Y_e on both endpoints (X_i += 2Y_e for a loop). Memoized per
/// (vertex mask, edge mask). This is the oracle the other three paths are
/// validated against.
PsiResult psi_recursion(const Graph& g);

/// Runs all four representations, checks pairwise equality, reports timings
/// and the reduced form.
struct VerifyReport {
    std::array<PsiResult, 4> results;  // bulk, boundary, canonical, recursion
    std::array<double, 4> timings_ms;
    bool all_equal = false;
    std::vector<std::pair<PsiMethod, PsiMethod>> disagreements;
};
VerifyReport verify_all(const Graph& g);

}  // namespace flatpsi

#endif

#ifndef FLATPSI_NUMERIC_ORACLE_HPP
#define FLATPSI_NUMERIC_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "flatpsi/wavefunction.hpp"

namespace flatpsi {

/// Strictly positive evaluation point, one value per vertex and per edge.
struct NumericPoint {
    std::vector<double> x;
    std::vector<double> y;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

/// Edge kernel (1/2y)[e^{-y(ti-tj)} Θ(ti-tj) + e^{-y(tj-ti)} Θ(tj-ti) - e^{y(ti+tj)}],
/// with Θ(0) = 1/2 so coincident times (loops) see a combined step of 1.
double propagator(double y, double eta_i, double eta_j);

/// Importance-sampled Monte Carlo for the defining integral of psi: draws
/// eta_i = -Exponential(X_i) so the e^{X eta} weights cancel against the
/// sampling density, leaving mean of prod(propagators) / prod(X_i).
/// Deterministic given the seed. Requires |V| <= 4 and samples >= 10^4.
McEstimate mc_psi(const Graph& g, const NumericPoint& p, std::uint64_t samples, std::uint64_t seed);

/// Monte Carlo vs. exact symbolic value at the same point. Passes when the
/// difference is within sigma_tol standard errors or rel_tol relative,
/// whichever is looser.
struct NumericCompareReport {
    McEstimate estimate;
    double exact = 0.0;
    double abs_diff = 0.0;
    double sigmas = 0.0;    // |diff| / std_error
    double rel_err = 0.0;   // |diff| / |exact|
    bool pass = false;
};
NumericCompareReport compare_numeric(const Graph& g, const NumericPoint& p, const PsiResult& psi,
                                     std::uint64_t samples, std::uint64_t seed,
                                     double sigma_tol = 4.0, double rel_tol = 0.02);

}  // namespace flatpsi

#endif

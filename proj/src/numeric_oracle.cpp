#include "flatpsi/numeric_oracle.hpp"

#include <cmath>
#include <random>

namespace flatpsi {

double propagator(double y, double eta_i, double eta_j) {
    auto theta = [](double x) { return x > 0 ? 1.0 : (x < 0 ? 0.0 : 0.5); };
    double d = eta_i - eta_j;
    double bracket = std::exp(-y * d) * theta(d) + std::exp(y * d) * theta(-d) -
                     std::exp(y * (eta_i + eta_j));
    return bracket / (2.0 * y);
}

namespace {

// (0,1] from the top 53 bits; explicit so streams are bit-stable.
double unit_from_bits(std::uint64_t r) {
    return (static_cast<double>(r >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

McEstimate mc_psi(const Graph& g, const NumericPoint& p, std::uint64_t samples,
                  std::uint64_t seed) {
    if (g.vertex_count() > 4)
        throw ValidationError("mc_psi handles at most 4 vertices");
    if (samples < 10000) throw ValidationError("mc_psi needs at least 10^4 samples");
    if (p.x.size() != g.vertex_count() || p.y.size() != g.edge_count())
        throw ValidationError("numeric point does not match the graph");
    for (double v : p.x)
        if (!(v > 0)) throw ValidationError("vertex values must be positive");
    for (double v : p.y)
        if (!(v > 0)) throw ValidationError("edge values must be positive");

    const std::uint32_t n = g.vertex_count();
    double inv_xprod = 1.0;
    for (double v : p.x) inv_xprod /= v;

    std::mt19937_64 rng(seed);
    double mean = 0.0, m2 = 0.0;
    std::vector<double> eta(n);
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (std::uint32_t v = 0; v < n; ++v)
            eta[v] = std::log(unit_from_bits(rng())) / p.x[v];  // -Exponential(X_v)
        double w = inv_xprod;
        for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
            const Edge& e = g.edge(i);
            w *= propagator(p.y[i], eta[e.u], eta[e.v]);
        }
        double delta = w - mean;
        mean += delta / static_cast<double>(s + 1);
        m2 += delta * (w - mean);
    }
    double variance = samples > 1 ? m2 / static_cast<double>(samples - 1) : 0.0;
    McEstimate out;
    out.mean = mean;
    out.std_error = std::sqrt(variance / static_cast<double>(samples));
    out.samples = samples;
    out.seed = seed;
    return out;
}

NumericCompareReport compare_numeric(const Graph& g, const NumericPoint& p, const PsiResult& psi,
                                     std::uint64_t samples, std::uint64_t seed, double sigma_tol,
                                     double rel_tol) {
    NumericCompareReport report;
    report.estimate = mc_psi(g, p, samples, seed);

    const VarTable vt = g.var_table();
    std::vector<Rational> point(vt.nvars());
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) point[vt.x(v)] = Rational(p.x[v]);
    for (std::uint32_t i = 0; i < g.edge_count(); ++i) point[vt.y(i)] = Rational(p.y[i]);
    report.exact = psi.value.eval_exact(point).convert_to<double>();

    report.abs_diff = std::abs(report.estimate.mean - report.exact);
    report.sigmas =
        report.estimate.std_error > 0 ? report.abs_diff / report.estimate.std_error : 0.0;
    report.rel_err = report.exact != 0 ? report.abs_diff / std::abs(report.exact) : 0.0;
    // Pass at sigma_tol standard errors or rel_tol relative, whichever is looser.
    report.pass = report.sigmas <= sigma_tol || report.rel_err <= rel_tol;
    return report;
}

}  // namespace flatpsi

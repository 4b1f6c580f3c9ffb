#ifndef FLATPSI_ALGEBRA_HPP
#define FLATPSI_ALGEBRA_HPP

#include <boost/core/noinit_adaptor.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flatpsi/integer.hpp"

namespace flatpsi {

/// A symbol: X(vertex) or Y(edge), identified by 0-based index.
struct Variable {
    enum class Kind : std::uint8_t { X, Y };
    Kind kind;
    std::uint32_t index;

    friend bool operator==(const Variable&, const Variable&) = default;
};

/// Maps the X/Y symbols of one graph onto the flat variable indices
/// 0..nvars-1 used by Polynomial. Order: X_1 < ... < X_n < Y_{e_1} < ... < Y_{e_m}.
class VarTable {
public:
    VarTable() = default;
    VarTable(std::uint32_t vertex_count, std::vector<std::string> edge_ids)
        : vertex_count_(vertex_count), edge_ids_(std::move(edge_ids)) {}

    std::uint32_t nvars() const { return vertex_count_ + static_cast<std::uint32_t>(edge_ids_.size()); }
    std::uint32_t vertex_count() const { return vertex_count_; }
    std::uint32_t edge_count() const { return static_cast<std::uint32_t>(edge_ids_.size()); }

    std::uint32_t flat(Variable v) const {
        return v.kind == Variable::Kind::X ? v.index : vertex_count_ + v.index;
    }
    std::uint32_t x(std::uint32_t vertex) const { return vertex; }
    std::uint32_t y(std::uint32_t edge) const { return vertex_count_ + edge; }

    Variable variable(std::uint32_t flat_index) const {
        if (flat_index < vertex_count_) return {Variable::Kind::X, flat_index};
        return {Variable::Kind::Y, flat_index - vertex_count_};
    }
    /// Printable name: "X3" or "Y[id]".
    std::string name(std::uint32_t flat_index) const;

private:
    std::uint32_t vertex_count_ = 0;
    std::vector<std::string> edge_ids_;
};

class LinearForm;

/// Term buffers sized in the hot loops; resize must not zero-fill.
using ByteVec = std::vector<std::uint8_t, boost::noinit_adaptor<std::allocator<std::uint8_t>>>;
using DegVec = std::vector<std::uint16_t, boost::noinit_adaptor<std::allocator<std::uint16_t>>>;

/// Sparse multivariate polynomial over Z.
///
/// Terms are stored densely packed (one exponent byte per variable) in
/// descending graded-lexicographic order: higher total degree first, ties
/// broken by exponent bytes compared front to back, so X1 outranks X2
/// outranks every Y. That order doubles as the canonical print order.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::uint32_t nvars) : nvars_(nvars) {}

    static Polynomial constant(std::uint32_t nvars, Int c);
    static Polynomial variable(std::uint32_t nvars, std::uint32_t var);
    /// Builds from possibly unsorted/duplicated terms; normalizes. Rows are
    /// nvars bytes wide here (stride padding is internal).
    static Polynomial from_terms(std::uint32_t nvars,
                                 std::vector<std::pair<std::vector<std::uint8_t>, Int>> terms);
    /// Low-level: adopts term arrays that are already sorted descending,
    /// combined, free of zero coefficients, and padded to row_stride(nvars).
    static Polynomial adopt(std::uint32_t nvars, ByteVec exps, DegVec degs,
                            std::vector<Int> coefs);

    /// Exponent rows are padded to 8-byte multiples (pad bytes zero) so the
    /// term order can compare whole words.
    static constexpr std::uint32_t row_stride(std::uint32_t nvars) {
        return nvars == 0 ? 8 : ((nvars + 7u) & ~7u);
    }
    std::uint32_t stride() const { return row_stride(nvars_); }

    std::uint32_t nvars() const { return nvars_; }
    std::size_t term_count() const { return coefs_.size(); }
    bool is_zero() const { return coefs_.empty(); }
    bool is_constant() const { return coefs_.empty() || (coefs_.size() == 1 && degs_[0] == 0); }
    /// Total degree; 0 for the zero polynomial.
    std::uint32_t total_degree() const { return coefs_.empty() ? 0 : degs_[0]; }

    const Int& coef(std::size_t i) const { return coefs_[i]; }
    std::uint32_t deg(std::size_t i) const { return degs_[i]; }
    std::span<const std::uint8_t> mono(std::size_t i) const {
        return {exps_.data() + i * stride(), nvars_};
    }
    std::uint8_t exponent(std::size_t i, std::uint32_t var) const {
        return exps_[i * stride() + var];
    }

    static Polynomial add(const Polynomial& a, const Polynomial& b);
    static Polynomial sub(const Polynomial& a, const Polynomial& b);
    static Polynomial mul(const Polynomial& a, const Polynomial& b);
    Polynomial negated() const;
    Polynomial mul_scalar(const Int& c) const;
    void scale_in_place(const Int& c);
    /// Product with a single term c * prod(var^exp).
    Polynomial mul_term(std::span<const std::uint8_t> mono, const Int& c) const;
    Polynomial mul_linear(const LinearForm& f) const;

    /// Exact quotient by a linear form, or nullopt when not divisible in Z[x].
    std::optional<Polynomial> div_exact_linear(const LinearForm& f) const;
    /// Exact quotient by a variable, or nullopt.
    std::optional<Polynomial> div_exact_var(std::uint32_t var) const;

    /// Substitutes var -> var + shift (var must be absent from shift's support
    /// for the usual use, but the general case is handled too).
    Polynomial substitute_shift(std::uint32_t var, const LinearForm& shift) const;

    /// Reinterprets variables through an injection old_index -> new_index.
    Polynomial remap(std::uint32_t new_nvars, std::span<const std::uint32_t> var_map) const;

    /// Positive gcd of all coefficients; 0 for the zero polynomial.
    Int content() const;
    Polynomial divided_by_content(const Int& c) const;

    std::uint64_t eval_mod(std::span<const std::uint64_t> point, std::uint64_t p) const;
    Rational eval_exact(std::span<const Rational> point) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b);
    /// Total deterministic order (for sorting atom multisets).
    static int compare(const Polynomial& a, const Polynomial& b);

    std::string str(const VarTable& vt) const;

private:
    friend class LinearForm;
    Polynomial shifted_by_var(std::uint32_t var, const Int& c) const;
    Polynomial shifted_pair(std::uint32_t u, const Int& cu, std::uint32_t v, const Int& cv) const;
    Polynomial mul_linear_range(const std::uint32_t* vars, const Int* cs, std::size_t lo,
                                std::size_t hi) const;
    void push_term(std::span<const std::uint8_t> mono, std::uint32_t deg, Int c);
    // Hot-path append: row must be stride() bytes.
    void append_row(const std::uint8_t* row, std::uint32_t deg, Int c) {
        exps_.insert(exps_.end(), row, row + stride());
        degs_.push_back(static_cast<std::uint16_t>(deg));
        coefs_.push_back(std::move(c));
    }
    void normalize_sort();

    std::uint32_t nvars_ = 0;
    ByteVec exps_;   // term_count * stride(), row-major
    DegVec degs_;    // total degree per term
    std::vector<Int> coefs_;
};

/// Homogeneous degree-1 polynomial with at least one term (no constant part).
class LinearForm {
public:
    LinearForm() = default;
    LinearForm(std::uint32_t nvars, std::vector<std::pair<std::uint32_t, Int>> terms);
    explicit LinearForm(Polynomial p);

    const Polynomial& poly() const { return poly_; }
    std::uint32_t nvars() const { return poly_.nvars(); }
    std::size_t term_count() const { return poly_.term_count(); }
    /// i-th (variable, coefficient) in canonical order.
    std::pair<std::uint32_t, Int> term(std::size_t i) const;
    /// Flat index of the canonically largest variable present.
    std::uint32_t leading_var() const { return term(0).first; }

    /// Positive gcd of the coefficients.
    Int content() const { return poly_.content(); }
    LinearForm divided_by_content(const Int& c) const { return LinearForm(poly_.divided_by_content(c)); }

    std::uint64_t eval_mod(std::span<const std::uint64_t> point, std::uint64_t p) const {
        return poly_.eval_mod(point, p);
    }
    Rational eval_exact(std::span<const Rational> point) const { return poly_.eval_exact(point); }

    LinearForm substitute_shift(std::uint32_t var, const LinearForm& shift) const;
    LinearForm remap(std::uint32_t new_nvars, std::span<const std::uint32_t> var_map) const;

    friend bool operator==(const LinearForm& a, const LinearForm& b) { return a.poly_ == b.poly_; }
    /// Canonical atom order: descending graded-lex, so X1-led forms print first.
    friend bool operator<(const LinearForm& a, const LinearForm& b) {
        return Polynomial::compare(a.poly_, b.poly_) > 0;
    }

    std::string str(const VarTable& vt) const { return poly_.str(vt); }

private:
    Polynomial poly_;
};

}  // namespace flatpsi

#endif

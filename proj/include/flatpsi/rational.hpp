#ifndef FLATPSI_RATIONAL_HPP
#define FLATPSI_RATIONAL_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatpsi/algebra.hpp"

namespace flatpsi {

/// Thrown by exact evaluation when a denominator atom vanishes at the point.
class PoleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rational function kept as
///     scalar * numerator / (atom_1 * atom_2 * ... * atom_k),
/// where the numerator is an expanded integer polynomial and the denominator
/// is a multiset of linear atoms (tube forms and bare variables). Denominators
/// are never expanded.
///
/// Normal form invariants:
///   - atoms have content 1 and positive leading coefficient; contents fold
///     into the scalar;
///   - no atom divides the numerator (greedy cancellation has run to a fixpoint);
///   - the numerator has content 1 and positive leading coefficient;
///   - zero is numerator 0, empty denominator, scalar 1;
///   - atoms are sorted, duplicates adjacent.
class FactoredRational {
public:
    FactoredRational() = default;
    explicit FactoredRational(std::uint32_t nvars)
        : num_(Polynomial(nvars)), scalar_(1) {}

    static FactoredRational zero(std::uint32_t nvars);
    static FactoredRational one(std::uint32_t nvars);
    static FactoredRational from_int(std::uint32_t nvars, const Rational& value);
    /// General constructor; normalizes.
    static FactoredRational make(Polynomial num, std::vector<LinearForm> den, Rational scalar = 1);
    /// 1 / (atom_1 * ... * atom_k).
    static FactoredRational reciprocal_product(std::uint32_t nvars, std::vector<LinearForm> atoms);

    bool is_zero() const { return num_.is_zero(); }
    std::uint32_t nvars() const { return num_.nvars(); }
    const Polynomial& numerator() const { return num_; }
    const std::vector<LinearForm>& denominator() const { return den_; }
    const Rational& scalar() const { return scalar_; }

    static FactoredRational add(const FactoredRational& a, const FactoredRational& b);
    static FactoredRational mul(const FactoredRational& a, const FactoredRational& b);
    /// Exact sum by balanced pairwise reduction (deterministic).
    static FactoredRational sum(std::vector<FactoredRational> terms, std::uint32_t nvars);

    FactoredRational mul_scalar(const Rational& c) const;
    /// Divides by one more atom occurrence.
    FactoredRational div_atom(const LinearForm& atom) const;
    FactoredRational negated() const { return mul_scalar(Rational(-1)); }

    FactoredRational substitute_shift(std::uint32_t var, const LinearForm& shift) const;
    FactoredRational remap(std::uint32_t new_nvars, std::span<const std::uint32_t> var_map) const;

    /// Exact equality as rational functions. A Schwartz–Zippel pre-check over
    /// F_p (p > 2^61, at least three points, resampling on vanishing
    /// denominators) screens the pair; agreement is then confirmed by exact
    /// cross-multiplication over the stripped common denominator.
    static bool equal(const FactoredRational& a, const FactoredRational& b);

    /// Exact value at a point given per-variable rationals; throws PoleError.
    Rational eval_exact(std::span<const Rational> point) const;

    std::string str(const VarTable& vt) const;

private:
    /// Cancellation is the costly part of normalization; internal summation
    /// chains defer it to the end (the final reduced form is the same either
    /// way, since distinct atoms are pairwise coprime).
    void normalize(bool cancel = true);
    static FactoredRational make_impl(Polynomial num, std::vector<LinearForm> den, Rational scalar,
                                      bool cancel);
    static FactoredRational add_impl(const FactoredRational& a, const FactoredRational& b,
                                     bool cancel);

    Polynomial num_;
    std::vector<LinearForm> den_;
    Rational scalar_ = 1;
};

namespace pit {
/// Prime modulus for polynomial identity testing (first prime above 2^61).
inline constexpr std::uint64_t kPrime = 2305843009213693967ULL;
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b);
std::uint64_t addmod(std::uint64_t a, std::uint64_t b);
std::uint64_t submod(std::uint64_t a, std::uint64_t b);
std::uint64_t powmod(std::uint64_t b, std::uint64_t e);
std::uint64_t invmod(std::uint64_t a);
}  // namespace pit

}  // namespace flatpsi

#endif

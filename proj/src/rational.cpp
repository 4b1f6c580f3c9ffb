#include "flatpsi/rational.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace flatpsi {

namespace pit {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}
std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    if (s >= kPrime || s < a) s -= kPrime;
    return s;
}
std::uint64_t submod(std::uint64_t a, std::uint64_t b) { return addmod(a, kPrime - b); }
std::uint64_t powmod(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, b);
        b = mulmod(b, b);
        e >>= 1;
    }
    return r;
}
std::uint64_t invmod(std::uint64_t a) { return powmod(a, kPrime - 2); }

}  // namespace pit

namespace {

BigInt rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
BigInt rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

// Multiset difference a \ b over atom vectors sorted by operator<.
std::vector<LinearForm> atom_difference(const std::vector<LinearForm>& a,
                                        const std::vector<LinearForm>& b) {
    std::vector<LinearForm> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            out.push_back(a[i++]);
        else if (b[j] < a[i])
            ++j;
        else {
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    return out;
}

Polynomial times_atoms(Polynomial p, const std::vector<LinearForm>& atoms) {
    for (const LinearForm& a : atoms) p = p.mul_linear(a);
    return p;
}

std::uint64_t uniform_field_element(std::mt19937_64& rng) {
    const std::uint64_t lim = (UINT64_MAX / pit::kPrime) * pit::kPrime;
    std::uint64_t r = rng();
    while (r >= lim) r = rng();
    return r % pit::kPrime;
}

struct ModEval {
    bool pole = false;        // a denominator atom vanished; resample
    bool degenerate = false;  // scalar denominator divisible by p; skip PIT
    std::uint64_t value = 0;
};

ModEval eval_mod(const FactoredRational& r, std::span<const std::uint64_t> point) {
    ModEval out;
    BigInt qa = rat_den(r.scalar());
    std::uint64_t q = Int(qa).mod(pit::kPrime);
    if (q == 0) {
        out.degenerate = true;
        return out;
    }
    std::uint64_t acc = pit::mulmod(Int(rat_num(r.scalar())).mod(pit::kPrime), pit::invmod(q));
    acc = pit::mulmod(acc, r.numerator().eval_mod(point, pit::kPrime));
    std::uint64_t den = 1;
    for (const LinearForm& a : r.denominator()) {
        std::uint64_t v = a.eval_mod(point, pit::kPrime);
        if (v == 0) {
            out.pole = true;
            return out;
        }
        den = pit::mulmod(den, v);
    }
    out.value = pit::mulmod(acc, pit::invmod(den));
    return out;
}

}  // namespace

FactoredRational FactoredRational::zero(std::uint32_t nvars) { return FactoredRational(nvars); }

FactoredRational FactoredRational::one(std::uint32_t nvars) {
    return from_int(nvars, Rational(1));
}

FactoredRational FactoredRational::from_int(std::uint32_t nvars, const Rational& value) {
    FactoredRational r(nvars);
    if (value != 0) {
        r.num_ = Polynomial::constant(nvars, Int(1));
        r.scalar_ = value;
    }
    return r;
}

FactoredRational FactoredRational::make(Polynomial num, std::vector<LinearForm> den,
                                        Rational scalar) {
    return make_impl(std::move(num), std::move(den), std::move(scalar), true);
}

FactoredRational FactoredRational::make_impl(Polynomial num, std::vector<LinearForm> den,
                                             Rational scalar, bool cancel) {
    FactoredRational r(num.nvars());
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.scalar_ = std::move(scalar);
    r.normalize(cancel);
    return r;
}

FactoredRational FactoredRational::reciprocal_product(std::uint32_t nvars,
                                                      std::vector<LinearForm> atoms) {
    return make(Polynomial::constant(nvars, Int(1)), std::move(atoms));
}

namespace {

// Exact-safe divisibility filter shared across the atoms of one numerator.
// For each leading variable v it restricts the numerator to a univariate in
// v at a fixed random point; an atom with leading variable v can divide the
// numerator only if that univariate vanishes where the atom does. A nonzero
// value is a proof of non-divisibility; a spurious zero merely costs one
// exact division attempt.
class DivisibilityProbe {
public:
    explicit DivisibilityProbe(const Polynomial& num) : num_(num), point_(num.nvars()) {
        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
        for (auto& x : point_) x = rng() % pit::kPrime;
    }

    bool might_divide(const LinearForm& atom) {
        if (atom.term_count() == 1) return true;  // single-column scan is cheap anyway
        const std::uint32_t v = atom.leading_var();
        std::uint64_t c = 0;
        std::uint64_t rest = 0;
        for (std::size_t s = 0; s < atom.term_count(); ++s) {
            auto [w, coef] = atom.term(s);
            if (w == v)
                c = coef.mod(pit::kPrime);
            else
                rest = pit::addmod(rest, pit::mulmod(coef.mod(pit::kPrime), point_[w]));
        }
        if (c == 0) return true;
        std::uint64_t t = pit::mulmod(pit::submod(0, rest), pit::invmod(c));
        const auto& uni = restriction(v);
        std::uint64_t val = 0;  // Horner from the top exponent
        for (std::size_t k = uni.size(); k-- > 0;) val = pit::addmod(pit::mulmod(val, t), uni[k]);
        return val == 0;
    }

    void invalidate() { uni_.clear(); }  // numerator changed

private:
    const std::vector<std::uint64_t>& restriction(std::uint32_t v) {
        auto it = uni_.find(v);
        if (it != uni_.end()) return it->second;
        std::vector<std::uint64_t> r;
        for (std::size_t i = 0; i < num_.term_count(); ++i) {
            std::uint8_t e = num_.exponent(i, v);
            std::uint64_t w = num_.coef(i).mod(pit::kPrime);
            auto row = num_.mono(i);
            for (std::uint32_t x = 0; x < num_.nvars() && w != 0; ++x) {
                if (x == v) continue;
                std::uint8_t ex = row[x];
                std::uint64_t b = point_[x];
                while (ex) {
                    if (ex & 1) w = pit::mulmod(w, b);
                    b = pit::mulmod(b, b);
                    ex >>= 1;
                }
            }
            if (r.size() <= e) r.resize(e + 1, 0);
            r[e] = pit::addmod(r[e], w);
        }
        return uni_.emplace(v, std::move(r)).first->second;
    }

    const Polynomial& num_;
    std::vector<std::uint64_t> point_;
    std::map<std::uint32_t, std::vector<std::uint64_t>> uni_;
};

}  // namespace

void FactoredRational::normalize(bool cancel) {
    if (num_.is_zero() || scalar_ == 0) {
        num_ = Polynomial(num_.nvars());
        den_.clear();
        scalar_ = 1;
        return;
    }
    // Atoms carry content 1 and a positive leading coefficient; the rest
    // moves into the scalar. This makes Z[x]-divisibility against atoms
    // coincide with divisibility of rational functions.
    for (LinearForm& a : den_) {
        Int c = a.content();
        if (a.poly().coef(0).sign() < 0) c.negate();
        if (!c.is_one()) {
            a = a.divided_by_content(c);
            scalar_ /= Rational(c.to_big());
        }
    }
    std::sort(den_.begin(), den_.end());

    if (cancel && !den_.empty()) {
        // Greedy cancellation: distinct normalized atoms are pairwise
        // coprime, so one pass over the distinct atoms reaches the fixpoint.
        DivisibilityProbe probe(num_);
        std::vector<LinearForm> kept;
        kept.reserve(den_.size());
        for (std::size_t i = 0; i < den_.size();) {
            std::size_t j = i;
            while (j < den_.size() && den_[j] == den_[i]) ++j;
            std::size_t mult = j - i;
            while (mult > 0) {
                if (!probe.might_divide(den_[i])) break;
                auto q = num_.div_exact_linear(den_[i]);
                if (!q) break;
                num_ = std::move(*q);
                probe.invalidate();
                --mult;
            }
            for (std::size_t k = 0; k < mult; ++k) kept.push_back(den_[i]);
            i = j;
        }
        den_ = std::move(kept);
    }

    Int c = num_.content();
    if (num_.coef(0).sign() < 0) c.negate();
    if (!c.is_one()) {
        num_ = num_.divided_by_content(c);
        scalar_ *= Rational(c.to_big());
    }
}

FactoredRational FactoredRational::add(const FactoredRational& a, const FactoredRational& b) {
    return add_impl(a, b, true);
}

FactoredRational FactoredRational::add_impl(const FactoredRational& a, const FactoredRational& b,
                                            bool cancel) {
    if (a.nvars() != b.nvars()) throw std::invalid_argument("FactoredRational::add: nvars mismatch");
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    std::vector<LinearForm> extra_a = atom_difference(b.den_, a.den_);  // multiply into a's numerator
    std::vector<LinearForm> extra_b = atom_difference(a.den_, b.den_);
    // Union denominator = a.den ∪ extra_a.
    std::vector<LinearForm> un = a.den_;
    un.insert(un.end(), extra_a.begin(), extra_a.end());

    BigInt pa = rat_num(a.scalar_), qa = rat_den(a.scalar_);
    BigInt pb = rat_num(b.scalar_), qb = rat_den(b.scalar_);
    Polynomial na = times_atoms(a.num_, extra_a);
    na.scale_in_place(Int(pa * qb));
    Polynomial nb = times_atoms(b.num_, extra_b);
    nb.scale_in_place(Int(pb * qa));
    return make_impl(Polynomial::add(na, nb), std::move(un), Rational(1) / Rational(qa * qb),
                     cancel);
}

FactoredRational FactoredRational::mul(const FactoredRational& a, const FactoredRational& b) {
    if (a.nvars() != b.nvars()) throw std::invalid_argument("FactoredRational::mul: nvars mismatch");
    if (a.is_zero() || b.is_zero()) return zero(a.nvars());
    std::vector<LinearForm> den = a.den_;
    den.insert(den.end(), b.den_.begin(), b.den_.end());
    return make(Polynomial::mul(a.num_, b.num_), std::move(den), a.scalar_ * b.scalar_);
}

FactoredRational FactoredRational::sum(std::vector<FactoredRational> terms, std::uint32_t nvars) {
    if (terms.empty()) return zero(nvars);
    // Balanced pairwise reduction keeps intermediate numerators small and the
    // result independent of the grouping (addition is exact). Cancellation
    // runs once on the final value.
    while (terms.size() > 1) {
        std::vector<FactoredRational> next;
        next.reserve((terms.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < terms.size(); i += 2) {
            next.push_back(add_impl(terms[i], terms[i + 1], false));
            // Release consumed inputs eagerly; the tails get large.
            terms[i] = FactoredRational();
            terms[i + 1] = FactoredRational();
        }
        if (terms.size() % 2 == 1) next.push_back(std::move(terms.back()));
        terms = std::move(next);
    }
    FactoredRational out = std::move(terms.front());
    out.normalize(true);
    return out;
}

FactoredRational FactoredRational::mul_scalar(const Rational& c) const {
    if (c == 0 || is_zero()) return zero(nvars());
    FactoredRational r = *this;
    r.scalar_ *= c;
    return r;
}

FactoredRational FactoredRational::div_atom(const LinearForm& atom) const {
    if (is_zero()) return *this;
    FactoredRational r = *this;
    r.den_.push_back(atom);
    r.normalize();
    return r;
}

FactoredRational FactoredRational::substitute_shift(std::uint32_t var,
                                                    const LinearForm& shift) const {
    if (is_zero()) return *this;
    std::vector<LinearForm> den;
    den.reserve(den_.size());
    for (const LinearForm& a : den_) den.push_back(a.substitute_shift(var, shift));
    // The shift is a unimodular change of coordinates: reducedness survives
    // it, so no cancellation pass is needed.
    return make_impl(num_.substitute_shift(var, shift), std::move(den), scalar_, false);
}

FactoredRational FactoredRational::remap(std::uint32_t new_nvars,
                                         std::span<const std::uint32_t> var_map) const {
    std::vector<LinearForm> den;
    den.reserve(den_.size());
    for (const LinearForm& a : den_) den.push_back(a.remap(new_nvars, var_map));
    return make(num_.remap(new_nvars, var_map), std::move(den), scalar_);
}

bool FactoredRational::equal(const FactoredRational& a, const FactoredRational& b) {
    if (a.nvars() != b.nvars()) return false;
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    // Normal forms are unique, so identical representations decide instantly.
    if (a.scalar_ == b.scalar_ && a.den_.size() == b.den_.size() && a.num_ == b.num_ &&
        std::equal(a.den_.begin(), a.den_.end(), b.den_.begin(),
                   [](const LinearForm& x, const LinearForm& y) { return x == y; }))
        return true;

    // Schwartz–Zippel pre-check over F_p. A mismatch at a pole-free point is
    // an exact witness of inequality; three agreements hand off to the exact
    // cross-multiplication below.
    std::mt19937_64 rng(0x424242ULL);
    int checked = 0, attempts = 0;
    bool degenerate = false;
    while (checked < 3 && attempts < 64 && !degenerate) {
        ++attempts;
        std::vector<std::uint64_t> point(a.nvars());
        for (auto& x : point) x = uniform_field_element(rng);
        ModEval va = eval_mod(a, point);
        ModEval vb = eval_mod(b, point);
        if (va.degenerate || vb.degenerate) {
            degenerate = true;
            break;
        }
        if (va.pole || vb.pole) continue;  // resample, never a verdict
        if (va.value != vb.value) return false;
        ++checked;
    }

    std::vector<LinearForm> extra_a = atom_difference(b.den_, a.den_);
    std::vector<LinearForm> extra_b = atom_difference(a.den_, b.den_);
    BigInt pa = rat_num(a.scalar_), qa = rat_den(a.scalar_);
    BigInt pb = rat_num(b.scalar_), qb = rat_den(b.scalar_);
    Polynomial lhs = times_atoms(a.num_, extra_a).mul_scalar(Int(pa * qb));
    Polynomial rhs = times_atoms(b.num_, extra_b).mul_scalar(Int(pb * qa));
    return lhs == rhs;
}

Rational FactoredRational::eval_exact(std::span<const Rational> point) const {
    if (is_zero()) return Rational(0);
    Rational acc = scalar_ * num_.eval_exact(point);
    for (const LinearForm& a : den_) {
        Rational v = a.eval_exact(point);
        if (v == 0) throw PoleError("evaluation point lies on a denominator atom");
        acc /= v;
    }
    return acc;
}

std::string FactoredRational::str(const VarTable& vt) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool num_is_one = num_.is_constant() && num_.coef(0).is_one();
    if (scalar_ == -1 && !num_is_one) {
        os << "-";
    } else if (scalar_ != 1) {
        os << scalar_.str();
        if (!num_is_one) os << " * ";
    }
    if (!num_is_one) {
        bool paren = num_.term_count() > 1;
        if (paren) os << "(";
        os << num_.str(vt);
        if (paren) os << ")";
    } else if (scalar_ == 1) {
        os << "1";
    }
    if (!den_.empty()) {
        os << " / ";
        for (std::size_t i = 0; i < den_.size(); ++i) {
            if (i > 0) os << " * ";
            os << "(" << den_[i].str(vt) << ")";
        }
    }
    return os.str();
}

}  // namespace flatpsi

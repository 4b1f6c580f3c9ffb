#ifndef FLATPSI_INTEGER_HPP
#define FLATPSI_INTEGER_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <numeric>
#include <ostream>
#include <string>

namespace flatpsi {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Arbitrary-precision signed integer with an inline int64 fast path.
///
/// Values that fit in 64 bits are stored inline; anything wider spills to a
/// heap-allocated cpp_int. The representation is normalized: the wide slot is
/// engaged only when the value does not fit in int64, so equality and
/// comparisons never need to canonicalize first.
class Int {
public:
    Int() noexcept = default;
    Int(long long v) noexcept : small_(v) {}
    Int(int v) noexcept : small_(v) {}
    explicit Int(const BigInt& v) { assign_big(v); }
    explicit Int(const std::string& decimal) { assign_big(BigInt(decimal)); }

    Int(const Int& o) : small_(o.small_) {
        if (o.big_) big_ = std::make_unique<BigInt>(*o.big_);
    }
    Int(Int&&) noexcept = default;
    Int& operator=(const Int& o) {
        if (this != &o) {
            small_ = o.small_;
            big_ = o.big_ ? std::make_unique<BigInt>(*o.big_) : nullptr;
        }
        return *this;
    }
    Int& operator=(Int&&) noexcept = default;

    bool fits_int64() const noexcept { return !big_; }
    long long as_int64() const { return small_; }  // valid only when fits_int64()

    bool is_zero() const noexcept { return !big_ && small_ == 0; }
    bool is_one() const noexcept { return !big_ && small_ == 1; }
    int sign() const noexcept {
        if (big_) return big_->sign();
        return small_ < 0 ? -1 : (small_ > 0 ? 1 : 0);
    }

    BigInt to_big() const { return big_ ? *big_ : BigInt(small_); }

    Int& operator+=(const Int& o) {
        if (!big_ && !o.big_) {
            long long r;
            if (!__builtin_add_overflow(small_, o.small_, &r)) {
                small_ = r;
                return *this;
            }
        }
        assign_big(to_big() + o.to_big());
        return *this;
    }
    Int& operator-=(const Int& o) {
        if (!big_ && !o.big_) {
            long long r;
            if (!__builtin_sub_overflow(small_, o.small_, &r)) {
                small_ = r;
                return *this;
            }
        }
        assign_big(to_big() - o.to_big());
        return *this;
    }
    Int& operator*=(const Int& o) {
        if (!big_ && !o.big_) {
            long long r;
            if (!__builtin_mul_overflow(small_, o.small_, &r)) {
                small_ = r;
                return *this;
            }
        }
        assign_big(to_big() * o.to_big());
        return *this;
    }

    friend Int operator+(Int a, const Int& b) { return a += b, std::move(a); }
    friend Int operator-(Int a, const Int& b) { return a -= b, std::move(a); }
    friend Int operator*(Int a, const Int& b) { return a *= b, std::move(a); }

    Int operator-() const {
        if (!big_ && small_ != INT64_MIN) return Int(-small_);
        Int r;
        r.assign_big(-to_big());
        return r;
    }
    void negate() {
        if (!big_ && small_ != INT64_MIN) {
            small_ = -small_;
            return;
        }
        assign_big(-to_big());
    }

    Int abs() const { return sign() < 0 ? -*this : *this; }

    static int cmp(const Int& a, const Int& b) {
        if (!a.big_ && !b.big_)
            return a.small_ < b.small_ ? -1 : (a.small_ > b.small_ ? 1 : 0);
        BigInt x = a.to_big(), y = b.to_big();
        return x < y ? -1 : (x > y ? 1 : 0);
    }
    friend bool operator==(const Int& a, const Int& b) {
        if (!a.big_ && !b.big_) return a.small_ == b.small_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;  // normalization: big slot ⇒ outside int64 range
    }
    friend bool operator!=(const Int& a, const Int& b) { return !(a == b); }
    friend bool operator<(const Int& a, const Int& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Int& a, const Int& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Int& a, const Int& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Int& a, const Int& b) { return cmp(a, b) >= 0; }

    static Int gcd(const Int& a, const Int& b) {
        if (!a.big_ && !b.big_) {
            unsigned long long x = uabs(a.small_), y = uabs(b.small_);
            unsigned long long g = std::gcd(x, y);
            if (g <= static_cast<unsigned long long>(INT64_MAX)) return Int(static_cast<long long>(g));
        }
        Int r;
        r.assign_big(boost::multiprecision::gcd(a.to_big(), b.to_big()));
        return r;
    }

    /// Quotient of *this by d; requires d != 0 and d | *this.
    Int exact_div(const Int& d) const {
        if (!big_ && !d.big_ && !(small_ == INT64_MIN && d.small_ == -1)) {
            if (small_ % d.small_ != 0) throw std::domain_error("Int::exact_div: not divisible");
            return Int(small_ / d.small_);
        }
        BigInt q, r;
        boost::multiprecision::divide_qr(to_big(), d.to_big(), q, r);
        if (r != 0) throw std::domain_error("Int::exact_div: not divisible");
        Int out;
        out.assign_big(q);
        return out;
    }

    /// True iff d divides *this exactly (d != 0).
    bool divisible_by(const Int& d) const {
        if (!big_ && !d.big_ && !(small_ == INT64_MIN && d.small_ == -1))
            return small_ % d.small_ == 0;
        return to_big() % d.to_big() == 0;
    }

    /// Representative of *this mod p in [0, p); requires 0 < p < 2^63.
    std::uint64_t mod(std::uint64_t p) const {
        if (!big_) {
            long long r = small_ % static_cast<long long>(p);
            if (r < 0) r += static_cast<long long>(p);
            return static_cast<std::uint64_t>(r);
        }
        BigInt r = *big_ % BigInt(p);
        if (r < 0) r += BigInt(p);
        return r.convert_to<std::uint64_t>();
    }

    std::string str() const { return big_ ? big_->str() : std::to_string(small_); }
    friend std::ostream& operator<<(std::ostream& os, const Int& v) { return os << v.str(); }

private:
    static unsigned long long uabs(long long v) {
        return v < 0 ? 0ULL - static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
    }

    void assign_big(const BigInt& v) {
        static const BigInt kMin(INT64_MIN), kMax(INT64_MAX);
        if (v >= kMin && v <= kMax) {
            small_ = v.convert_to<long long>();
            big_.reset();
        } else {
            if (big_)
                *big_ = v;
            else
                big_ = std::make_unique<BigInt>(v);
            small_ = 0;
        }
    }

    long long small_ = 0;
    std::unique_ptr<BigInt> big_;
};

}  // namespace flatpsi

#endif

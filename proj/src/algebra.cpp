#include "flatpsi/algebra.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace flatpsi {

// Exponent rows are padded to a multiple of 8 bytes (pad always zero), so the
// graded-lex tie-break runs on byteswapped 64-bit words: byte 0 (= X1) is the
// most significant, matching the print order.

namespace {

inline std::uint64_t load_be(const std::uint8_t* p) {
    std::uint64_t w;
    std::memcpy(&w, p, 8);
    return __builtin_bswap64(w);
}

inline int row_cmp(const std::uint8_t* a, const std::uint8_t* b, std::uint32_t words) {
    for (std::uint32_t w = 0; w < words; ++w) {
        std::uint64_t x = load_be(a + 8 * w), y = load_be(b + 8 * w);
        if (x != y) return x > y ? 1 : -1;
    }
    return 0;
}

inline int mono_cmp(std::uint32_t dega, const std::uint8_t* a, std::uint32_t degb,
                    const std::uint8_t* b, std::uint32_t words) {
    if (dega != degb) return dega > degb ? 1 : -1;
    return row_cmp(a, b, words);
}

std::uint64_t row_hash(const std::uint8_t* row, std::uint32_t words) {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint32_t w = 0; w < words; ++w) {
        std::uint64_t x;
        std::memcpy(&x, row + 8 * w, 8);
        h ^= x;
        h *= 1099511628211ULL;
    }
    return h;
}

// Open-addressing accumulator for general products and substitutions.
class Accum {
public:
    Accum(std::uint32_t stride, std::size_t expected) : stride_(stride), words_(stride / 8) {
        std::size_t cap = 16;
        while (cap < expected * 2) cap <<= 1;
        table_.assign(cap, 0);
        mask_ = cap - 1;
    }

    void add(const std::uint8_t* row, std::uint32_t deg, Int c) {
        if (c.is_zero()) return;
        std::size_t pos = row_hash(row, words_) & mask_;
        for (;;) {
            std::uint32_t slot = table_[pos];
            if (slot == 0) {
                table_[pos] = static_cast<std::uint32_t>(coefs_.size()) + 1;
                rows_.insert(rows_.end(), row, row + stride_);
                degs_.push_back(static_cast<std::uint16_t>(deg));
                coefs_.push_back(std::move(c));
                if (coefs_.size() * 2 > mask_) grow();
                return;
            }
            std::size_t idx = slot - 1;
            if (degs_[idx] == deg && row_cmp(rows_.data() + idx * stride_, row, words_) == 0) {
                coefs_[idx] += c;
                return;
            }
            pos = (pos + 1) & mask_;
        }
    }

    // Sorts descending, drops zeros, hands the arrays to a Polynomial.
    Polynomial finish(std::uint32_t nvars) {
        const std::size_t n = coefs_.size();
        std::vector<std::uint32_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
            return mono_cmp(degs_[a], rows_.data() + a * stride_, degs_[b],
                            rows_.data() + b * stride_, words_) > 0;
        });
        ByteVec exps;
        DegVec degs;
        std::vector<Int> coefs;
        exps.reserve(n * stride_);
        degs.reserve(n);
        coefs.reserve(n);
        for (std::uint32_t i : idx) {
            if (coefs_[i].is_zero()) continue;
            exps.insert(exps.end(), rows_.begin() + std::size_t(i) * stride_,
                        rows_.begin() + std::size_t(i + 1) * stride_);
            degs.push_back(degs_[i]);
            coefs.push_back(std::move(coefs_[i]));
        }
        return Polynomial::adopt(nvars, std::move(exps), std::move(degs), std::move(coefs));
    }

private:
    void grow() {
        std::size_t cap = (mask_ + 1) * 2;
        std::vector<std::uint32_t> t(cap, 0);
        std::size_t m = cap - 1;
        for (std::size_t i = 0; i < coefs_.size(); ++i) {
            std::size_t pos = row_hash(rows_.data() + i * stride_, words_) & m;
            while (t[pos] != 0) pos = (pos + 1) & m;
            t[pos] = static_cast<std::uint32_t>(i) + 1;
        }
        table_ = std::move(t);
        mask_ = m;
    }

    std::uint32_t stride_, words_;
    ByteVec rows_;
    DegVec degs_;
    std::vector<Int> coefs_;
    std::vector<std::uint32_t> table_;
    std::size_t mask_ = 0;
};

}  // namespace

std::string VarTable::name(std::uint32_t flat_index) const {
    if (flat_index < vertex_count_) return "X" + std::to_string(flat_index + 1);
    return "Y[" + edge_ids_[flat_index - vertex_count_] + "]";
}

Polynomial Polynomial::adopt(std::uint32_t nvars, ByteVec exps, DegVec degs,
                             std::vector<Int> coefs) {
    Polynomial p(nvars);
    p.exps_ = std::move(exps);
    p.degs_ = std::move(degs);
    p.coefs_ = std::move(coefs);
    return p;
}

void Polynomial::push_term(std::span<const std::uint8_t> mono, std::uint32_t deg, Int c) {
    const std::uint32_t st = stride();
    std::size_t at = exps_.size();
    exps_.resize(at + st);
    std::memset(exps_.data() + at, 0, st);
    std::memcpy(exps_.data() + at, mono.data(), std::min<std::size_t>(mono.size(), st));
    degs_.push_back(static_cast<std::uint16_t>(deg));
    coefs_.push_back(std::move(c));
}

void Polynomial::normalize_sort() {
    const std::size_t n = coefs_.size();
    const std::uint32_t st = stride(), words = st / 8;
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
        return mono_cmp(degs_[a], exps_.data() + std::size_t(a) * st, degs_[b],
                        exps_.data() + std::size_t(b) * st, words) > 0;
    });
    Polynomial out(nvars_);
    out.exps_.reserve(exps_.size());
    out.degs_.reserve(n);
    out.coefs_.reserve(n);
    for (std::size_t k = 0; k < n;) {
        std::uint32_t i = idx[k];
        Int c = std::move(coefs_[i]);
        std::size_t j = k + 1;
        while (j < n && mono_cmp(degs_[i], exps_.data() + std::size_t(i) * st, degs_[idx[j]],
                                 exps_.data() + std::size_t(idx[j]) * st, words) == 0) {
            c += coefs_[idx[j]];
            ++j;
        }
        if (!c.is_zero())
            out.push_term({exps_.data() + std::size_t(i) * st, st}, degs_[i], std::move(c));
        k = j;
    }
    *this = std::move(out);
}

Polynomial Polynomial::constant(std::uint32_t nvars, Int c) {
    Polynomial p(nvars);
    if (!c.is_zero()) {
        std::vector<std::uint8_t> row(p.stride(), 0);
        p.push_term(row, 0, std::move(c));
    }
    return p;
}

Polynomial Polynomial::variable(std::uint32_t nvars, std::uint32_t var) {
    if (var >= nvars) throw std::invalid_argument("Polynomial::variable: index out of range");
    Polynomial p(nvars);
    std::vector<std::uint8_t> row(p.stride(), 0);
    row[var] = 1;
    p.push_term(row, 1, Int(1));
    return p;
}

Polynomial Polynomial::from_terms(std::uint32_t nvars,
                                  std::vector<std::pair<std::vector<std::uint8_t>, Int>> terms) {
    Polynomial p(nvars);
    for (auto& [row, c] : terms) {
        if (row.size() != nvars) throw std::invalid_argument("from_terms: bad row width");
        std::uint32_t deg = 0;
        for (std::uint8_t e : row) deg += e;
        row.resize(p.stride(), 0);
        p.push_term(row, deg, std::move(c));
    }
    p.normalize_sort();
    return p;
}

Polynomial Polynomial::add(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("Polynomial::add: nvars mismatch");
    const std::uint32_t st = a.stride(), words = st / 8;
    const std::size_t na = a.coefs_.size(), nb = b.coefs_.size();
    Polynomial out(a.nvars_);
    out.exps_.resize((na + nb) * st);
    out.degs_.resize(na + nb);
    out.coefs_.reserve(na + nb);
    std::uint8_t* we = out.exps_.data();
    std::uint16_t* wd = out.degs_.data();
    std::size_t w = 0;
    const std::uint8_t* ra = a.exps_.data();
    const std::uint8_t* rb = b.exps_.data();
    std::size_t i = 0, j = 0;
    while (i < na && j < nb) {
        int c = mono_cmp(a.degs_[i], ra + i * st, b.degs_[j], rb + j * st, words);
        if (c > 0) {
            std::memcpy(we + w * st, ra + i * st, st);
            wd[w] = a.degs_[i];
            out.coefs_.push_back(a.coefs_[i]);
            ++w;
            ++i;
        } else if (c < 0) {
            std::memcpy(we + w * st, rb + j * st, st);
            wd[w] = b.degs_[j];
            out.coefs_.push_back(b.coefs_[j]);
            ++w;
            ++j;
        } else {
            Int s = a.coefs_[i] + b.coefs_[j];
            if (!s.is_zero()) {
                std::memcpy(we + w * st, ra + i * st, st);
                wd[w] = a.degs_[i];
                out.coefs_.push_back(std::move(s));
                ++w;
            }
            ++i;
            ++j;
        }
    }
    for (; i < na; ++i, ++w) {
        std::memcpy(we + w * st, ra + i * st, st);
        wd[w] = a.degs_[i];
        out.coefs_.push_back(a.coefs_[i]);
    }
    for (; j < nb; ++j, ++w) {
        std::memcpy(we + w * st, rb + j * st, st);
        wd[w] = b.degs_[j];
        out.coefs_.push_back(b.coefs_[j]);
    }
    out.exps_.resize(w * st);
    out.degs_.resize(w);
    return out;
}

Polynomial Polynomial::sub(const Polynomial& a, const Polynomial& b) { return add(a, b.negated()); }

Polynomial Polynomial::negated() const {
    Polynomial out = *this;
    for (Int& c : out.coefs_) c.negate();
    return out;
}

Polynomial Polynomial::mul_scalar(const Int& c) const {
    if (c.is_zero()) return Polynomial(nvars_);
    Polynomial out = *this;
    out.scale_in_place(c);
    return out;
}

void Polynomial::scale_in_place(const Int& c) {
    if (c.is_zero()) {
        *this = Polynomial(nvars_);
        return;
    }
    if (c.is_one()) return;
    for (Int& x : coefs_) x *= c;
}

Polynomial Polynomial::mul_term(std::span<const std::uint8_t> mono, const Int& c) const {
    if (c.is_zero()) return Polynomial(nvars_);
    const std::uint32_t st = stride();
    Polynomial out = *this;
    std::uint32_t dm = 0;
    for (std::uint8_t e : mono) dm += e;
    for (std::size_t i = 0; i < out.coefs_.size(); ++i) {
        std::uint8_t* row = out.exps_.data() + i * st;
        for (std::size_t v = 0; v < mono.size(); ++v) {
            unsigned e = row[v] + mono[v];
            if (e > 255) throw std::overflow_error("polynomial exponent overflow");
            row[v] = static_cast<std::uint8_t>(e);
        }
        out.degs_[i] = static_cast<std::uint16_t>(out.degs_[i] + dm);
        out.coefs_[i] *= c;
    }
    return out;
}

Polynomial Polynomial::shifted_by_var(std::uint32_t var, const Int& c) const {
    const std::uint32_t st = stride();
    Polynomial out = *this;
    for (std::size_t i = 0; i < out.coefs_.size(); ++i) {
        std::uint8_t& e = out.exps_[i * st + var];
        if (e == 255) throw std::overflow_error("polynomial exponent overflow");
        ++e;
        ++out.degs_[i];
        out.coefs_[i] *= c;
    }
    return out;
}

// p * (cu*x_u + cv*x_v) in one merge pass over p; both streams inherit p's
// descending order under a single-variable shift.
Polynomial Polynomial::shifted_pair(std::uint32_t u, const Int& cu, std::uint32_t v,
                                    const Int& cv) const {
    const std::uint32_t st = stride(), words = st / 8;
    const std::size_t n = coefs_.size();
    Polynomial out(nvars_);
    out.exps_.resize(2 * n * st);
    out.degs_.resize(2 * n);
    out.coefs_.reserve(2 * n);
    std::uint8_t* we = out.exps_.data();
    std::uint16_t* wd = out.degs_.data();
    std::size_t w = 0;

    const std::uint8_t* rows = exps_.data();
    std::uint8_t bu[64], bv[64];
    auto load = [&](std::uint8_t* buf, std::size_t i, std::uint32_t var) {
        std::memcpy(buf, rows + i * st, st);
        if (buf[var] == 255) throw std::overflow_error("polynomial exponent overflow");
        ++buf[var];
    };
    std::size_t i = 0, j = 0;
    load(bu, 0, u);
    load(bv, 0, v);
    while (i < n && j < n) {
        int c = mono_cmp(degs_[i] + 1, bu, degs_[j] + 1, bv, words);
        if (c > 0) {
            std::memcpy(we + w * st, bu, st);
            wd[w] = static_cast<std::uint16_t>(degs_[i] + 1);
            out.coefs_.push_back(coefs_[i] * cu);
            ++w;
            if (++i < n) load(bu, i, u);
        } else if (c < 0) {
            std::memcpy(we + w * st, bv, st);
            wd[w] = static_cast<std::uint16_t>(degs_[j] + 1);
            out.coefs_.push_back(coefs_[j] * cv);
            ++w;
            if (++j < n) load(bv, j, v);
        } else {
            Int s = coefs_[i] * cu + coefs_[j] * cv;
            if (!s.is_zero()) {
                std::memcpy(we + w * st, bu, st);
                wd[w] = static_cast<std::uint16_t>(degs_[i] + 1);
                out.coefs_.push_back(std::move(s));
                ++w;
            }
            if (++i < n) load(bu, i, u);
            if (++j < n) load(bv, j, v);
        }
    }
    for (; i < n; ++i) {
        load(bu, i, u);
        std::memcpy(we + w * st, bu, st);
        wd[w] = static_cast<std::uint16_t>(degs_[i] + 1);
        out.coefs_.push_back(coefs_[i] * cu);
        ++w;
    }
    for (; j < n; ++j) {
        load(bv, j, v);
        std::memcpy(we + w * st, bv, st);
        wd[w] = static_cast<std::uint16_t>(degs_[j] + 1);
        out.coefs_.push_back(coefs_[j] * cv);
        ++w;
    }
    out.exps_.resize(w * st);
    out.degs_.resize(w);
    return out;
}

Polynomial Polynomial::mul_linear_range(const std::uint32_t* vars, const Int* cs, std::size_t lo,
                                        std::size_t hi) const {
    const std::size_t k = hi - lo;
    if (k == 1) return shifted_by_var(vars[lo], cs[lo]);
    if (k == 2) return shifted_pair(vars[lo], cs[lo], vars[lo + 1], cs[lo + 1]);

    // Single-pass k-way merge of the shifted streams; one output allocation.
    const std::uint32_t st = stride(), words = st / 8;
    const std::size_t n = coefs_.size();
    const std::uint8_t* rows = exps_.data();
    std::size_t idx[64];
    std::uint16_t cdeg[64];
    std::uint8_t cand[64 * 64];
    auto load = [&](std::size_t s) {
        std::size_t i = idx[s];
        std::uint8_t* dst = cand + s * st;
        std::memcpy(dst, rows + i * st, st);
        std::uint8_t& e = dst[vars[lo + s]];
        if (e == 255) throw std::overflow_error("polynomial exponent overflow");
        ++e;
        cdeg[s] = static_cast<std::uint16_t>(degs_[i] + 1);
    };
    for (std::size_t s = 0; s < k; ++s) {
        idx[s] = 0;
        load(s);
    }

    Polynomial out(nvars_);
    std::size_t cap = n + n / 2 + 8;
    out.exps_.resize(cap * st);
    out.degs_.resize(cap);
    out.coefs_.reserve(cap);
    std::size_t w = 0;
    std::size_t active = k;
    while (active > 0) {
        std::size_t best = SIZE_MAX;
        for (std::size_t s = 0; s < k; ++s) {
            if (idx[s] >= n) continue;
            if (best == SIZE_MAX ||
                mono_cmp(cdeg[s], cand + s * st, cdeg[best], cand + best * st, words) > 0)
                best = s;
        }
        Int c = coefs_[idx[best]] * cs[lo + best];
        const std::uint16_t bd = cdeg[best];
        const std::uint8_t* brow = cand + best * st;
        for (std::size_t s = 0; s < k; ++s) {
            if (s == best || idx[s] >= n) continue;
            if (cdeg[s] == bd && row_cmp(cand + s * st, brow, words) == 0) {
                c += coefs_[idx[s]] * cs[lo + s];
                if (++idx[s] < n)
                    load(s);
                else
                    --active;
            }
        }
        if (!c.is_zero()) {
            if (w == cap) {
                cap += cap / 2;
                out.exps_.resize(cap * st);
                out.degs_.resize(cap);
            }
            std::memcpy(out.exps_.data() + w * st, brow, st);
            out.degs_[w] = bd;
            out.coefs_.push_back(std::move(c));
            ++w;
        }
        if (++idx[best] < n)
            load(best);
        else
            --active;
    }
    out.exps_.resize(w * st);
    out.degs_.resize(w);
    return out;
}

Polynomial Polynomial::mul_linear(const LinearForm& f) const {
    if (f.nvars() != nvars_) throw std::invalid_argument("mul_linear: nvars mismatch");
    if (is_zero()) return Polynomial(nvars_);
    // Shifting by one variable preserves the term order, so the product is a
    // k-way merge of shifted copies of this polynomial.
    const std::size_t k = f.term_count();
    std::uint32_t vars[64];
    Int cs[64];
    for (std::size_t s = 0; s < k; ++s) {
        auto [v, c] = f.term(s);
        vars[s] = v;
        cs[s] = std::move(c);
    }
    return mul_linear_range(vars, cs, 0, k);
}

Polynomial Polynomial::mul(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("Polynomial::mul: nvars mismatch");
    if (a.is_zero() || b.is_zero()) return Polynomial(a.nvars_);
    const std::uint32_t st = a.stride();
    const Polynomial& big = a.term_count() >= b.term_count() ? a : b;
    const Polynomial& small = a.term_count() >= b.term_count() ? b : a;
    Accum acc(st, big.term_count() * 2);
    std::vector<std::uint8_t> row(st);
    for (std::size_t j = 0; j < small.term_count(); ++j) {
        const std::uint8_t* mj = small.exps_.data() + j * st;
        for (std::size_t i = 0; i < big.term_count(); ++i) {
            const std::uint8_t* mi = big.exps_.data() + i * st;
            for (std::uint32_t v = 0; v < a.nvars_; ++v) {
                unsigned e = mi[v] + mj[v];
                if (e > 255) throw std::overflow_error("polynomial exponent overflow");
                row[v] = static_cast<std::uint8_t>(e);
            }
            acc.add(row.data(), big.degs_[i] + small.degs_[j], big.coefs_[i] * small.coefs_[j]);
        }
    }
    return acc.finish(a.nvars_);
}

std::optional<Polynomial> Polynomial::div_exact_var(std::uint32_t var) const {
    Polynomial out = *this;
    const std::uint32_t st = stride();
    for (std::size_t i = 0; i < out.coefs_.size(); ++i) {
        std::uint8_t& e = out.exps_[i * st + var];
        if (e == 0) return std::nullopt;
        --e;
        --out.degs_[i];
    }
    return out;
}

std::optional<Polynomial> Polynomial::div_exact_linear(const LinearForm& f) const {
    if (f.nvars() != nvars_) throw std::invalid_argument("div_exact_linear: nvars mismatch");
    if (is_zero()) return Polynomial(nvars_);
    if (f.term_count() == 1) {
        auto [v, c] = f.term(0);
        auto q = div_exact_var(v);
        if (!q) return std::nullopt;
        if (c.is_one()) return q;
        for (Int& x : q->coefs_) {
            if (!x.divisible_by(c)) return std::nullopt;
            x = x.exact_div(c);
        }
        return q;
    }

    const std::uint32_t v = f.leading_var();
    const std::uint32_t st = stride();
    Int lead_c;
    Polynomial rest(nvars_);  // f minus its leading term
    for (std::size_t s = 0; s < f.term_count(); ++s) {
        auto [w, c] = f.term(s);
        if (w == v)
            lead_c = std::move(c);
        else
            rest = add(rest, variable(nvars_, w).mul_scalar(c));
    }

    // Bucket by the exponent of v; each bucket keeps descending order.
    std::uint32_t maxk = 0;
    for (std::size_t i = 0; i < coefs_.size(); ++i)
        maxk = std::max<std::uint32_t>(maxk, exps_[i * st + v]);
    if (maxk == 0) return std::nullopt;
    std::vector<Polynomial> bucket(maxk + 1, Polynomial(nvars_));
    std::vector<std::uint8_t> row(st);
    for (std::size_t i = 0; i < coefs_.size(); ++i) {
        std::memcpy(row.data(), exps_.data() + i * st, st);
        std::uint8_t e = row[v];
        row[v] = 0;
        bucket[e].push_term(row, degs_[i] - e, coefs_[i]);
    }

    auto div_coefs = [&](Polynomial p) -> std::optional<Polynomial> {
        if (lead_c.is_one()) return p;
        for (Int& c : p.coefs_) {
            if (!c.divisible_by(lead_c)) return std::nullopt;
            c = c.exact_div(lead_c);
        }
        return p;
    };

    // Synthetic division: with p = sum_k p_k v^k and f = lead_c*v + rest,
    // q_{K-1} = p_K / lead_c and q_{k-1} = (p_k - q_k * rest) / lead_c;
    // the k = 0 layer must come out exactly zero.
    std::vector<Polynomial> q(maxk, Polynomial(nvars_));
    auto top = div_coefs(bucket[maxk]);
    if (!top) return std::nullopt;
    q[maxk - 1] = std::move(*top);
    LinearForm rest_form = rest.is_zero() ? LinearForm() : LinearForm(rest);
    for (std::uint32_t k = maxk - 1; k >= 1; --k) {
        Polynomial t = rest.is_zero() ? bucket[k] : sub(bucket[k], q[k].mul_linear(rest_form));
        auto qk = div_coefs(std::move(t));
        if (!qk) return std::nullopt;
        q[k - 1] = std::move(*qk);
    }
    Polynomial tail = rest.is_zero() ? bucket[0] : sub(bucket[0], q[0].mul_linear(rest_form));
    if (!tail.is_zero()) return std::nullopt;

    Accum acc(st, coefs_.size() + 1);
    for (std::uint32_t k = 0; k < maxk; ++k) {
        const Polynomial& qk = q[k];
        for (std::size_t i = 0; i < qk.coefs_.size(); ++i) {
            std::memcpy(row.data(), qk.exps_.data() + i * st, st);
            row[v] = static_cast<std::uint8_t>(row[v] + k);
            acc.add(row.data(), qk.degs_[i] + k, qk.coefs_[i]);
        }
    }
    return acc.finish(nvars_);
}

Polynomial Polynomial::substitute_shift(std::uint32_t var, const LinearForm& shift) const {
    if (shift.nvars() != nvars_) throw std::invalid_argument("substitute_shift: nvars mismatch");
    const std::uint32_t st = stride();
    std::uint32_t maxk = 0;
    for (std::size_t i = 0; i < coefs_.size(); ++i)
        maxk = std::max<std::uint32_t>(maxk, exps_[i * st + var]);
    if (maxk == 0) return *this;

    std::vector<Polynomial> bucket(maxk + 1, Polynomial(nvars_));
    std::vector<std::uint8_t> row(st);
    for (std::size_t i = 0; i < coefs_.size(); ++i) {
        std::memcpy(row.data(), exps_.data() + i * st, st);
        std::uint8_t e = row[var];
        row[var] = 0;
        bucket[e].push_term(row, degs_[i] - e, coefs_[i]);
    }

    Polynomial base = add(variable(nvars_, var), shift.poly());
    std::vector<Polynomial> pw(maxk + 1, Polynomial(nvars_));
    pw[0] = constant(nvars_, Int(1));
    for (std::uint32_t k = 1; k <= maxk; ++k)
        pw[k] = base.is_zero() ? Polynomial(nvars_) : mul(pw[k - 1], base);

    Polynomial out = bucket[0];
    for (std::uint32_t k = 1; k <= maxk; ++k) {
        if (bucket[k].is_zero()) continue;
        out = add(out, mul(bucket[k], pw[k]));
    }
    return out;
}

Polynomial Polynomial::remap(std::uint32_t new_nvars, std::span<const std::uint32_t> var_map) const {
    if (var_map.size() != nvars_) throw std::invalid_argument("remap: map size mismatch");
    Polynomial out(new_nvars);
    const std::uint32_t st = stride();
    std::vector<std::uint8_t> row(out.stride());
    for (std::size_t i = 0; i < coefs_.size(); ++i) {
        std::fill(row.begin(), row.end(), 0);
        for (std::uint32_t v = 0; v < nvars_; ++v) {
            std::uint8_t e = exps_[i * st + v];
            if (e == 0) continue;
            if (var_map[v] >= new_nvars) throw std::invalid_argument("remap: target out of range");
            row[var_map[v]] = static_cast<std::uint8_t>(row[var_map[v]] + e);
        }
        out.push_term(row, degs_[i], coefs_[i]);
    }
    out.normalize_sort();
    return out;
}

Int Polynomial::content() const {
    Int g(0);
    for (const Int& c : coefs_) {
        g = Int::gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

Polynomial Polynomial::divided_by_content(const Int& c) const {
    if (c.is_one()) return *this;
    Polynomial out = *this;
    for (Int& x : out.coefs_) x = x.exact_div(c);
    return out;
}

std::uint64_t Polynomial::eval_mod(std::span<const std::uint64_t> point, std::uint64_t p) const {
    auto mulmod = [p](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    };
    const std::uint32_t st = stride();
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < coefs_.size(); ++i) {
        std::uint64_t t = coefs_[i].mod(p);
        for (std::uint32_t v = 0; v < nvars_ && t != 0; ++v) {
            std::uint8_t e = exps_[i * st + v];
            std::uint64_t b = point[v];
            while (e) {
                if (e & 1) t = mulmod(t, b);
                b = mulmod(b, b);
                e >>= 1;
            }
        }
        acc = (acc + t) % p;
    }
    return acc;
}

Rational Polynomial::eval_exact(std::span<const Rational> point) const {
    const std::uint32_t st = stride();
    Rational acc = 0;
    for (std::size_t i = 0; i < coefs_.size(); ++i) {
        Rational t(coefs_[i].to_big());
        for (std::uint32_t v = 0; v < nvars_; ++v) {
            std::uint8_t e = exps_[i * st + v];
            for (std::uint8_t k = 0; k < e; ++k) t *= point[v];
        }
        acc += t;
    }
    return acc;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_ || a.coefs_.size() != b.coefs_.size()) return false;
    if (a.degs_ != b.degs_ || a.exps_ != b.exps_) return false;
    for (std::size_t i = 0; i < a.coefs_.size(); ++i)
        if (a.coefs_[i] != b.coefs_[i]) return false;
    return true;
}

int Polynomial::compare(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_ ? -1 : 1;
    const std::uint32_t st = a.stride(), words = st / 8;
    const std::size_t n = std::min(a.coefs_.size(), b.coefs_.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = mono_cmp(a.degs_[i], a.exps_.data() + i * st, b.degs_[i],
                         b.exps_.data() + i * st, words);
        if (c != 0) return c;
        c = Int::cmp(a.coefs_[i], b.coefs_[i]);
        if (c != 0) return c;
    }
    if (a.coefs_.size() != b.coefs_.size()) return a.coefs_.size() < b.coefs_.size() ? -1 : 1;
    return 0;
}

std::string Polynomial::str(const VarTable& vt) const {
    if (is_zero()) return "0";
    const std::uint32_t st = stride();
    std::ostringstream os;
    for (std::size_t i = 0; i < coefs_.size(); ++i) {
        const Int& c = coefs_[i];
        bool neg = c.sign() < 0;
        if (i == 0) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        Int a = c.abs();
        bool need_coef = !a.is_one() || degs_[i] == 0;
        if (need_coef) os << a.str();
        bool printed = need_coef;
        for (std::uint32_t v = 0; v < nvars_; ++v) {
            std::uint8_t e = exps_[i * st + v];
            if (e == 0) continue;
            if (printed) os << "*";
            os << vt.name(v);
            if (e > 1) os << "^" << static_cast<unsigned>(e);
            printed = true;
        }
    }
    return os.str();
}

LinearForm::LinearForm(std::uint32_t nvars, std::vector<std::pair<std::uint32_t, Int>> terms) {
    std::vector<std::pair<std::vector<std::uint8_t>, Int>> rows;
    rows.reserve(terms.size());
    for (auto& [v, c] : terms) {
        if (v >= nvars) throw std::invalid_argument("LinearForm: variable out of range");
        std::vector<std::uint8_t> row(nvars, 0);
        row[v] = 1;
        rows.emplace_back(std::move(row), std::move(c));
    }
    poly_ = Polynomial::from_terms(nvars, std::move(rows));
    if (poly_.is_zero()) throw std::invalid_argument("LinearForm: zero form");
}

LinearForm::LinearForm(Polynomial p) : poly_(std::move(p)) {
    if (poly_.is_zero()) throw std::invalid_argument("LinearForm: zero form");
    for (std::size_t i = 0; i < poly_.term_count(); ++i)
        if (poly_.deg(i) != 1) throw std::invalid_argument("LinearForm: not homogeneous degree 1");
}

std::pair<std::uint32_t, Int> LinearForm::term(std::size_t i) const {
    auto row = poly_.mono(i);
    for (std::uint32_t v = 0; v < poly_.nvars(); ++v)
        if (row[v] != 0) return {v, poly_.coef(i)};
    throw std::logic_error("LinearForm::term: constant term present");
}

LinearForm LinearForm::substitute_shift(std::uint32_t var, const LinearForm& shift) const {
    return LinearForm(poly_.substitute_shift(var, shift));
}

LinearForm LinearForm::remap(std::uint32_t new_nvars, std::span<const std::uint32_t> var_map) const {
    return LinearForm(poly_.remap(new_nvars, var_map));
}

}  // namespace flatpsi

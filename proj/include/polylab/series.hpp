// SPDX-License-Identifier: Apache-2.0
#pragma once

// Truncated multivariate power series with exact rational coefficients.
// Every variable has its own degree cap; products drop terms beyond the caps.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polylab/errors.hpp"

namespace polylab {

inline constexpr std::uint64_t kSeriesCap = 10'000'000;

class TruncatedSeries {
public:
    using Exps = std::vector<unsigned>;

    TruncatedSeries() = default;
    explicit TruncatedSeries(Exps caps) : caps_(std::move(caps)) {
        std::uint64_t size = 1;
        strides_.resize(caps_.size());
        for (std::size_t v = 0; v < caps_.size(); ++v) {
            strides_[v] = size;
            size *= static_cast<std::uint64_t>(caps_[v]) + 1;
            if (size > kSeriesCap)
                throw ResourceCapExceeded("series with more than 10^7 admissible exponents");
        }
        coef_.assign(size, mpq_class(0));
    }

    static TruncatedSeries constant(const Exps& caps, const mpq_class& c) {
        TruncatedSeries s(caps);
        s.coef_[0] = c;
        return s;
    }
    static TruncatedSeries monomial(const Exps& caps, const Exps& exps, const mpq_class& c = 1) {
        TruncatedSeries s(caps);
        if (exps.size() != caps.size()) throw InvalidArgument("monomial arity mismatch");
        if (s.admissible(exps)) s.coef_[s.index(exps)] = c;
        return s;
    }
    static TruncatedSeries variable(const Exps& caps, std::size_t v, unsigned power = 1) {
        Exps e(caps.size(), 0);
        e.at(v) = power;
        return monomial(caps, e);
    }

    const Exps& caps() const { return caps_; }
    std::size_t arity() const { return caps_.size(); }
    std::uint64_t size() const { return coef_.size(); }

    bool admissible(const Exps& e) const {
        for (std::size_t v = 0; v < caps_.size(); ++v)
            if (e[v] > caps_[v]) return false;
        return true;
    }
    mpq_class coeff(const Exps& e) const {
        if (e.size() != caps_.size()) throw InvalidArgument("exponent arity mismatch");
        return admissible(e) ? coef_[index(e)] : mpq_class(0);
    }
    void add_term(const Exps& e, const mpq_class& c) {
        if (e.size() != caps_.size()) throw InvalidArgument("exponent arity mismatch");
        if (!admissible(e)) return;
        mpq_class& slot = coef_[index(e)];
        slot += c;
    }
    const mpq_class& constant_term() const { return coef_.at(0); }
    bool is_zero() const {
        for (const auto& c : coef_)
            if (c != 0) return false;
        return true;
    }

    std::uint64_t index(const Exps& e) const {
        std::uint64_t idx = 0;
        for (std::size_t v = 0; v < caps_.size(); ++v) idx += e[v] * strides_[v];
        return idx;
    }
    Exps exps_of(std::uint64_t idx) const {
        Exps e(caps_.size());
        for (std::size_t v = 0; v < caps_.size(); ++v) e[v] = static_cast<unsigned>(idx / strides_[v] % (caps_[v] + 1));
        return e;
    }

    /// Nonzero terms as (index, exponents).
    std::vector<std::pair<std::uint64_t, Exps>> support() const {
        std::vector<std::pair<std::uint64_t, Exps>> out;
        for (std::uint64_t i = 0; i < coef_.size(); ++i)
            if (coef_[i] != 0) out.emplace_back(i, exps_of(i));
        return out;
    }
    const mpq_class& at(std::uint64_t idx) const { return coef_[idx]; }

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) {
        a.check_compatible(b);
        for (std::uint64_t i = 0; i < a.coef_.size(); ++i) a.coef_[i] += b.coef_[i];
        return a;
    }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) {
        a.check_compatible(b);
        for (std::uint64_t i = 0; i < a.coef_.size(); ++i) a.coef_[i] -= b.coef_[i];
        return a;
    }
    friend TruncatedSeries operator*(TruncatedSeries a, const mpq_class& c) {
        for (auto& x : a.coef_) x *= c;
        return a;
    }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.check_compatible(b);
        TruncatedSeries out(a.caps_);
        const auto sa = a.support(), sb = b.support();
        const std::size_t nv = a.caps_.size();
        mpq_class prod;
        for (const auto& [ib, eb] : sb) {
            for (const auto& [ia, ea] : sa) {
                bool ok = true;
                for (std::size_t v = 0; v < nv && ok; ++v) ok = ea[v] + eb[v] <= a.caps_[v];
                if (!ok) continue;
                mpq_mul(prod.get_mpq_t(), a.coef_[ia].get_mpq_t(), b.coef_[ib].get_mpq_t());
                out.coef_[ia + ib] += prod;
            }
        }
        return out;
    }
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.caps_ == b.caps_ && a.coef_ == b.coef_;
    }

    /// Sum of the caps: any product of more than this many zero-constant
    /// factors vanishes.
    unsigned total_cap() const {
        unsigned t = 0;
        for (unsigned c : caps_) t += c;
        return t;
    }

    void check_compatible(const TruncatedSeries& b) const {
        if (caps_ != b.caps_) throw InvalidArgument("series with different caps");
    }

private:
    Exps caps_;
    std::vector<std::uint64_t> strides_;
    std::vector<mpq_class> coef_;
};

/// Generalized binomial coefficient C(e, j) for any integer e.
inline mpq_class binomial_coefficient(const mpz_class& e, unsigned j) {
    mpq_class c = 1;
    for (unsigned r = 0; r < j; ++r) {
        c *= mpq_class(e - r);
        c /= r + 1;
    }
    return c;
}

/// s^e. A constant term of 1 allows any integer exponent (binomial series,
/// cost independent of |e|); otherwise e must be a nonnegative machine integer.
inline TruncatedSeries integer_pow(const TruncatedSeries& s, const mpz_class& e) {
    const auto& caps = s.caps();
    if (s.constant_term() == 1) {
        TruncatedSeries rest = s - TruncatedSeries::constant(caps, 1);
        TruncatedSeries out = TruncatedSeries::constant(caps, 1);
        TruncatedSeries power = TruncatedSeries::constant(caps, 1);
        for (unsigned j = 1; j <= s.total_cap(); ++j) {
            if (e >= 0 && e < j) break;
            power = power * rest;
            if (power.is_zero()) break;
            out = out + power * binomial_coefficient(e, j);
        }
        return out;
    }
    if (e < 0) throw InvalidArgument("negative power of a series whose constant term is not 1");
    if (s.constant_term() == 0 && e > s.total_cap()) return TruncatedSeries(caps);
    if (!e.fits_ulong_p()) throw InvalidArgument("huge power of a series whose constant term is not 0 or 1");
    unsigned long k = e.get_ui();
    TruncatedSeries result = TruncatedSeries::constant(caps, 1), base = s;
    while (k) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

/// 1/(1 - s) for s with zero constant term.
inline TruncatedSeries geometric_inverse(const TruncatedSeries& s) {
    if (s.constant_term() != 0) throw InvalidArgument("geometric_inverse needs a zero constant term");
    TruncatedSeries out = TruncatedSeries::constant(s.caps(), 1), power = out;
    for (unsigned j = 1; j <= s.total_cap(); ++j) {
        power = power * s;
        if (power.is_zero()) break;
        out = out + power;
    }
    return out;
}

/// exp(s) for s with zero constant term.
inline TruncatedSeries exp_series(const TruncatedSeries& s) {
    if (s.constant_term() != 0) throw InvalidArgument("exp_series needs a zero constant term");
    TruncatedSeries out = TruncatedSeries::constant(s.caps(), 1), power = out;
    mpz_class fact = 1;
    for (unsigned j = 1; j <= s.total_cap(); ++j) {
        power = power * s;
        if (power.is_zero()) break;
        fact *= j;
        out = out + power * mpq_class(1, fact);
    }
    return out;
}

}  // namespace polylab

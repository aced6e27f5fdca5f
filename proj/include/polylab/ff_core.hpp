// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exact arithmetic in F_p and F_{p^e}. Elements of F_{p^e} are coordinate
// vectors in the basis 1, t, ..., t^{e-1}, where t is a root of the recorded
// monic irreducible modulus.

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polylab/errors.hpp"
#include "polylab/number_theory.hpp"
#include "polylab/rng.hpp"

namespace polylab {

using u64 = std::uint64_t;
inline constexpr unsigned kMaxExtension = 16;
inline constexpr u64 kMaxPrime = (1ULL << 31);
using ExtCoords = std::array<std::uint32_t, kMaxExtension>;

namespace detail {

// Small dense polynomial helpers over F_p (low-to-high coefficients). Only used
// for modulus validation and extension-field inversion, where degrees are tiny.
using SmallPoly = std::vector<u64>;

inline void sp_trim(SmallPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline SmallPoly sp_mod(SmallPoly a, const SmallPoly& m, u64 p) {
    sp_trim(a);
    const std::size_t dm = m.size() - 1;
    const u64 lead_inv = nt::inverse_mod(m.back(), p);
    while (a.size() > dm) {
        const u64 c = nt::mulmod(a.back(), lead_inv, p);
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i)
            a[shift + i] = (a[shift + i] + p - nt::mulmod(c, m[i], p)) % p;
        sp_trim(a);
    }
    return a;
}

inline SmallPoly sp_mulmod(const SmallPoly& a, const SmallPoly& b, const SmallPoly& m, u64 p) {
    if (a.empty() || b.empty()) return {};
    SmallPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + nt::mulmod(a[i], b[j], p)) % p;
    return sp_mod(std::move(c), m, p);
}

inline SmallPoly sp_powmod(SmallPoly base, u64 exp, const SmallPoly& m, u64 p) {
    SmallPoly r{1};
    r = sp_mod(r, m, p);
    base = sp_mod(std::move(base), m, p);
    while (exp) {
        if (exp & 1) r = sp_mulmod(r, base, m, p);
        base = sp_mulmod(base, base, m, p);
        exp >>= 1;
    }
    return r;
}

inline SmallPoly sp_gcd(SmallPoly a, SmallPoly b, u64 p) {
    sp_trim(a);
    sp_trim(b);
    while (!b.empty()) {
        a = sp_mod(std::move(a), b, p);
        std::swap(a, b);
    }
    if (!a.empty()) {
        const u64 inv = nt::inverse_mod(a.back(), p);
        for (auto& c : a) c = nt::mulmod(c, inv, p);
    }
    return a;
}

/// Rabin irreducibility test for a monic polynomial over F_p of small degree.
inline bool sp_is_irreducible(const SmallPoly& f, u64 p) {
    const std::size_t n = f.size() - 1;
    if (n == 0) return false;
    if (n == 1) return true;
    const SmallPoly x{0, 1};
    // frob[k] = x^{p^k} mod f
    std::vector<SmallPoly> frob{sp_mod(x, f, p)};
    for (std::size_t k = 1; k <= n; ++k) frob.push_back(sp_powmod(frob.back(), p, f, p));
    SmallPoly diff = frob[n];
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    sp_trim(diff);
    if (!diff.empty()) return false;
    for (auto [r, k] : nt::factorize(n)) {
        SmallPoly h = frob[n / r];
        h.resize(std::max<std::size_t>(h.size(), 2), 0);
        h[1] = (h[1] + p - 1) % p;
        if (sp_gcd(h, f, p).size() != 1) return false;
    }
    return true;
}

struct FieldData {
    u64 p = 2;
    unsigned e = 1;
    std::vector<std::uint32_t> modulus;  // e+1 coefficients, monic
    u64 size = 2;                        // p^e, 0 if it overflows 64 bits
    std::vector<std::uint32_t> basis_traces;  // Tr(t^i), i < e

    mutable std::once_flag order_once;
    mutable std::vector<std::pair<u64, int>> order_factors;  // factorization of p^e - 1
};

}  // namespace detail

class FieldElement;

/// Immutable, shareable description of F_{p^e}.
class FieldCtx {
public:
    FieldCtx() = default;

    u64 p() const { return data().p; }
    unsigned e() const { return data().e; }
    std::span<const std::uint32_t> modulus() const { return data().modulus; }

    /// q = p^e; throws when it does not fit in 64 bits.
    u64 q() const {
        if (data().size == 0) throw InvalidArgument("field size p^e exceeds 64 bits");
        return data().size;
    }
    bool is_prime_field() const { return data().e == 1; }

    /// Factorization of p^e - 1, computed once per context.
    const std::vector<std::pair<u64, int>>& unit_group_factors() const {
        const auto& d = data();
        if (d.size == 0) throw InvalidArgument("multiplicative group order exceeds 64 bits");
        std::call_once(d.order_once, [&] { d.order_factors = nt::factorize(d.size - 1); });
        return d.order_factors;
    }

    bool same_as(const FieldCtx& other) const {
        if (d_ == other.d_) return true;
        if (!d_ || !other.d_) return false;
        return d_->p == other.d_->p && d_->e == other.d_->e && d_->modulus == other.d_->modulus;
    }
    bool valid() const { return static_cast<bool>(d_); }

    // Coordinate-level operations shared by the polynomial kernels.
    ExtCoords add(const ExtCoords& a, const ExtCoords& b) const {
        ExtCoords r{};
        const u64 p = d_->p;
        for (unsigned i = 0; i < d_->e; ++i) {
            const u64 s = static_cast<u64>(a[i]) + b[i];
            r[i] = static_cast<std::uint32_t>(s >= p ? s - p : s);
        }
        return r;
    }
    ExtCoords sub(const ExtCoords& a, const ExtCoords& b) const {
        ExtCoords r{};
        const u64 p = d_->p;
        for (unsigned i = 0; i < d_->e; ++i)
            r[i] = static_cast<std::uint32_t>(a[i] >= b[i] ? a[i] - b[i] : a[i] + p - b[i]);
        return r;
    }
    ExtCoords neg(const ExtCoords& a) const {
        ExtCoords r{};
        for (unsigned i = 0; i < d_->e; ++i) r[i] = a[i] ? static_cast<std::uint32_t>(d_->p - a[i]) : 0;
        return r;
    }
    ExtCoords scale(const ExtCoords& a, u64 c) const {
        ExtCoords r{};
        c %= d_->p;
        for (unsigned i = 0; i < d_->e; ++i) r[i] = static_cast<std::uint32_t>(static_cast<u64>(a[i]) * c % d_->p);
        return r;
    }
    ExtCoords mul(const ExtCoords& a, const ExtCoords& b) const {
        const unsigned e = d_->e;
        const u64 p = d_->p;
        if (e == 1) return ExtCoords{static_cast<std::uint32_t>(static_cast<u64>(a[0]) * b[0] % p)};
        std::array<u64, 2 * kMaxExtension> prod{};
        for (unsigned i = 0; i < e; ++i) {
            if (!a[i]) continue;
            for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + static_cast<u64>(a[i]) * b[j]) % p;
        }
        const auto& m = d_->modulus;
        for (unsigned k = 2 * e - 2; k >= e; --k) {
            const u64 c = prod[k];
            if (!c) continue;
            prod[k] = 0;
            for (unsigned i = 0; i < e; ++i) prod[k - e + i] = (prod[k - e + i] + (p - m[i]) * c) % p;
        }
        ExtCoords r{};
        for (unsigned i = 0; i < e; ++i) r[i] = static_cast<std::uint32_t>(prod[i]);
        return r;
    }
    ExtCoords inv(const ExtCoords& a) const;
    static bool is_zero(const ExtCoords& a) {
        return std::all_of(a.begin(), a.end(), [](std::uint32_t c) { return c == 0; });
    }
    /// Tr_{F_{p^e}/F_p}, by linearity over the cached basis traces.
    std::uint32_t trace(const ExtCoords& a) const {
        const auto& bt = d_->basis_traces;
        u64 s = 0;
        for (unsigned i = 0; i < d_->e; ++i) s = (s + static_cast<u64>(a[i]) * bt[i]) % d_->p;
        return static_cast<std::uint32_t>(s);
    }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(long long v) const;
    FieldElement from_coords(std::span<const u64> coords) const;
    /// The class of t, i.e. the root of the modulus.
    FieldElement gen() const;
    /// Element with mixed-radix index idx (coordinate 0 least significant).
    FieldElement element(u64 idx) const;
    u64 index_of(const FieldElement& a) const;

    std::string describe() const;

private:
    friend FieldCtx make_field(u64, unsigned, std::optional<std::vector<u64>>, u64);
    explicit FieldCtx(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
    const detail::FieldData& data() const {
        if (!d_) throw InvalidArgument("uninitialized field context");
        return *d_;
    }
    std::shared_ptr<const detail::FieldData> d_;
};

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(FieldCtx ctx, const ExtCoords& c) : ctx_(std::move(ctx)), c_(c) {}

    const FieldCtx& ctx() const { return ctx_; }
    const ExtCoords& coords() const { return c_; }
    std::uint32_t coord(unsigned i) const { return c_[i]; }
    bool is_zero() const { return FieldCtx::is_zero(c_); }
    bool is_one() const {
        if (c_[0] != 1) return false;
        return std::all_of(c_.begin() + 1, c_.end(), [](std::uint32_t v) { return v == 0; });
    }
    /// True when the element lies in the prime subfield.
    bool in_prime_field() const {
        return std::all_of(c_.begin() + 1, c_.end(), [](std::uint32_t v) { return v == 0; });
    }

    FieldElement operator-() const { return {ctx_, ctx_.neg(c_)}; }
    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        check_same(a, b);
        return {a.ctx_, a.ctx_.add(a.c_, b.c_)};
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        check_same(a, b);
        return {a.ctx_, a.ctx_.sub(a.c_, b.c_)};
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        check_same(a, b);
        return {a.ctx_, a.ctx_.mul(a.c_, b.c_)};
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inv(); }
    FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
    FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
    FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.ctx_.same_as(b.ctx_) && a.c_ == b.c_;
    }

    FieldElement inv() const {
        if (is_zero()) throw InvalidArgument("inverse of zero field element");
        return {ctx_, ctx_.inv(c_)};
    }
    FieldElement pow(u64 k) const {
        ExtCoords result{};
        result[0] = 1;
        ExtCoords base = c_;
        while (k) {
            if (k & 1) result = ctx_.mul(result, base);
            base = ctx_.mul(base, base);
            k >>= 1;
        }
        return {ctx_, result};
    }
    /// a^{p^j}
    FieldElement frobenius(unsigned j = 1) const {
        FieldElement r = *this;
        for (unsigned i = 0; i < j % ctx_.e(); ++i) r = r.pow(ctx_.p());
        return r;
    }

    std::string to_string() const;

private:
    static void check_same(const FieldElement& a, const FieldElement& b) {
        if (!a.ctx_.same_as(b.ctx_)) throw InvalidArgument("field elements from different contexts");
    }
    FieldCtx ctx_;
    ExtCoords c_{};
};

inline ExtCoords FieldCtx::inv(const ExtCoords& a) const {
    const u64 p = d_->p;
    const unsigned e = d_->e;
    if (is_zero(a)) throw InvalidArgument("inverse of zero field element");
    if (e == 1) return ExtCoords{static_cast<std::uint32_t>(nt::inverse_mod(a[0], p))};
    // Extended Euclid in F_p[t] on (modulus, a).
    using detail::SmallPoly;
    SmallPoly r0(d_->modulus.begin(), d_->modulus.end()), r1(a.begin(), a.begin() + e);
    detail::sp_trim(r1);
    SmallPoly s0{}, s1{1};
    auto submul = [p](const SmallPoly& x, const SmallPoly& q, const SmallPoly& y) {
        SmallPoly out = x;
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < y.size(); ++j) {
                if (out.size() <= i + j) out.resize(i + j + 1, 0);
                out[i + j] = (out[i + j] + p - nt::mulmod(q[i], y[j], p)) % p;
            }
        detail::sp_trim(out);
        return out;
    };
    while (r1.size() > 1) {
        SmallPoly q(r0.size() - r1.size() + 1, 0), rem = r0;
        const u64 li = nt::inverse_mod(r1.back(), p);
        while (rem.size() >= r1.size()) {
            const u64 c = nt::mulmod(rem.back(), li, p);
            const std::size_t shift = rem.size() - r1.size();
            q[shift] = c;
            for (std::size_t i = 0; i < r1.size(); ++i)
                rem[shift + i] = (rem[shift + i] + p - nt::mulmod(c, r1[i], p)) % p;
            detail::sp_trim(rem);
        }
        SmallPoly s2 = submul(s0, q, s1);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    const u64 cinv = nt::inverse_mod(r1[0], p);
    ExtCoords out{};
    for (std::size_t i = 0; i < s1.size() && i < e; ++i) out[i] = static_cast<std::uint32_t>(nt::mulmod(s1[i], cinv, p));
    return out;
}

inline FieldElement FieldCtx::zero() const { return {*this, ExtCoords{}}; }
inline FieldElement FieldCtx::one() const {
    ExtCoords c{};
    c[0] = 1;
    return {*this, c};
}
inline FieldElement FieldCtx::from_int(long long v) const {
    const auto p = static_cast<long long>(this->p());
    long long r = v % p;
    if (r < 0) r += p;
    ExtCoords c{};
    c[0] = static_cast<std::uint32_t>(r);
    return {*this, c};
}
inline FieldElement FieldCtx::from_coords(std::span<const u64> coords) const {
    if (coords.size() > e()) throw InvalidArgument("too many coordinates for field element");
    ExtCoords c{};
    for (std::size_t i = 0; i < coords.size(); ++i) c[i] = static_cast<std::uint32_t>(coords[i] % p());
    return {*this, c};
}
inline FieldElement FieldCtx::gen() const {
    if (e() == 1) {
        // t is a root of the degree-1 modulus t + m0.
        return from_int(-static_cast<long long>(modulus()[0]));
    }
    ExtCoords c{};
    c[1] = 1;
    return {*this, c};
}
inline FieldElement FieldCtx::element(u64 idx) const {
    ExtCoords c{};
    for (unsigned i = 0; i < e(); ++i) {
        c[i] = static_cast<std::uint32_t>(idx % p());
        idx /= p();
    }
    return {*this, c};
}
inline u64 FieldCtx::index_of(const FieldElement& a) const {
    u64 idx = 0;
    for (unsigned i = e(); i-- > 0;) idx = idx * p() + a.coord(i);
    return idx;
}

inline std::string FieldElement::to_string() const {
    const unsigned e = ctx_.e();
    std::string out;
    for (unsigned i = 0; i < e; ++i) {
        if (c_[i] == 0) continue;
        if (!out.empty()) out += '+';
        if (i == 0) {
            out += std::to_string(c_[i]);
            continue;
        }
        if (c_[i] != 1) out += std::to_string(c_[i]) + '*';
        out += 't';
        if (i > 1) out += '^' + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

inline std::string FieldCtx::describe() const { return std::to_string(p()) + "^" + std::to_string(e()); }

/// Builds F_{p^e}. Without a modulus, a monic irreducible is found by seeded
/// random search; the chosen modulus is recorded in the context.
inline FieldCtx make_field(u64 p, unsigned e, std::optional<std::vector<u64>> modulus = std::nullopt,
                           u64 seed = 0) {
    if (p >= kMaxPrime) throw InvalidArgument("p must be below 2^31, got " + std::to_string(p));
    if (!nt::is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
    if (e < 1 || e > kMaxExtension)
        throw InvalidArgument("extension degree must be in [1, " + std::to_string(kMaxExtension) + "]");

    auto d = std::make_shared<detail::FieldData>();
    d->p = p;
    d->e = e;
    d->size = nt::checked_pow(p, e);

    detail::SmallPoly mod;
    if (modulus) {
        mod = *modulus;
        for (auto& c : mod) c %= p;
        if (mod.size() != e + 1 || mod.back() != 1)
            throw InvalidArgument("modulus must be monic of degree " + std::to_string(e));
        if (!detail::sp_is_irreducible(mod, p)) throw InvalidArgument("supplied modulus is reducible");
    } else if (e == 1) {
        mod = {0, 1};
    } else {
        Rng rng(seed, 0x6d6f64756c7573ULL);
        for (;;) {
            mod.assign(e + 1, 0);
            for (unsigned i = 0; i < e; ++i) mod[i] = rng.uniform_below(p);
            mod[e] = 1;
            if (mod[0] != 0 && detail::sp_is_irreducible(mod, p)) break;
        }
    }
    d->modulus.assign(mod.begin(), mod.end());

    FieldCtx ctx(d);
    // Tr(t^i) = sum_j (t^i)^{p^j}, computed once so trace is a dot product.
    auto& traces = d->basis_traces;
    traces.assign(e, 0);
    for (unsigned i = 0; i < e; ++i) {
        ExtCoords basis{};
        if (e == 1)
            basis[0] = 1;
        else
            basis[i] = 1;
        FieldElement b(ctx, basis);
        ExtCoords acc{};
        FieldElement conj = b;
        for (unsigned j = 0; j < e; ++j) {
            acc = ctx.add(acc, conj.coords());
            conj = conj.pow(p);
        }
        for (unsigned k = 1; k < e; ++k)
            if (acc[k] != 0) throw VerificationFailure("trace left the prime field");
        traces[i] = acc[0];
    }
    return ctx;
}

/// Field trace to F_p.
inline std::uint32_t trace(const FieldElement& a) { return a.ctx().trace(a.coords()); }

/// Least k >= 1 with a^k = 1, by descending through the prime factors of p^e - 1.
inline u64 mult_order(const FieldElement& a) {
    if (a.is_zero()) throw InvalidArgument("multiplicative order of zero");
    const auto& fac = a.ctx().unit_group_factors();
    u64 order = a.ctx().q() - 1;
    for (auto [ell, k] : fac) {
        for (int i = 0; i < k; ++i) {
            if (a.pow(order / ell).is_one())
                order /= ell;
            else
                break;
        }
    }
    return order;
}

inline bool lies_in_proper_subfield(const FieldElement& a) {
    const unsigned e = a.ctx().e();
    if (e == 1) return false;
    for (u64 d : nt::divisors(e)) {
        if (d == e) continue;
        if (a.frobenius(static_cast<unsigned>(d)) == a) return true;
    }
    return false;
}

inline bool are_conjugate(const FieldElement& a, const FieldElement& b) {
    if (!a.ctx().same_as(b.ctx())) throw InvalidArgument("field elements from different contexts");
    FieldElement conj = a;
    for (unsigned j = 0; j < a.ctx().e(); ++j) {
        if (conj == b) return true;
        conj = conj.pow(a.ctx().p());
    }
    return false;
}

}  // namespace polylab

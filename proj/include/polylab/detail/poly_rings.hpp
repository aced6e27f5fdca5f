// SPDX-License-Identifier: Apache-2.0
#pragma once

// Two interchangeable polynomial-ring backends used by the factorization
// templates: PrimeRing works on packed residues with the lazy kernels,
// ExtRing works on coordinate arrays of F_{p^e} elements.

#include <memory>
#include <optional>
#include <vector>

#include "polylab/detail/prime_kernels.hpp"
#include "polylab/ff_core.hpp"
#include "polylab/rng.hpp"

namespace polylab::detail {

class PrimeRing {
public:
    using Elem = std::uint32_t;
    using Poly = std::vector<std::uint32_t>;

    explicit PrimeRing(u64 p) : p_(p) {}

    u64 p() const { return p_; }
    u64 q() const { return p_; }
    unsigned e() const { return 1; }

    static int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }
    static bool is_zero(const Poly& a) { return a.empty(); }
    static bool is_one(const Poly& a) { return a.size() == 1 && a[0] == 1; }
    Elem lead(const Poly& a) const { return a.back(); }
    Elem elem_inv(Elem a) const { return pk::inv(a, p_); }
    Elem elem_mul(Elem a, Elem b) const { return pk::mul(a, b, p_); }
    Elem elem_one() const { return 1; }
    static bool elem_is_zero(Elem a) { return a == 0; }

    Poly x() const { return p_ == 1 ? Poly{} : Poly{0, 1}; }
    Poly one() const { return Poly{1}; }
    Poly add(const Poly& a, const Poly& b) const { return pk::add(a, b, p_); }
    Poly sub(const Poly& a, const Poly& b) const { return pk::sub(a, b, p_); }
    Poly mul(const Poly& a, const Poly& b) const { return pk::mul(a, b, p_); }
    Poly scale(const Poly& a, Elem c) const { return pk::scale(a, c, p_); }
    std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const { return pk::divmod(a, b, p_); }
    Poly div(const Poly& a, const Poly& b) const { return divmod(a, b).first; }
    Poly rem(const Poly& a, const Poly& b) const { return pk::rem(a, b, p_); }
    Poly gcd(const Poly& a, const Poly& b) const { return pk::gcd(a, b, p_); }
    Poly monic(const Poly& a) const { return pk::make_monic(a, p_); }

    Poly derivative(const Poly& a) const {
        if (a.size() <= 1) return {};
        Poly d(a.size() - 1);
        for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = pk::mul(a[i], static_cast<Elem>(i % p_), p_);
        pk::trim(d);
        return d;
    }
    /// g with g^p = a, for a whose exponents are all multiples of p.
    Poly pth_root(const Poly& a) const {
        Poly r((a.size() + p_ - 1) / p_, 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i * p_];
        pk::trim(r);
        return r;
    }

    class Modulus {
    public:
        Modulus(const PrimeRing& ring, const Poly& f) : mc_(f, ring.p()) {}
        const pk::ModContext& ctx() const { return mc_; }
        const pk::FrobeniusMatrix& frobenius() const {
            if (!frob_) frob_ = std::make_unique<pk::FrobeniusMatrix>(mc_);
            return *frob_;
        }

    private:
        pk::ModContext mc_;
        mutable std::unique_ptr<pk::FrobeniusMatrix> frob_;
    };

    Poly reduce(const Modulus& m, const Poly& a) const { return m.ctx().reduce(a); }
    Poly mulmod(const Modulus& m, const Poly& a, const Poly& b) const { return m.ctx().mulmod(a, b); }
    Poly powmod(const Modulus& m, const Poly& a, u64 k) const { return m.ctx().powmod(a, k); }
    /// h^q mod f
    Poly frob(const Modulus& m, const Poly& h) const {
        if (m.ctx().degree() <= 8) return m.ctx().powmod(h, p_);
        return m.frobenius().apply(m.ctx().reduce(h));
    }

    Poly random_below(Rng& rng, std::size_t degree_bound) const {
        Poly r(degree_bound);
        for (auto& c : r) c = static_cast<Elem>(rng.uniform_below(p_));
        pk::trim(r);
        return r;
    }

private:
    u64 p_;
};

class ExtRing {
public:
    using Elem = ExtCoords;
    using Poly = std::vector<ExtCoords>;

    explicit ExtRing(FieldCtx ctx) : ctx_(std::move(ctx)) {}

    const FieldCtx& ctx() const { return ctx_; }
    u64 p() const { return ctx_.p(); }
    u64 q() const { return ctx_.q(); }
    unsigned e() const { return ctx_.e(); }

    static int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }
    static bool is_zero(const Poly& a) { return a.empty(); }
    bool is_one(const Poly& a) const { return a.size() == 1 && FieldElement(ctx_, a[0]).is_one(); }
    Elem lead(const Poly& a) const { return a.back(); }
    Elem elem_inv(const Elem& a) const { return ctx_.inv(a); }
    Elem elem_mul(const Elem& a, const Elem& b) const { return ctx_.mul(a, b); }
    Elem elem_one() const { return ctx_.one().coords(); }
    static bool elem_is_zero(const Elem& a) { return FieldCtx::is_zero(a); }

    static void trim(Poly& a) {
        while (!a.empty() && FieldCtx::is_zero(a.back())) a.pop_back();
    }

    Poly x() const { return Poly{Elem{}, elem_one()}; }
    Poly one() const { return Poly{elem_one()}; }
    Poly add(const Poly& a, const Poly& b) const {
        Poly r(std::max(a.size(), b.size()), Elem{});
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = ctx_.add(i < a.size() ? a[i] : Elem{}, i < b.size() ? b[i] : Elem{});
        trim(r);
        return r;
    }
    Poly sub(const Poly& a, const Poly& b) const {
        Poly r(std::max(a.size(), b.size()), Elem{});
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = ctx_.sub(i < a.size() ? a[i] : Elem{}, i < b.size() ? b[i] : Elem{});
        trim(r);
        return r;
    }
    Poly mul(const Poly& a, const Poly& b) const {
        if (a.empty() || b.empty()) return {};
        Poly r(a.size() + b.size() - 1, Elem{});
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (FieldCtx::is_zero(a[i])) continue;
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = ctx_.add(r[i + j], ctx_.mul(a[i], b[j]));
        }
        trim(r);
        return r;
    }
    Poly scale(const Poly& a, const Elem& c) const {
        Poly r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = ctx_.mul(a[i], c);
        trim(r);
        return r;
    }
    std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const {
        if (b.empty()) throw InvalidArgument("polynomial division by zero");
        if (a.size() < b.size()) return {{}, a};
        Poly r = a;
        const std::size_t db = b.size() - 1;
        Poly q(a.size() - db, Elem{});
        const Elem li = ctx_.inv(b.back());
        for (std::size_t k = r.size(); k-- > db;) {
            const Elem c = ctx_.mul(r[k], li);
            if (FieldCtx::is_zero(c)) continue;
            q[k - db] = c;
            for (std::size_t i = 0; i <= db; ++i) r[k - db + i] = ctx_.sub(r[k - db + i], ctx_.mul(c, b[i]));
        }
        trim(q);
        r.resize(db);
        trim(r);
        return {q, r};
    }
    Poly div(const Poly& a, const Poly& b) const { return divmod(a, b).first; }
    Poly rem(const Poly& a, const Poly& b) const { return divmod(a, b).second; }
    Poly monic(const Poly& a) const {
        if (a.empty()) return a;
        return scale(a, ctx_.inv(a.back()));
    }
    Poly gcd(Poly a, Poly b) const {
        trim(a);
        trim(b);
        while (!b.empty()) {
            a = rem(a, b);
            std::swap(a, b);
        }
        return monic(a);
    }
    Poly derivative(const Poly& a) const {
        if (a.size() <= 1) return {};
        Poly d(a.size() - 1);
        for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = ctx_.scale(a[i], i % p());
        trim(d);
        return d;
    }
    Poly pth_root(const Poly& a) const {
        const u64 p = this->p();
        Poly r((a.size() + p - 1) / p, Elem{});
        for (std::size_t i = 0; i < r.size(); ++i) {
            // c^{1/p} = c^{p^{e-1}}
            FieldElement c(ctx_, a[i * p]);
            r[i] = c.frobenius(e() - 1).coords();
        }
        trim(r);
        return r;
    }

    class Modulus {
    public:
        Modulus(const ExtRing&, const Poly& f) : f_(f) {}
        const Poly& poly() const { return f_; }

    private:
        Poly f_;
    };

    Poly reduce(const Modulus& m, const Poly& a) const { return rem(a, m.poly()); }
    Poly mulmod(const Modulus& m, const Poly& a, const Poly& b) const { return rem(mul(a, b), m.poly()); }
    Poly powmod(const Modulus& m, const Poly& a, u64 k) const {
        Poly r = reduce(m, one()), base = reduce(m, a);
        while (k) {
            if (k & 1) r = mulmod(m, r, base);
            base = mulmod(m, base, base);
            k >>= 1;
        }
        return r;
    }
    Poly frob(const Modulus& m, const Poly& h) const {
        Poly r = reduce(m, h);
        for (unsigned i = 0; i < e(); ++i) r = powmod(m, r, p());
        return r;
    }

    Poly random_below(Rng& rng, std::size_t degree_bound) const {
        Poly r(degree_bound);
        for (auto& c : r) {
            c = Elem{};
            for (unsigned i = 0; i < e(); ++i) c[i] = static_cast<std::uint32_t>(rng.uniform_below(p()));
        }
        trim(r);
        return r;
    }

private:
    FieldCtx ctx_;
};

}  // namespace polylab::detail

// SPDX-License-Identifier: Apache-2.0
#pragma once

// Dense univariate polynomials over F_q: arithmetic, Hasse derivatives and
// Taylor expansion at a point, complete factorization and irreducibility,
// irreducible counts, and the derivative-vector matrix at a set of roots.

#include <gmpxx.h>

#include <algorithm>
#include <charconv>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polylab/detail/factor_algos.hpp"
#include "polylab/detail/poly_rings.hpp"
#include "polylab/errors.hpp"
#include "polylab/ff_core.hpp"
#include "polylab/number_theory.hpp"

namespace polylab {

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(FieldCtx ctx) : ctx_(std::move(ctx)) {}
    Polynomial(FieldCtx ctx, std::vector<ExtCoords> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) { trim(); }
    Polynomial(FieldCtx ctx, const std::vector<FieldElement>& coeffs) : ctx_(std::move(ctx)) {
        c_.reserve(coeffs.size());
        for (const auto& a : coeffs) {
            if (!a.ctx().same_as(ctx_)) throw InvalidArgument("coefficient from a different field");
            c_.push_back(a.coords());
        }
        trim();
    }

    /// Coefficients taken from the prime subfield, low degree first.
    static Polynomial from_ints(const FieldCtx& ctx, const std::vector<long long>& coeffs) {
        std::vector<ExtCoords> c;
        c.reserve(coeffs.size());
        for (long long v : coeffs) c.push_back(ctx.from_int(v).coords());
        return {ctx, std::move(c)};
    }
    static Polynomial x(const FieldCtx& ctx) { return from_ints(ctx, {0, 1}); }
    static Polynomial constant(const FieldElement& c) { return {c.ctx(), std::vector<ExtCoords>{c.coords()}}; }
    static Polynomial monomial(const FieldElement& c, std::size_t k) {
        std::vector<ExtCoords> v(k + 1, ExtCoords{});
        v[k] = c.coords();
        return {c.ctx(), std::move(v)};
    }

    const FieldCtx& ctx() const { return ctx_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::size_t size() const { return c_.size(); }
    FieldElement coeff(std::size_t i) const { return {ctx_, i < c_.size() ? c_[i] : ExtCoords{}}; }
    FieldElement leading() const {
        if (c_.empty()) throw InvalidArgument("leading coefficient of the zero polynomial");
        return {ctx_, c_.back()};
    }
    bool is_monic() const { return !c_.empty() && coeff(c_.size() - 1).is_one(); }
    const std::vector<ExtCoords>& coords() const { return c_; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.ctx_.same_as(b.ctx_) && a.c_ == b.c_;
    }

    std::string to_string() const;

private:
    void trim() {
        while (!c_.empty() && FieldCtx::is_zero(c_.back())) c_.pop_back();
    }
    FieldCtx ctx_;
    std::vector<ExtCoords> c_;
};

namespace detail {

inline PrimeRing::Poly to_ring(const PrimeRing&, const Polynomial& f) {
    PrimeRing::Poly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = f.coords()[i][0];
    return r;
}
inline ExtRing::Poly to_ring(const ExtRing&, const Polynomial& f) { return f.coords(); }

inline Polynomial from_ring(const FieldCtx& ctx, const PrimeRing::Poly& r) {
    std::vector<ExtCoords> c(r.size(), ExtCoords{});
    for (std::size_t i = 0; i < r.size(); ++i) c[i][0] = r[i];
    return {ctx, std::move(c)};
}
inline Polynomial from_ring(const FieldCtx& ctx, const ExtRing::Poly& r) { return {ctx, r}; }

/// Runs fn(ring) with the backend matching the field of f.
template <class Fn>
decltype(auto) with_ring(const FieldCtx& ctx, Fn&& fn) {
    if (ctx.e() == 1) return fn(PrimeRing(ctx.p()));
    return fn(ExtRing(ctx));
}

inline void check_same(const Polynomial& a, const Polynomial& b) {
    if (!a.ctx().same_as(b.ctx())) throw InvalidArgument("polynomials over different fields");
}

/// Maps a coefficient of f into the field of a. Either the fields agree or f
/// lives over the prime subfield of a's field.
inline FieldElement embed(const FieldElement& c, const FieldCtx& target) {
    if (c.ctx().same_as(target)) return c;
    if (c.ctx().e() == 1 && c.ctx().p() == target.p()) return target.from_int(c.coord(0));
    throw InvalidArgument("field " + c.ctx().describe() + " does not embed in " + target.describe());
}

}  // namespace detail

inline Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    detail::check_same(a, b);
    return detail::with_ring(a.ctx(), [&](const auto& r) {
        return detail::from_ring(a.ctx(), r.add(detail::to_ring(r, a), detail::to_ring(r, b)));
    });
}
inline Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    detail::check_same(a, b);
    return detail::with_ring(a.ctx(), [&](const auto& r) {
        return detail::from_ring(a.ctx(), r.sub(detail::to_ring(r, a), detail::to_ring(r, b)));
    });
}
inline Polynomial operator-(const Polynomial& a) { return Polynomial(a.ctx()) - a; }
inline Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    detail::check_same(a, b);
    return detail::with_ring(a.ctx(), [&](const auto& r) {
        return detail::from_ring(a.ctx(), r.mul(detail::to_ring(r, a), detail::to_ring(r, b)));
    });
}
inline Polynomial operator*(const FieldElement& c, const Polynomial& a) { return Polynomial::constant(c) * a; }

inline std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    detail::check_same(a, b);
    if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
    return detail::with_ring(a.ctx(), [&](const auto& r) {
        auto [q, rem] = r.divmod(detail::to_ring(r, a), detail::to_ring(r, b));
        return std::make_pair(detail::from_ring(a.ctx(), q), detail::from_ring(a.ctx(), rem));
    });
}

/// Monic gcd.
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    detail::check_same(a, b);
    return detail::with_ring(a.ctx(), [&](const auto& r) {
        return detail::from_ring(a.ctx(), r.gcd(detail::to_ring(r, a), detail::to_ring(r, b)));
    });
}

inline Polynomial make_monic(const Polynomial& a) {
    if (a.is_zero()) return a;
    return a.leading().inv() * a;
}

/// a^k mod m
inline Polynomial powmod(const Polynomial& a, u64 k, const Polynomial& m) {
    detail::check_same(a, m);
    if (m.degree() < 1) throw InvalidArgument("powmod needs a modulus of degree >= 1");
    const Polynomial mm = make_monic(m);
    return detail::with_ring(a.ctx(), [&](const auto& r) {
        using R = std::decay_t<decltype(r)>;
        typename R::Modulus mod(r, detail::to_ring(r, mm));
        return detail::from_ring(a.ctx(), r.powmod(mod, detail::to_ring(r, a), k));
    });
}

/// f(a), with a in the field of f or in an extension of its prime field.
inline FieldElement eval(const Polynomial& f, const FieldElement& a) {
    const FieldCtx& target = a.ctx();
    FieldElement acc = target.zero();
    for (std::size_t i = f.size(); i-- > 0;) acc = acc * a + detail::embed(f.coeff(i), target);
    return acc;
}

inline Polynomial derivative(const Polynomial& f) {
    return detail::with_ring(f.ctx(), [&](const auto& r) {
        return detail::from_ring(f.ctx(), r.derivative(detail::to_ring(r, f)));
    });
}

/// Binomial coefficients mod p via Lucas' theorem, with factorial tables up
/// to min(p - 1, max_n).
class BinomialModP {
public:
    BinomialModP(u64 p, u64 max_n) : p_(p) {
        const u64 top = std::min<u64>(p - 1, max_n);
        fact_.assign(top + 1, 1);
        for (u64 i = 1; i <= top; ++i) fact_[i] = nt::mulmod(fact_[i - 1], i, p);
        inv_fact_.assign(top + 1, 1);
        inv_fact_[top] = nt::inverse_mod(fact_[top], p);
        for (u64 i = top; i > 0; --i) inv_fact_[i - 1] = nt::mulmod(inv_fact_[i], i, p);
    }

    u64 operator()(u64 n, u64 k) const {
        if (k > n) return 0;
        u64 result = 1;
        while (n > 0 || k > 0) {
            const u64 nd = n % p_, kd = k % p_;
            if (kd > nd) return 0;
            result = nt::mulmod(result, small(nd, kd), p_);
            n /= p_;
            k /= p_;
        }
        return result;
    }

private:
    u64 small(u64 n, u64 k) const {
        if (n < fact_.size()) return nt::mulmod(fact_[n], nt::mulmod(inv_fact_[k], inv_fact_[n - k], p_), p_);
        // digits beyond the table: multiplicative formula
        u64 num = 1, den = 1;
        for (u64 i = 0; i < k; ++i) {
            num = nt::mulmod(num, (n - i) % p_, p_);
            den = nt::mulmod(den, (i + 1) % p_, p_);
        }
        return nt::mulmod(num, nt::inverse_mod(den, p_), p_);
    }

    u64 p_;
    std::vector<u64> fact_, inv_fact_;
};

/// D^{(k)} f = sum_i c_i C(i, k) x^{i-k}
inline Polynomial hasse_derivative(const Polynomial& f, unsigned k) {
    if (k == 0) return f;
    if (f.degree() < static_cast<int>(k)) return Polynomial(f.ctx());
    BinomialModP binom(f.ctx().p(), static_cast<u64>(f.degree()));
    std::vector<ExtCoords> out(f.size() - k);
    for (std::size_t i = k; i < f.size(); ++i) out[i - k] = f.ctx().scale(f.coords()[i], binom(i, k));
    return {f.ctx(), std::move(out)};
}

/// (D^{(k)} f(a))_{k <= deg f}: the coefficients of f in powers of (x - a).
inline std::vector<FieldElement> taylor_at(const Polynomial& f, const FieldElement& a) {
    const FieldCtx& target = a.ctx();
    std::vector<FieldElement> b;
    b.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) b.push_back(detail::embed(f.coeff(i), target));
    if (b.empty()) return {target.zero()};
    const std::size_t n = b.size() - 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = n; i-- > k;) b[i] = b[i] + a * b[i + 1];
    return b;
}

/// Largest r with (x - a)^r | f.
inline unsigned root_multiplicity(const Polynomial& f, const FieldElement& a) {
    if (f.is_zero()) throw InvalidArgument("root multiplicity in the zero polynomial");
    const auto t = taylor_at(f, a);
    unsigned r = 0;
    while (r < t.size() && t[r].is_zero()) ++r;
    return r;
}

inline std::vector<std::pair<Polynomial, unsigned>> squarefree_decomposition(const Polynomial& f) {
    if (f.is_zero()) throw InvalidArgument("squarefree decomposition of the zero polynomial");
    const Polynomial g = make_monic(f);
    return detail::with_ring(f.ctx(), [&](const auto& r) {
        std::vector<std::pair<Polynomial, unsigned>> out;
        for (auto& [part, m] : detail::squarefree_decomposition(r, detail::to_ring(r, g)))
            out.emplace_back(detail::from_ring(f.ctx(), part), m);
        return out;
    });
}

/// f must be squarefree.
inline std::vector<std::pair<Polynomial, unsigned>> distinct_degree_split(const Polynomial& f) {
    if (f.is_zero()) throw InvalidArgument("distinct degree split of the zero polynomial");
    const Polynomial g = make_monic(f);
    return detail::with_ring(f.ctx(), [&](const auto& r) {
        std::vector<std::pair<Polynomial, unsigned>> out;
        for (auto& [part, d] : detail::distinct_degree_split(r, detail::to_ring(r, g)))
            out.emplace_back(detail::from_ring(f.ctx(), part), d);
        return out;
    });
}

inline constexpr u64 kFactorStream = 0x6661637421ULL;

/// f squarefree with all irreducible factors of degree d.
inline std::vector<Polynomial> equal_degree_split(const Polynomial& f, unsigned d, u64 seed) {
    if (f.is_zero()) throw InvalidArgument("equal degree split of the zero polynomial");
    const Polynomial g = make_monic(f);
    Rng rng(seed, kFactorStream);
    return detail::with_ring(f.ctx(), [&](const auto& r) {
        std::vector<Polynomial> out;
        for (auto& part : detail::equal_degree_split(r, detail::to_ring(r, g), d, rng))
            out.push_back(detail::from_ring(f.ctx(), part));
        return out;
    });
}

/// f monic of degree >= 1.
inline bool is_irreducible(const Polynomial& f) {
    if (f.degree() < 1) throw InvalidArgument("irreducibility test needs degree >= 1");
    if (!f.is_monic()) throw InvalidArgument("irreducibility test needs a monic polynomial");
    return detail::with_ring(f.ctx(), [&](const auto& r) { return detail::is_irreducible(r, detail::to_ring(r, f)); });
}

/// Degree ascending, then lexicographic on coefficient coordinates from x^0 up.
inline bool canonical_less(const Polynomial& a, const Polynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.coords().begin(), a.coords().end(), b.coords().begin(), b.coords().end());
}

struct Factorization {
    FieldElement unit;
    std::vector<std::pair<Polynomial, unsigned>> factors;

    Polynomial expand() const {
        Polynomial acc = Polynomial::constant(unit);
        for (const auto& [phi, m] : factors)
            for (unsigned i = 0; i < m; ++i) acc = acc * phi;
        return acc;
    }
    friend bool operator==(const Factorization& a, const Factorization& b) {
        return a.unit == b.unit && a.factors == b.factors;
    }
};

/// Complete factorization; a pure function of (f, seed).
inline Factorization factorize(const Polynomial& f, u64 seed = 0) {
    if (f.is_zero()) throw InvalidArgument("factorization of the zero polynomial");
    Factorization out{f.leading(), {}};
    const Polynomial g = make_monic(f);
    Rng rng(seed, kFactorStream);
    detail::with_ring(f.ctx(), [&](const auto& r) {
        for (auto& [part, m] : detail::squarefree_decomposition(r, detail::to_ring(r, g))) {
            for (auto& [prod, d] : detail::distinct_degree_split(r, part)) {
                for (auto& phi : detail::equal_degree_split(r, prod, d, rng))
                    out.factors.emplace_back(detail::from_ring(f.ctx(), phi), m);
            }
        }
        return 0;
    });
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
    return out;
}

/// Shape of the factorization of a nonzero f: the multiplicity of x, and for
/// the rest (degree, multiplicity, count) triples. Needs no equal degree split.
struct FactorShape {
    unsigned x_multiplicity = 0;
    unsigned degree = 0;
    std::vector<detail::ShapeEntry> entries;
};

inline FactorShape factor_shape(const Polynomial& f) {
    if (f.is_zero()) throw InvalidArgument("factor shape of the zero polynomial");
    FactorShape shape;
    shape.degree = static_cast<unsigned>(f.degree());
    std::size_t lo = 0;
    while (FieldCtx::is_zero(f.coords()[lo])) ++lo;
    shape.x_multiplicity = static_cast<unsigned>(lo);
    std::vector<ExtCoords> rest(f.coords().begin() + static_cast<std::ptrdiff_t>(lo), f.coords().end());
    const Polynomial g = make_monic(Polynomial(f.ctx(), std::move(rest)));
    if (g.degree() >= 1) {
        shape.entries = detail::with_ring(f.ctx(), [&](const auto& r) { return detail::factor_shape(r, detail::to_ring(r, g)); });
    }
    return shape;
}

/// Number of monic irreducibles of degree i over F_q: (1/i) sum_{d|i} mu(d) q^{i/d}.
inline mpz_class count_irreducibles(u64 q, unsigned i) {
    if (i < 1) throw InvalidArgument("count_irreducibles needs i >= 1");
    mpz_class total = 0;
    for (u64 d : nt::divisors(i)) {
        const int mu = nt::mobius(d);
        if (mu == 0) continue;
        mpz_class term;
        mpz_ui_pow_ui(term.get_mpz_t(), q, static_cast<unsigned long>(i / d));
        total += mu * term;
    }
    return total / i;
}

/// Minimal polynomial of a over the prime field.
inline Polynomial minimal_polynomial(const FieldElement& a) {
    const FieldCtx& L = a.ctx();
    Polynomial acc = Polynomial::constant(L.one());
    FieldElement conj = a;
    do {
        acc = acc * Polynomial(L, std::vector<FieldElement>{-conj, L.one()});
        conj = conj.pow(L.p());
    } while (!(conj == a));
    const FieldCtx Fp = make_field(L.p(), 1);
    std::vector<long long> coeffs;
    for (std::size_t i = 0; i < acc.size(); ++i) {
        if (!acc.coeff(i).in_prime_field()) throw VerificationFailure("minimal polynomial left F_p");
        coeffs.push_back(acc.coeff(i).coord(0));
    }
    return Polynomial::from_ints(Fp, coeffs);
}

/// Dense matrix over F_p.
struct MatrixFp {
    std::size_t rows = 0, cols = 0;
    u64 p = 2;
    std::vector<std::uint32_t> data;

    std::uint32_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::uint32_t& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
};

inline std::size_t rank(MatrixFp m) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
        if (pivot == m.rows) continue;
        for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(pivot, c), m.at(rank, c));
        const u64 inv = nt::inverse_mod(m.at(rank, col), m.p);
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == rank || m.at(r, col) == 0) continue;
            const u64 factor = nt::mulmod(m.at(r, col), inv, m.p);
            for (std::size_t c = col; c < m.cols; ++c)
                m.at(r, c) = static_cast<std::uint32_t>((m.at(r, c) + m.p - nt::mulmod(factor, m.at(rank, c), m.p)) % m.p);
        }
        ++rank;
    }
    return rank;
}

struct RootSpec {
    FieldElement alpha;
    unsigned max_derivative = 0;  // K: derivatives 0..K are used
};

/// Rows i = m .. m+count-1 of the vectors (C(i,k) alpha_j^{i-k})_{j, k <= K_j},
/// each entry flattened to its F_p coordinates. The alpha_j must be nonzero,
/// generate their fields, and be pairwise non-conjugate; count must equal
/// d = sum_j e_j (K_j + 1).
inline MatrixFp derivative_vector_matrix(const std::vector<RootSpec>& roots, u64 m, std::size_t count) {
    if (roots.empty()) throw InvalidArgument("derivative_vector_matrix needs at least one root");
    const u64 p = roots.front().alpha.ctx().p();
    std::size_t d = 0;
    std::vector<Polynomial> minpolys;
    for (const auto& spec : roots) {
        const FieldElement& a = spec.alpha;
        if (a.ctx().p() != p) throw InvalidArgument("roots over different characteristics");
        if (a.is_zero()) throw InvalidArgument("root alpha = 0 is degenerate");
        if (lies_in_proper_subfield(a)) throw InvalidArgument("root lies in a proper subfield");
        Polynomial mp = minimal_polynomial(a);
        for (const auto& other : minpolys)
            if (other == mp) throw InvalidArgument("roots are Galois conjugate");
        minpolys.push_back(std::move(mp));
        d += static_cast<std::size_t>(a.ctx().e()) * (spec.max_derivative + 1);
    }
    if (count != d) throw InvalidArgument("count must equal d = " + std::to_string(d));

    BinomialModP binom(p, m + d);
    MatrixFp out{d, d, p, std::vector<std::uint32_t>(d * d, 0)};
    for (std::size_t r = 0; r < d; ++r) {
        const u64 i = m + r;
        std::size_t col = 0;
        for (const auto& spec : roots) {
            const FieldCtx& L = spec.alpha.ctx();
            for (unsigned k = 0; k <= spec.max_derivative; ++k) {
                FieldElement v = L.zero();
                if (i >= k) v = L.from_int(static_cast<long long>(binom(i, k))) * spec.alpha.pow(i - k);
                for (unsigned c = 0; c < L.e(); ++c) out.at(r, col++) = v.coord(c);
            }
        }
    }
    return out;
}

// Text format "p^e: c0,c1,...,cn"; extension coefficients as a0+a1*t+a2*t^2.

inline std::string Polynomial::to_string() const {
    std::string out = std::to_string(ctx_.p()) + "^" + std::to_string(ctx_.e()) + ": ";
    if (c_.empty()) return out + "0";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) out += ',';
        out += FieldElement(ctx_, c_[i]).to_string();
    }
    return out;
}

namespace detail {

inline std::string_view strip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline u64 parse_u64(std::string_view s, std::string_view what) {
    s = strip(s);
    u64 v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw InvalidArgument("bad integer '" + std::string(s) + "' in " + std::string(what));
    return v;
}

inline FieldElement parse_element(std::string_view text, const FieldCtx& ctx) {
    ExtCoords c{};
    text = strip(text);
    if (text.empty()) throw InvalidArgument("empty coefficient");
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t plus = text.find('+', start);
        if (plus == std::string_view::npos) plus = text.size();
        std::string_view term = strip(text.substr(start, plus - start));
        u64 coef = 1, power = 0;
        const std::size_t tpos = term.find('t');
        if (tpos == std::string_view::npos) {
            coef = parse_u64(term, "coefficient");
        } else {
            std::string_view head = strip(term.substr(0, tpos));
            if (!head.empty()) {
                if (head.back() != '*') throw InvalidArgument("bad term '" + std::string(term) + "'");
                coef = parse_u64(head.substr(0, head.size() - 1), "coefficient");
            }
            std::string_view tail = strip(term.substr(tpos + 1));
            power = 1;
            if (!tail.empty()) {
                if (tail.front() != '^') throw InvalidArgument("bad term '" + std::string(term) + "'");
                power = parse_u64(tail.substr(1), "exponent");
            }
        }
        if (power >= ctx.e()) throw InvalidArgument("power of t exceeds extension degree");
        c[power] = static_cast<std::uint32_t>((c[power] + coef % ctx.p()) % ctx.p());
        start = plus + 1;
    }
    return {ctx, c};
}

}  // namespace detail

/// Parses "p^e: c0,...,cn"; the header must match ctx.
inline Polynomial parse_polynomial(std::string_view text, const FieldCtx& ctx) {
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos) throw InvalidArgument("polynomial text needs 'p^e:' header");
    std::string_view header = detail::strip(text.substr(0, colon));
    const std::size_t caret = header.find('^');
    if (caret == std::string_view::npos) throw InvalidArgument("polynomial header must be p^e");
    const u64 p = detail::parse_u64(header.substr(0, caret), "field header");
    const u64 e = detail::parse_u64(header.substr(caret + 1), "field header");
    if (p != ctx.p() || e != ctx.e())
        throw InvalidArgument("polynomial header " + std::string(header) + " does not match field " + ctx.describe());
    std::string_view body = detail::strip(text.substr(colon + 1));
    std::vector<ExtCoords> coeffs;
    std::size_t start = 0;
    while (start <= body.size()) {
        std::size_t comma = body.find(',', start);
        if (comma == std::string_view::npos) comma = body.size();
        coeffs.push_back(detail::parse_element(body.substr(start, comma - start), ctx).coords());
        start = comma + 1;
    }
    return {ctx, std::move(coeffs)};
}

}  // namespace polylab

// SPDX-License-Identifier: Apache-2.0
#pragma once

// Dense polynomial kernels over F_p, p < 2^31, on plain residue vectors
// (index i = coefficient of x^i). Products are accumulated lazily in 64-bit
// lanes and reduced only when the next batch could overflow.

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "polylab/errors.hpp"
#include "polylab/number_theory.hpp"

namespace polylab::detail::pk {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using Vec = std::vector<u32>;

inline constexpr std::size_t kKaratsubaThreshold = 64;

/// Number of products of residues that fit in a u64 on top of a value < p.
inline u64 lazy_budget(u64 p) {
    const u64 sq = (p - 1) * (p - 1);
    if (sq == 0) return UINT64_MAX;
    return (UINT64_MAX - p) / sq;
}

/// x mod p for any 64-bit x without a hardware divide.
struct Barrett {
    explicit Barrett(u64 p) : p(p), m(UINT64_MAX / p) {}
    u64 operator()(u64 x) const {
        const u64 q = static_cast<u64>((static_cast<unsigned __int128>(x) * m) >> 64);
        u64 r = x - q * p;
        if (r >= p) r -= p;
        if (r >= p) r -= p;
        return r;
    }
    u64 p, m;
};

inline void trim(Vec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline u32 add(u32 a, u32 b, u64 p) {
    const u64 s = static_cast<u64>(a) + b;
    return static_cast<u32>(s >= p ? s - p : s);
}
inline u32 sub(u32 a, u32 b, u64 p) { return a >= b ? a - b : static_cast<u32>(a + p - b); }
inline u32 mul(u32 a, u32 b, u64 p) { return static_cast<u32>(static_cast<u64>(a) * b % p); }
inline u32 inv(u32 a, u64 p) { return static_cast<u32>(nt::inverse_mod(a, p)); }

inline Vec add(const Vec& a, const Vec& b, u64 p) {
    Vec r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0, p);
    trim(r);
    return r;
}
inline Vec sub(const Vec& a, const Vec& b, u64 p) {
    Vec r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0, p);
    trim(r);
    return r;
}
inline Vec scale(const Vec& a, u32 c, u64 p) {
    if (c == 0) return {};
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mul(a[i], c, p);
    return r;
}

// acc[i + j] += a[i] * b[j], rows reduced every `budget` rows.
inline void schoolbook_into(std::span<const u32> a, std::span<const u32> b, std::span<u32> out, u64 p) {
    if (a.empty() || b.empty()) return;
    const u64 budget = lazy_budget(p);
    std::vector<u64> acc(a.size() + b.size() - 1, 0);
    u64 pending = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const u64 ai = a[i];
        if (ai == 0) continue;
        u64* row = acc.data() + i;
        for (std::size_t j = 0; j < b.size(); ++j) row[j] += ai * b[j];
        if (++pending == budget) {
            for (auto& v : acc) v %= p;
            pending = 0;
        }
    }
    const Barrett red(p);
    for (std::size_t k = 0; k < acc.size(); ++k) out[k] = static_cast<u32>(red(acc[k] + out[k]));
}

inline Vec schoolbook(std::span<const u32> a, std::span<const u32> b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Vec out(a.size() + b.size() - 1, 0);
    schoolbook_into(a, b, out, p);
    return out;
}

namespace kara {

// out (size 2n-1) = a * b for a, b of equal size n.
inline void karatsuba_equal(const u32* a, const u32* b, std::size_t n, u32* out, u64 p) {
    if (n < kKaratsubaThreshold) {
        std::fill(out, out + 2 * n - 1, 0u);
        schoolbook_into({a, n}, {b, n}, {out, 2 * n - 1}, p);
        return;
    }
    const std::size_t lo = n / 2, hi = n - lo;
    // a = a0 + x^lo a1, with a0 of size lo and a1 of size hi >= lo.
    Vec sa(hi), sb(hi);
    for (std::size_t i = 0; i < hi; ++i) {
        sa[i] = add(i < lo ? a[i] : 0u, a[lo + i], p);
        sb[i] = add(i < lo ? b[i] : 0u, b[lo + i], p);
    }
    Vec z0(2 * lo - 1), z2(2 * hi - 1), z1(2 * hi - 1);
    karatsuba_equal(a, b, lo, z0.data(), p);
    karatsuba_equal(a + lo, b + lo, hi, z2.data(), p);
    karatsuba_equal(sa.data(), sb.data(), hi, z1.data(), p);
    for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = sub(z1[i], z0[i], p);
    for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = sub(z1[i], z2[i], p);
    std::fill(out, out + 2 * n - 1, 0u);
    for (std::size_t i = 0; i < z0.size(); ++i) out[i] = z0[i];
    for (std::size_t i = 0; i < z2.size(); ++i) out[2 * lo + i] = add(out[2 * lo + i], z2[i], p);
    for (std::size_t i = 0; i < z1.size(); ++i) out[lo + i] = add(out[lo + i], z1[i], p);
}

}  // namespace kara

/// Product; schoolbook below kKaratsubaThreshold, Karatsuba above.
inline Vec mul(std::span<const u32> a, std::span<const u32> b, u64 p) {
    if (a.empty() || b.empty()) return {};
    if (std::min(a.size(), b.size()) < kKaratsubaThreshold) {
        Vec r = schoolbook(a, b, p);
        trim(r);
        return r;
    }
    if (a.size() < b.size()) std::swap(a, b);
    // Split the longer operand into chunks of the shorter one's length.
    const std::size_t n = b.size();
    Vec out(a.size() + b.size() - 1, 0);
    Vec chunk(n), prod(2 * n - 1);
    for (std::size_t start = 0; start < a.size(); start += n) {
        const std::size_t len = std::min(n, a.size() - start);
        std::fill(chunk.begin(), chunk.end(), 0u);
        std::copy(a.begin() + start, a.begin() + start + len, chunk.begin());
        kara::karatsuba_equal(chunk.data(), b.data(), n, prod.data(), p);
        const std::size_t usable = std::min(prod.size(), out.size() - start);
        for (std::size_t i = 0; i < usable; ++i) out[start + i] = add(out[start + i], prod[i], p);
    }
    trim(out);
    return out;
}

/// Quotient and remainder; divisor must be nonzero.
inline std::pair<Vec, Vec> divmod(const Vec& a, const Vec& b, u64 p) {
    if (b.empty()) throw InvalidArgument("polynomial division by zero");
    if (a.size() < b.size()) return {{}, a};
    Vec r = a;
    const std::size_t db = b.size() - 1;
    Vec q(a.size() - db, 0);
    const u32 li = inv(b.back(), p);
    const Barrett red(p);
    for (std::size_t k = r.size(); k-- > db;) {
        const u32 c = static_cast<u32>(red(static_cast<u64>(r[k]) * li));
        if (c == 0) continue;
        q[k - db] = c;
        const u64 negc = p - c;
        u32* base = r.data() + (k - db);
        for (std::size_t i = 0; i < db; ++i) base[i] = static_cast<u32>(red(base[i] + negc * b[i]));
        r[k] = 0;
    }
    trim(q);
    r.resize(db);
    trim(r);
    return {q, r};
}

inline Vec rem(const Vec& a, const Vec& b, u64 p) { return divmod(a, b, p).second; }

inline Vec make_monic(Vec a, u64 p) {
    if (a.empty() || a.back() == 1) return a;
    const u32 li = inv(a.back(), p);
    for (auto& c : a) c = mul(c, li, p);
    return a;
}

/// Monic gcd (zero when both inputs are zero).
inline Vec gcd(Vec a, Vec b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        a = rem(a, b, p);
        std::swap(a, b);
    }
    return make_monic(std::move(a), p);
}

/// Arithmetic modulo a fixed monic f of degree m >= 1. Reduction of a product
/// of two reduced residues uses the table x^{m+j} mod f, so it is a lazily
/// accumulated matrix-vector product rather than a sequential long division.
class ModContext {
public:
    ModContext(Vec f, u64 p) : f_(std::move(f)), p_(p) {
        trim(f_);
        if (f_.size() < 2 || f_.back() != 1) throw InvalidArgument("ModContext needs a monic modulus of degree >= 1");
        m_ = f_.size() - 1;
        if (m_ >= 2) {
            table_.assign((m_ - 1) * m_, 0);
            // row 0: x^m = -sum f_i x^i
            for (std::size_t i = 0; i < m_; ++i) table_[i] = f_[i] ? static_cast<u32>(p_ - f_[i]) : 0;
            const Barrett red(p_);
            for (std::size_t j = 1; j + 1 < m_; ++j) {
                const u32* prev = &table_[(j - 1) * m_];
                u32* row = &table_[j * m_];
                const u64 negtop = (p_ - prev[m_ - 1]) % p_;
                row[0] = static_cast<u32>(negtop * f_[0] % p_);
                for (std::size_t i = 1; i < m_; ++i) row[i] = static_cast<u32>(red(prev[i - 1] + negtop * f_[i]));
            }
        }
    }

    std::size_t degree() const { return m_; }
    u64 p() const { return p_; }
    const Vec& modulus() const { return f_; }

    /// Reduce a polynomial of degree <= 2m-2.
    Vec reduce_short(const Vec& a) const {
        if (a.size() <= m_) {
            Vec r = a;
            trim(r);
            return r;
        }
        if (a.size() > 2 * m_ - 1) return rem(a, f_, p_);
        const u64 budget = lazy_budget(p_);
        std::vector<u64> acc(a.begin(), a.begin() + m_);
        u64 pending = 0;
        for (std::size_t j = 0; j + m_ < a.size(); ++j) {
            const u64 h = a[m_ + j];
            if (h == 0) continue;
            const u32* row = &table_[j * m_];
            for (std::size_t i = 0; i < m_; ++i) acc[i] += h * row[i];
            if (++pending == budget) {
                for (auto& v : acc) v %= p_;
                pending = 0;
            }
        }
        Vec r(m_);
        const Barrett red(p_);
        for (std::size_t i = 0; i < m_; ++i) r[i] = static_cast<u32>(red(acc[i]));
        trim(r);
        return r;
    }

    Vec reduce(const Vec& a) const { return a.size() > 2 * m_ - 1 ? rem(a, f_, p_) : reduce_short(a); }

    Vec mulmod(const Vec& a, const Vec& b) const { return reduce_short(mul(a, b, p_)); }
    Vec sqrmod(const Vec& a) const { return mulmod(a, a); }

    template <class Exponent>
    Vec powmod(Vec base, Exponent exp) const {
        base = reduce(base);
        Vec r = reduce(Vec{1});
        // left-to-right over bits of exp
        std::vector<bool> bits;
        while (exp > 0) {
            bits.push_back((exp & 1) != 0);
            exp >>= 1;
        }
        for (std::size_t k = bits.size(); k-- > 0;) {
            r = sqrmod(r);
            if (bits[k]) r = mulmod(r, base);
        }
        return r;
    }

    /// x * a mod f for reduced a.
    Vec mul_x(const Vec& a) const {
        Vec r(m_, 0);
        const u32 top = a.size() == m_ ? a[m_ - 1] : 0;
        for (std::size_t i = 1; i < m_; ++i) r[i] = i - 1 < a.size() ? a[i - 1] : 0;
        if (top) {
            const u64 negtop = p_ - top;
            r[0] = 0;
            const Barrett red(p_);
            for (std::size_t i = 0; i < m_; ++i) r[i] = static_cast<u32>(red(r[i] + negtop * f_[i]));
        }
        trim(r);
        return r;
    }

private:
    Vec f_;
    u64 p_;
    std::size_t m_ = 0;
    Vec table_;  // row j: x^{m+j} mod f, length m
};

/// sum_i h_i * rows[i] for an m x m row-major table, reduced mod p.
inline Vec row_combination(const Vec& rows, std::size_t m, const Vec& h, u64 p) {
    const u64 budget = lazy_budget(p);
    std::vector<u64> acc(m, 0);
    u64 pending = 0;
    std::size_t i = 0;
    // four rows per pass over acc
    if (budget >= 8) {
        for (; i + 4 <= h.size(); i += 4) {
            const u64 c0 = h[i], c1 = h[i + 1], c2 = h[i + 2], c3 = h[i + 3];
            const u32* r0 = &rows[i * m];
            const u32* r1 = r0 + m;
            const u32* r2 = r1 + m;
            const u32* r3 = r2 + m;
            for (std::size_t k = 0; k < m; ++k) acc[k] += c0 * r0[k] + c1 * r1[k] + c2 * r2[k] + c3 * r3[k];
            pending += 4;
            if (pending + 4 > budget) {
                for (auto& v : acc) v %= p;
                pending = 0;
            }
        }
    }
    for (; i < h.size(); ++i) {
        const u64 c = h[i];
        if (c == 0) continue;
        const u32* row = &rows[i * m];
        for (std::size_t k = 0; k < m; ++k) acc[k] += c * row[k];
        if (++pending == budget) {
            for (auto& v : acc) v %= p;
            pending = 0;
        }
    }
    Vec r(m);
    const Barrett red(p);
    for (std::size_t k = 0; k < m; ++k) r[k] = static_cast<u32>(red(acc[k]));
    trim(r);
    return r;
}

/// Matrix of the p-power Frobenius modulo f: row i holds x^{p i} mod f, so
/// h^p mod f = sum_i h_i * row_i for any residue h.
class FrobeniusMatrix {
public:
    explicit FrobeniusMatrix(const ModContext& mc) : m_(mc.degree()), p_(mc.p()), rows_(m_ * m_, 0) {
        Vec row{1};
        if (16 * p_ <= m_) {
            // small p: x^{p(i+1)} by p shifts of x^{p i}
            for (std::size_t i = 0; i < m_; ++i) {
                std::copy(row.begin(), row.end(), rows_.begin() + i * m_);
                for (u64 s = 0; s < p_ && i + 1 < m_; ++s) row = mc.mul_x(row);
            }
            return;
        }
        // Multiplication by g = x^p mod f as a table: row j holds g x^j mod f.
        Vec times_g(m_ * m_, 0);
        Vec gx = mc.powmod(Vec{0, 1}, p_);
        for (std::size_t j = 0; j < m_; ++j) {
            std::copy(gx.begin(), gx.end(), times_g.begin() + j * m_);
            if (j + 1 < m_) gx = mc.mul_x(gx);
        }
        for (std::size_t i = 0; i < m_; ++i) {
            std::copy(row.begin(), row.end(), rows_.begin() + i * m_);
            if (i + 1 < m_) row = row_combination(times_g, m_, row, p_);
        }
    }

    Vec apply(const Vec& h) const { return row_combination(rows_, m_, h, p_); }

private:
    std::size_t m_;
    u64 p_;
    Vec rows_;
};

}  // namespace polylab::detail::pk

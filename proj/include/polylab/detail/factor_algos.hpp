// SPDX-License-Identifier: Apache-2.0
#pragma once

// Factorization over F_q written once against the ring interface of
// poly_rings.hpp: squarefree decomposition with p-th root peeling, distinct
// degree split on x^{q^d} - x, and Cantor-Zassenhaus equal degree split.

#include <algorithm>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "polylab/detail/poly_rings.hpp"
#include "polylab/number_theory.hpp"
#include "polylab/rng.hpp"

namespace polylab::detail {

template <class R>
using PolyOf = typename R::Poly;

template <class R>
void squarefree_rec(const R& r, const PolyOf<R>& f, unsigned outer, std::map<unsigned, PolyOf<R>>& acc) {
    if (r.deg(f) <= 0) return;
    auto push = [&](const PolyOf<R>& g, unsigned mult) {
        if (r.deg(g) <= 0) return;
        auto it = acc.find(mult);
        if (it == acc.end())
            acc.emplace(mult, g);
        else
            it->second = r.mul(it->second, g);
    };
    const PolyOf<R> df = r.derivative(f);
    PolyOf<R> c = r.gcd(f, df);
    PolyOf<R> w = r.div(f, c);
    unsigned i = 1;
    while (!r.is_one(w) && r.deg(w) > 0) {
        PolyOf<R> y = r.gcd(w, c);
        push(r.monic(r.div(w, y)), i * outer);
        w = y;
        c = r.div(c, y);
        ++i;
    }
    if (r.deg(c) > 0) squarefree_rec(r, r.monic(r.pth_root(c)), outer * static_cast<unsigned>(r.p()), acc);
}

/// f monic, nonzero. Returns squarefree monic parts with their multiplicities,
/// ordered by multiplicity.
template <class R>
std::vector<std::pair<PolyOf<R>, unsigned>> squarefree_decomposition(const R& r, const PolyOf<R>& f) {
    std::map<unsigned, PolyOf<R>> acc;
    squarefree_rec(r, f, 1, acc);
    std::vector<std::pair<PolyOf<R>, unsigned>> out;
    for (auto& [m, g] : acc) out.emplace_back(std::move(g), m);
    return out;
}

/// f monic squarefree. Returns (product of all irreducible factors of degree d, d).
/// x^{q^d} residues are accumulated over blocks so that one gcd per block is
/// taken against the remaining cofactor.
template <class R>
std::vector<std::pair<PolyOf<R>, unsigned>> distinct_degree_split(const R& r, const PolyOf<R>& f) {
    std::vector<std::pair<PolyOf<R>, unsigned>> out;
    if (r.deg(f) <= 0) return out;
    if (r.deg(f) == 1) {
        out.emplace_back(f, 1);
        return out;
    }
    auto mod = std::make_unique<typename R::Modulus>(r, f);
    std::size_t mod_degree = static_cast<std::size_t>(r.deg(f));
    PolyOf<R> x = r.reduce(*mod, r.x());
    PolyOf<R> rest = f;
    PolyOf<R> h = x;
    constexpr unsigned kBlock = 8;
    unsigned d = 0;
    while (2 * (d + 1) <= static_cast<unsigned>(r.deg(rest))) {
        // One block of Frobenius steps d+1 .. d+len.
        const unsigned len = std::min<unsigned>(kBlock, static_cast<unsigned>(r.deg(rest)) / 2 - d);
        std::vector<PolyOf<R>> diffs;
        diffs.reserve(len);
        PolyOf<R> prod = r.one();
        for (unsigned k = 0; k < len; ++k) {
            h = r.frob(*mod, h);
            diffs.push_back(r.sub(h, x));
            prod = r.mulmod(*mod, prod, diffs.back());
        }
        PolyOf<R> block = r.gcd(prod, rest);
        if (r.deg(block) > 0) {
            for (unsigned k = 0; k < len && r.deg(block) > 0; ++k) {
                PolyOf<R> g = r.gcd(diffs[k], block);
                if (r.deg(g) > 0) {
                    out.emplace_back(g, d + k + 1);
                    block = r.div(block, g);
                    rest = r.div(rest, g);
                }
            }
        }
        d += len;
        // Work modulo the remaining cofactor once it is small enough to repay
        // the cost of a new Frobenius table (about m^3 against steps * m^2).
        const std::size_t m_new = static_cast<std::size_t>(std::max(r.deg(rest), 0));
        if (m_new >= 2 && 2 * (d + 1) <= m_new) {
            const double steps = static_cast<double>(m_new / 2 - d);
            const double mn = static_cast<double>(m_new), mo = static_cast<double>(mod_degree);
            if (mn * mn * mn + steps * mn * mn < steps * mo * mo) {
                mod = std::make_unique<typename R::Modulus>(r, rest);
                mod_degree = m_new;
                h = r.reduce(*mod, h);
                x = r.reduce(*mod, r.x());
            }
        }
    }
    if (r.deg(rest) > 0) out.emplace_back(r.monic(rest), static_cast<unsigned>(r.deg(rest)));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    return out;
}

template <class R>
void equal_degree_rec(const R& r, const PolyOf<R>& f, unsigned d, Rng& rng, std::vector<PolyOf<R>>& out) {
    const int n = r.deg(f);
    if (n <= 0) return;
    if (static_cast<unsigned>(n) == d) {
        out.push_back(r.monic(f));
        return;
    }
    typename R::Modulus mod(r, f);
    const u64 q = r.q();
    for (;;) {
        PolyOf<R> a = r.random_below(rng, static_cast<std::size_t>(n));
        if (r.deg(a) < 1) continue;
        PolyOf<R> g;
        if (q % 2 == 1) {
            // a^{(q^d-1)/2} = (a^{1+q+...+q^{d-1}})^{(q-1)/2}
            PolyOf<R> b = a, norm = r.reduce(mod, a);
            for (unsigned j = 1; j < d; ++j) {
                b = r.frob(mod, b);
                norm = r.mulmod(mod, norm, b);
            }
            PolyOf<R> t = r.powmod(mod, norm, (q - 1) / 2);
            g = r.gcd(r.sub(t, r.one()), f);
        } else {
            // absolute trace map a + a^2 + ... + a^{2^{ed-1}}
            PolyOf<R> cur = r.reduce(mod, a), tr = cur;
            const unsigned steps = r.e() * d;
            for (unsigned k = 1; k < steps; ++k) {
                cur = r.mulmod(mod, cur, cur);
                tr = r.add(tr, cur);
            }
            g = r.gcd(tr, f);
        }
        if (r.deg(g) > 0 && r.deg(g) < n) {
            equal_degree_rec(r, g, d, rng, out);
            equal_degree_rec(r, r.div(f, g), d, rng, out);
            return;
        }
    }
}

/// f monic squarefree with every irreducible factor of degree d.
template <class R>
std::vector<PolyOf<R>> equal_degree_split(const R& r, const PolyOf<R>& f, unsigned d, Rng& rng) {
    if (d == 0 || r.deg(f) % static_cast<int>(d) != 0)
        throw InvalidArgument("equal_degree_split: degree is not a multiple of d");
    std::vector<PolyOf<R>> out;
    equal_degree_rec(r, f, d, rng, out);
    return out;
}

/// Rabin's test: x^{q^n} = x mod f and gcd(x^{q^{n/l}} - x, f) = 1 for primes l | n.
template <class R>
bool is_irreducible(const R& r, const PolyOf<R>& f) {
    const int n = r.deg(f);
    if (n < 1) return false;
    if (n == 1) return true;
    typename R::Modulus mod(r, f);
    const PolyOf<R> x = r.reduce(mod, r.x());
    std::vector<PolyOf<R>> iter{x};
    for (int k = 1; k <= n; ++k) iter.push_back(r.frob(mod, iter.back()));
    if (!r.is_zero(r.sub(iter[static_cast<std::size_t>(n)], x))) return false;
    for (auto [ell, k] : nt::factorize(static_cast<u64>(n))) {
        const PolyOf<R> g = r.gcd(r.sub(iter[static_cast<std::size_t>(n / static_cast<int>(ell))], x), f);
        if (r.deg(g) != 0) return false;
    }
    return true;
}

/// Degree/multiplicity shape of a monic polynomial with x stripped:
/// entries (degree, multiplicity, number of distinct factors with that pair).
struct ShapeEntry {
    unsigned degree;
    unsigned multiplicity;
    unsigned count;
};

template <class R>
std::vector<ShapeEntry> factor_shape(const R& r, const PolyOf<R>& monic_f) {
    std::vector<ShapeEntry> out;
    for (const auto& [part, mult] : squarefree_decomposition(r, monic_f)) {
        for (const auto& [prod, d] : distinct_degree_split(r, part)) {
            out.push_back({d, mult, static_cast<unsigned>(r.deg(prod)) / d});
        }
    }
    return out;
}

}  // namespace polylab::detail

// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <map>

#include "polylab/poly_algebra.hpp"

using namespace polylab;

namespace {

Polynomial P(const FieldCtx& F, std::vector<long long> c) { return Polynomial::from_ints(F, c); }

Polynomial random_poly(const FieldCtx& F, int deg, Rng& rng, bool monic) {
    std::vector<ExtCoords> c(static_cast<std::size_t>(deg) + 1);
    for (auto& x : c) x = F.element(rng.uniform_below(F.q())).coords();
    if (monic) c.back() = F.one().coords();
    return {F, c};
}

/// Enumerates the monic polynomials of degree n over F by index.
Polynomial monic_by_index(const FieldCtx& F, int n, u64 idx) {
    std::vector<ExtCoords> c(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i) {
        c[static_cast<std::size_t>(i)] = F.element(idx % F.q()).coords();
        idx /= F.q();
    }
    c.back() = F.one().coords();
    return {F, c};
}

void check_factorization(const Polynomial& f, const Factorization& fac) {
    ASSERT_EQ(fac.expand(), f) << f.to_string();
    for (std::size_t i = 0; i < fac.factors.size(); ++i) {
        EXPECT_TRUE(fac.factors[i].first.is_monic());
        EXPECT_TRUE(is_irreducible(fac.factors[i].first)) << fac.factors[i].first.to_string();
        if (i) {
            EXPECT_TRUE(canonical_less(fac.factors[i - 1].first, fac.factors[i].first));
        }
    }
}

}  // namespace

TEST(PolyArith, Examples) {
    const FieldCtx F2 = make_field(2, 1), F3 = make_field(3, 1);
    EXPECT_EQ(gcd(P(F2, {1, 0, 1}), P(F2, {1, 1})), P(F2, {1, 1}));
    const Polynomial f = P(F3, {2, 1, 1});
    EXPECT_EQ(eval(f, F3.zero()), F3.from_int(2));
    EXPECT_EQ(P(F3, {1, 1}) * P(F3, {2, 1}), P(F3, {2, 0, 1}));
    EXPECT_THROW(divmod(f, Polynomial(F3)), InvalidArgument);
}

TEST(PolyArith, DivmodAndKaratsubaAgree) {
    for (auto F : {make_field(101, 1), make_field(2147483629, 1), make_field(5, 2, std::nullopt, 3)}) {
        Rng rng(2, F.p());
        for (int t = 0; t < 20; ++t) {
            const Polynomial a = random_poly(F, 150 + t, rng, false), b = random_poly(F, 90, rng, false);
            const auto [q, r] = divmod(a * b + P(F, {1, 2, 3}), b);
            EXPECT_LT(r.degree(), b.degree());
            EXPECT_EQ(q * b + r, a * b + P(F, {1, 2, 3}));
            const FieldElement x = F.element(rng.uniform_below(F.q()));
            EXPECT_EQ(eval(a * b, x), eval(a, x) * eval(b, x));
        }
    }
}

TEST(PolyArith, PowmodMatchesRepeatedMultiplication) {
    const FieldCtx F = make_field(13, 1);
    Rng rng(4, 4);
    const Polynomial m = random_poly(F, 20, rng, true), a = random_poly(F, 25, rng, false);
    Polynomial acc = P(F, {1});
    for (u64 k = 0; k < 40; ++k) {
        EXPECT_EQ(powmod(a, k, m), divmod(acc, m).second);
        acc = divmod(acc * a, m).second;
    }
}

TEST(Hasse, Examples) {
    const FieldCtx F2 = make_field(2, 1);
    const Polynomial x2 = P(F2, {0, 0, 1});
    EXPECT_EQ(hasse_derivative(x2, 0), x2);
    EXPECT_TRUE(hasse_derivative(x2, 1).is_zero());
    EXPECT_EQ(hasse_derivative(x2, 2), P(F2, {1}));
}

TEST(Hasse, ProductRule) {
    for (auto F : {make_field(2, 1), make_field(3, 1), make_field(7, 2, std::nullopt, 1)}) {
        Rng rng(5, F.p());
        for (int t = 0; t < 1000 / 3; ++t) {
            const Polynomial f = random_poly(F, static_cast<int>(rng.uniform_below(12)), rng, false);
            const Polynomial g = random_poly(F, static_cast<int>(rng.uniform_below(12)), rng, false);
            const unsigned k = static_cast<unsigned>(rng.uniform_below(6));
            Polynomial rhs(F);
            for (unsigned i = 0; i <= k; ++i) rhs = rhs + hasse_derivative(f, i) * hasse_derivative(g, k - i);
            EXPECT_EQ(hasse_derivative(f * g, k), rhs);
        }
    }
}

TEST(Hasse, LucasMatchesPascal) {
    const u64 p = 5;
    BinomialModP binom(p, 200);
    std::vector<std::vector<u64>> pascal(201, std::vector<u64>(201, 0));
    for (std::size_t n = 0; n <= 200; ++n) {
        pascal[n][0] = 1;
        for (std::size_t k = 1; k <= n; ++k) pascal[n][k] = (pascal[n - 1][k - 1] + pascal[n - 1][k]) % p;
        for (std::size_t k = 0; k <= n; ++k) EXPECT_EQ(binom(n, k), pascal[n][k]);
    }
}

TEST(Taylor, Examples) {
    const FieldCtx F2 = make_field(2, 1);
    auto t = taylor_at(P(F2, {0, 0, 1}), F2.zero());
    ASSERT_EQ(t.size(), 3u);
    EXPECT_TRUE(t[0].is_zero() && t[1].is_zero() && t[2].is_one());
    t = taylor_at(P(F2, {0, 1, 1}), F2.one());
    EXPECT_TRUE(t[0].is_zero() && t[1].is_one() && t[2].is_one());
    const FieldCtx F7 = make_field(7, 1);
    t = taylor_at(P(F7, {4}), F7.from_int(3));
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0], F7.from_int(4));
}

TEST(Taylor, ReconstructsAndMatchesHasse) {
    const FieldCtx F = make_field(3, 1);
    const FieldCtx L = make_field(3, 3, std::nullopt, 2);
    Rng rng(6, 6);
    for (int trial = 0; trial < 100; ++trial) {
        const Polynomial f = random_poly(F, 1 + static_cast<int>(rng.uniform_below(15)), rng, false);
        const FieldElement a = L.element(rng.uniform_below(L.q()));
        const auto t = taylor_at(f, a);
        // lift f into L and rebuild sum_k t_k (x - a)^k
        std::vector<FieldElement> lifted;
        for (std::size_t i = 0; i < f.size(); ++i) lifted.push_back(L.from_int(f.coeff(i).coord(0)));
        const Polynomial fl(L, lifted);
        Polynomial acc(L), power = Polynomial::constant(L.one());
        const Polynomial lin(L, std::vector<FieldElement>{-a, L.one()});
        for (std::size_t k = 0; k < t.size(); ++k) {
            acc = acc + t[k] * power;
            power = power * lin;
            EXPECT_EQ(t[k], eval(hasse_derivative(fl, static_cast<unsigned>(k)), a));
        }
        EXPECT_EQ(acc, fl);
    }
}

TEST(RootMultiplicity, Examples) {
    const FieldCtx F5 = make_field(5, 1), F2 = make_field(2, 1);
    const Polynomial lin = P(F5, {-1, 1});
    EXPECT_EQ(root_multiplicity(lin * lin * lin, F5.one()), 3u);
    EXPECT_EQ(root_multiplicity(lin, F5.from_int(2)), 0u);
    EXPECT_EQ(root_multiplicity(P(F2, {1, 0, 1}), F2.one()), 2u);
    EXPECT_THROW(root_multiplicity(Polynomial(F5), F5.one()), InvalidArgument);
}

TEST(RootMultiplicity, AddsUnderMultiplication) {
    const FieldCtx F = make_field(3, 1);
    Rng rng(8, 8);
    for (int t = 0; t < 200; ++t) {
        const Polynomial f = random_poly(F, 1 + static_cast<int>(rng.uniform_below(10)), rng, true);
        const FieldElement a = F.element(rng.uniform_below(3));
        const unsigned r = static_cast<unsigned>(rng.uniform_below(6));
        Polynomial g = f;
        for (unsigned i = 0; i < r; ++i) g = g * Polynomial(F, std::vector<FieldElement>{-a, F.one()});
        EXPECT_EQ(root_multiplicity(g, a), root_multiplicity(f, a) + r);
    }
}

TEST(Factorize, Examples) {
    const FieldCtx F2 = make_field(2, 1), F5 = make_field(5, 1);
    const auto fac = factorize(P(F2, {0, 1, 0, 0, 1}), 1);
    ASSERT_EQ(fac.factors.size(), 3u);
    EXPECT_EQ(fac.factors[0].first, P(F2, {0, 1}));
    EXPECT_EQ(fac.factors[1].first, P(F2, {1, 1}));
    EXPECT_EQ(fac.factors[2].first, P(F2, {1, 1, 1}));
    const Polynomial phi = P(F5, {2, 0, 1});
    ASSERT_TRUE(is_irreducible(phi));
    const auto single = factorize(phi, 3);
    ASSERT_EQ(single.factors.size(), 1u);
    EXPECT_EQ(single.factors[0], std::make_pair(phi, 1u));
    const auto sq = factorize(P(F5, {-1, 0, 1}), 0);
    ASSERT_EQ(sq.factors.size(), 2u);
    EXPECT_EQ(sq.factors[0].first, P(F5, {1, 1}));
    EXPECT_EQ(sq.factors[1].first, P(F5, {4, 1}));
    EXPECT_THROW(factorize(Polynomial(F5)), InvalidArgument);
}

TEST(Factorize, DeterministicGivenSeed) {
    const FieldCtx F = make_field(101, 1);
    Rng rng(9, 9);
    for (int t = 0; t < 20; ++t) {
        const Polynomial f = random_poly(F, 30, rng, false);
        EXPECT_EQ(factorize(f, 5), factorize(f, 5));
        EXPECT_EQ(factorize(f, 5), factorize(f, 6));  // canonical order hides seed
    }
}

TEST(Factorize, ExhaustiveSmallFields) {
    for (u64 p : {2, 3}) {
        const FieldCtx F = make_field(p, 1);
        for (int n = 1; n <= 6; ++n) {
            const u64 count = nt::checked_pow(p, static_cast<unsigned>(n));
            for (u64 idx = 0; idx < count; ++idx) {
                const Polynomial f = monic_by_index(F, n, idx);
                check_factorization(f, factorize(f, idx));
            }
        }
    }
}

TEST(Factorize, ExtensionFieldsAndRepeatedFactors) {
    for (auto F : {make_field(2, 3, std::nullopt, 1), make_field(3, 2, std::nullopt, 1), make_field(5, 2, std::nullopt, 7)}) {
        Rng rng(10, F.q());
        for (int t = 0; t < 40; ++t) {
            Polynomial f = random_poly(F, 1 + static_cast<int>(rng.uniform_below(8)), rng, false);
            const Polynomial g = random_poly(F, 1 + static_cast<int>(rng.uniform_below(3)), rng, true);
            f = f * g * g;
            for (u64 i = 0; i < F.p(); ++i) f = f * g;  // a p-th power piece
            check_factorization(f, factorize(f, static_cast<u64>(t)));
        }
    }
}

TEST(Factorize, LargePrimeRandom) {
    const FieldCtx F = make_field(10000079, 1);
    Rng rng(12, 12);
    for (int t = 0; t < 10; ++t) {
        const Polynomial f = random_poly(F, 60 + 10 * t, rng, false);
        check_factorization(f, factorize(f, 1));
    }
}

TEST(Factorize, ShapeMatchesFullFactorization) {
    const FieldCtx F = make_field(7, 1);
    Rng rng(13, 13);
    for (int t = 0; t < 200; ++t) {
        Polynomial f = random_poly(F, 1 + static_cast<int>(rng.uniform_below(25)), rng, false);
        if (t % 3 == 0) f = f * f * P(F, {0, 1});
        const auto shape = factor_shape(f);
        std::map<std::pair<unsigned, unsigned>, unsigned> from_shape, from_full;
        for (const auto& e : shape.entries) from_shape[{e.degree, e.multiplicity}] += e.count;
        unsigned xm = 0;
        for (const auto& [phi, m] : factorize(f).factors) {
            if (phi == P(F, {0, 1}))
                xm = m;
            else
                ++from_full[{static_cast<unsigned>(phi.degree()), m}];
        }
        EXPECT_EQ(from_shape, from_full);
        EXPECT_EQ(shape.x_multiplicity, xm);
    }
}

TEST(Irreducible, Examples) {
    const FieldCtx F2 = make_field(2, 1), F3 = make_field(3, 1);
    EXPECT_TRUE(is_irreducible(P(F2, {1, 1, 1})));
    EXPECT_TRUE(is_irreducible(P(F3, {1, 0, 1})));
    EXPECT_FALSE(is_irreducible(P(F3, {0, 0, 1})));
    EXPECT_THROW(is_irreducible(P(F3, {1})), InvalidArgument);
    EXPECT_THROW(is_irreducible(P(F3, {1, 2})), InvalidArgument);
}

TEST(CountIrreducibles, Examples) {
    EXPECT_EQ(count_irreducibles(2, 2), 1);
    EXPECT_EQ(count_irreducibles(2, 4), 3);
    EXPECT_EQ(count_irreducibles(5, 1), 5);
}

TEST(CountIrreducibles, DivisorSumIdentity) {
    for (u64 q : {2, 3, 4, 9, 101}) {
        for (unsigned i = 1; i <= 12; ++i) {
            mpz_class total = 0;
            for (u64 d : nt::divisors(i)) total += mpz_class(static_cast<unsigned long>(d)) * count_irreducibles(q, static_cast<unsigned>(d));
            mpz_class qi;
            mpz_ui_pow_ui(qi.get_mpz_t(), q, i);
            EXPECT_EQ(total, qi);
        }
    }
}

TEST(DerivativeMatrix, Examples) {
    const FieldCtx F4 = make_field(2, 2, std::vector<u64>{1, 1, 1});
    const MatrixFp m = derivative_vector_matrix({{F4.gen(), 0}}, 0, 2);
    EXPECT_EQ(m.data, std::vector<std::uint32_t>({1, 0, 0, 1}));
    EXPECT_EQ(rank(m), 2u);
    const FieldCtx F5 = make_field(5, 1);
    const MatrixFp one = derivative_vector_matrix({{F5.from_int(2), 0}}, 0, 1);
    EXPECT_EQ(rank(one), 1u);
    EXPECT_THROW(derivative_vector_matrix({{F5.one(), 0}, {F5.one(), 0}}, 0, 2), InvalidArgument);
    EXPECT_THROW(derivative_vector_matrix({{F4.one(), 0}}, 0, 2), InvalidArgument);
    EXPECT_THROW(derivative_vector_matrix({{F5.from_int(2), 1}}, 0, 1), InvalidArgument);
}

TEST(TextFormat, RoundTrip) {
    const FieldCtx F = make_field(7, 3, std::nullopt, 1);
    Rng rng(14, 14);
    for (int t = 0; t < 50; ++t) {
        const Polynomial f = random_poly(F, static_cast<int>(rng.uniform_below(10)), rng, false);
        EXPECT_EQ(parse_polynomial(f.to_string(), F), f);
    }
    const FieldCtx F5 = make_field(5, 1);
    EXPECT_EQ(P(F5, {1, 0, 4}).to_string(), "5^1: 1,0,4");
    EXPECT_EQ(parse_polynomial("5^1: 1,0,4", F5), P(F5, {1, 0, 4}));
    EXPECT_THROW(parse_polynomial("7^1: 1", F5), InvalidArgument);
}

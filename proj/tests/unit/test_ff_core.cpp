// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "polylab/ff_core.hpp"
#include "polylab/number_theory.hpp"
#include "polylab/rng.hpp"

using namespace polylab;

namespace {

FieldElement random_element(const FieldCtx& F, Rng& rng) { return F.element(rng.uniform_below(F.q())); }

FieldCtx f4() { return make_field(2, 2, std::vector<u64>{1, 1, 1}); }

}  // namespace

TEST(NumberTheory, PrimalityAgainstSieve) {
    std::vector<bool> composite(5000, false);
    for (u64 i = 2; i < 5000; ++i) {
        if (!composite[i])
            for (u64 j = i * i; j < 5000; j += i) composite[j] = true;
        EXPECT_EQ(nt::is_prime(i), !composite[i]) << i;
    }
    EXPECT_TRUE(nt::is_prime(10000079));
    EXPECT_TRUE(nt::is_prime(2147483647));
    EXPECT_FALSE(nt::is_prime(3215031751ULL));  // strong pseudoprime to bases 2,3,5,7
}

TEST(NumberTheory, FactorizeRebuilds) {
    Rng rng(7, 0);
    for (int t = 0; t < 200; ++t) {
        const u64 n = 2 + rng.uniform_below(1ULL << 62);
        u64 prod = 1;
        for (auto [q, k] : nt::factorize(n)) {
            EXPECT_TRUE(nt::is_prime(q));
            for (int i = 0; i < k; ++i) prod *= q;
        }
        EXPECT_EQ(prod, n);
    }
}

TEST(MakeField, Examples) {
    const FieldCtx F2 = make_field(2, 1);
    EXPECT_EQ(F2.q(), 2u);
    const FieldCtx F4 = f4();
    EXPECT_EQ(F4.q(), 4u);
    EXPECT_THROW(make_field(4, 1), InvalidArgument);
    EXPECT_THROW(make_field(2, 2, std::vector<u64>{1, 0, 1}), InvalidArgument);  // (t+1)^2
    EXPECT_THROW(make_field(2147483659ULL, 1), InvalidArgument);
}

TEST(MakeField, SeededSearchIsReproducible) {
    const FieldCtx a = make_field(7, 5, std::nullopt, 99);
    const FieldCtx b = make_field(7, 5, std::nullopt, 99);
    EXPECT_TRUE(a.same_as(b));
    EXPECT_EQ(a.modulus().size(), 6u);
}

TEST(FieldArith, Examples) {
    const FieldCtx F5 = make_field(5, 1);
    EXPECT_EQ(F5.from_int(2).inv(), F5.from_int(3));
    const FieldCtx F4 = f4();
    const FieldElement t = F4.gen();
    EXPECT_EQ(t * t, t + F4.one());
    EXPECT_EQ(t + F4.zero(), t);
    EXPECT_THROW(F4.zero().inv(), InvalidArgument);
    EXPECT_THROW(F4.one() + F5.one(), InvalidArgument);
}

TEST(FieldArith, InverseRoundTrip) {
    for (auto F : {make_field(101, 1), make_field(3, 4, std::nullopt, 1), make_field(65537, 2, std::nullopt, 2)}) {
        Rng rng(11, F.p());
        for (int i = 0; i < 1000; ++i) {
            const FieldElement a = random_element(F, rng), b = random_element(F, rng);
            if (b.is_zero()) continue;
            EXPECT_EQ((a * b) * b.inv(), a);
        }
    }
}

TEST(Trace, Examples) {
    const FieldCtx F4 = f4();
    EXPECT_EQ(trace(F4.zero()), 0u);
    EXPECT_EQ(trace(F4.gen()), 1u);
    const FieldCtx F7 = make_field(7, 1);
    EXPECT_EQ(trace(F7.from_int(5)), 5u);
}

TEST(Trace, MatchesConjugateSumAndIsLinear) {
    const FieldCtx F = make_field(5, 3, std::nullopt, 4);
    Rng rng(3, 3);
    for (int i = 0; i < 300; ++i) {
        const FieldElement a = random_element(F, rng), b = random_element(F, rng);
        const u64 lambda = rng.uniform_below(5);
        FieldElement sum = F.zero(), c = a;
        for (unsigned j = 0; j < 3; ++j, c = c.pow(5)) sum = sum + c;
        EXPECT_TRUE(sum.in_prime_field());
        EXPECT_EQ(sum.coord(0), trace(a));
        EXPECT_EQ(trace(F.from_int(static_cast<long long>(lambda)) * a + b), (lambda * trace(a) + trace(b)) % 5);
    }
}

TEST(Trace, SweepsPrimeFieldUniformly) {
    const FieldCtx F = make_field(3, 2, std::nullopt, 0);
    const FieldElement x = F.gen();
    std::vector<int> hits(3, 0);
    for (u64 i = 0; i < F.q(); ++i) ++hits[trace(x * F.element(i))];
    EXPECT_EQ(hits, std::vector<int>({3, 3, 3}));
}

TEST(MultOrder, Examples) {
    EXPECT_EQ(mult_order(make_field(5, 1).one()), 1u);
    EXPECT_EQ(mult_order(make_field(5, 1).from_int(2)), 4u);
    EXPECT_EQ(mult_order(make_field(7, 1).from_int(2)), 3u);
    EXPECT_THROW(mult_order(make_field(7, 1).zero()), InvalidArgument);
}

TEST(MultOrder, Properties) {
    for (auto F : {make_field(101, 1), make_field(2, 8, std::nullopt, 5), make_field(10000079, 1)}) {
        Rng rng(5, F.p());
        const u64 group = F.q() - 1;
        for (int i = 0; i < 200; ++i) {
            const FieldElement a = random_element(F, rng);
            if (a.is_zero()) continue;
            const u64 k = mult_order(a);
            EXPECT_EQ(group % k, 0u);
            EXPECT_TRUE(a.pow(k).is_one());
            for (auto [ell, mult] : nt::factorize(k)) EXPECT_FALSE(a.pow(k / ell).is_one());
        }
    }
}

TEST(Subfield, ExamplesAndConjugacy) {
    const FieldCtx F4 = f4();
    const FieldElement t = F4.gen();
    EXPECT_TRUE(lies_in_proper_subfield(F4.one()));
    EXPECT_FALSE(lies_in_proper_subfield(t));
    EXPECT_TRUE(are_conjugate(t, t + F4.one()));
    EXPECT_TRUE(are_conjugate(t, t));
    EXPECT_FALSE(are_conjugate(t, F4.one()));
}

TEST(Subfield, ConjugacyIsEquivalence) {
    const FieldCtx F = make_field(3, 4, std::nullopt, 8);
    std::vector<FieldElement> sample;
    Rng rng(1, 1);
    for (int i = 0; i < 25; ++i) sample.push_back(random_element(F, rng));
    for (const auto& a : sample) {
        EXPECT_TRUE(are_conjugate(a, a));
        for (const auto& b : sample) {
            EXPECT_EQ(are_conjugate(a, b), are_conjugate(b, a));
            for (const auto& c : sample)
                if (are_conjugate(a, b) && are_conjugate(b, c)) {
                    EXPECT_TRUE(are_conjugate(a, c));
                }
        }
        EXPECT_TRUE(are_conjugate(a, a.frobenius(3)));
    }
}

TEST(Rng, CounterBasedPurity) {
    Rng a(42, 7), b(42, 7);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
    Rng c(42, 7, 50);
    Rng d(42, 7);
    for (int i = 0; i < 50; ++i) d.next_u64();
    EXPECT_EQ(c.next_u64(), d.next_u64());
    EXPECT_NE(Rng(42, 8).next_u64(), Rng(42, 7).next_u64());
}

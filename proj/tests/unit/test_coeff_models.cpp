// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "polylab/coeff_models.hpp"

using namespace polylab;

namespace {

/// Max mass of a proper affine F_p-subspace by exhaustive subset search:
/// S is affine iff S - s0 is closed under addition.
double brute_max_affine_mass(const CoefficientDistribution& mu) {
    const FieldCtx& F = mu.ctx();
    const u64 q = F.q();
    std::vector<FieldElement> elems;
    for (u64 i = 0; i < q; ++i) elems.push_back(F.element(i));
    double best = 0;
    for (u64 mask = 1; mask < (u64{1} << q); ++mask) {
        const auto size = static_cast<u64>(__builtin_popcountll(mask));
        if (size == q) continue;
        u64 s = size;
        while (s % F.p() == 0) s /= F.p();
        if (s != 1) continue;
        std::vector<FieldElement> S;
        for (u64 i = 0; i < q; ++i)
            if (mask >> i & 1) S.push_back(elems[i]);
        const FieldElement s0 = S.front();
        bool closed = true;
        for (std::size_t a = 0; a < S.size() && closed; ++a)
            for (std::size_t b = 0; b < S.size() && closed; ++b) {
                const FieldElement sum = (S[a] - s0) + (S[b] - s0) + s0;
                closed = mask >> F.index_of(sum) & 1;
            }
        if (!closed) continue;
        double m = 0;
        for (const auto& x : S) m += mu.prob(x);
        best = std::max(best, m);
    }
    return best;
}

}  // namespace

TEST(Eta, Examples) {
    const FieldCtx F3 = make_field(3, 1);
    const auto mu = CoefficientDistribution::from_rationals(F3, {F3.from_int(0), F3.from_int(1), F3.from_int(2)},
                                                             {mpq_class(1, 2), mpq_class(3, 10), mpq_class(1, 5)});
    EXPECT_EQ(mu.eta_exact(), mpq_class(1, 2));
    for (u64 p : {2, 5, 101}) {
        const FieldCtx F = make_field(p, 1);
        EXPECT_NEAR(CoefficientDistribution::uniform(F).eta(), 1.0 - 1.0 / static_cast<double>(p), 1e-15);
    }
    const FieldCtx F4 = make_field(2, 2);
    const auto sub = CoefficientDistribution::uniform_on(F4, {F4.zero(), F4.one()});
    EXPECT_EQ(sub.eta(), 0.0);
}

TEST(Eta, MatchesExhaustiveAffineSearch) {
    Rng rng(11, 0);
    for (auto [p, e] : std::vector<std::pair<u64, unsigned>>{{2, 1}, {3, 1}, {5, 1}, {2, 2}, {2, 3}, {3, 2}, {2, 4}}) {
        const FieldCtx F = make_field(p, e);
        for (int t = 0; t < 6; ++t) {
            std::vector<FieldElement> s;
            std::vector<mpq_class> w;
            unsigned total = 0;
            for (u64 i = 0; i < F.q(); ++i) {
                const unsigned k = rng.uniform_below(4) == 0 ? 0 : static_cast<unsigned>(rng.uniform_below(9));
                s.push_back(F.element(i));
                w.push_back(k);
                total += k;
            }
            if (total == 0) continue;
            for (auto& x : w) x /= total;
            const auto mu = CoefficientDistribution::from_rationals(F, s, w);
            EXPECT_NEAR(mu.eta(), 1.0 - brute_max_affine_mass(mu), 1e-12) << F.describe();
        }
    }
}

TEST(CoefficientDistribution, Validation) {
    const FieldCtx F5 = make_field(5, 1);
    EXPECT_THROW(CoefficientDistribution::from_rationals(F5, {F5.one()}, {mpq_class(1, 2)}), InvalidArgument);
    EXPECT_THROW(CoefficientDistribution::from_doubles(F5, {F5.one(), F5.zero()}, {0.5, 0.4}), InvalidArgument);
    EXPECT_THROW(CoefficientDistribution::from_doubles(F5, {F5.one()}, {-1.0}), InvalidArgument);
    EXPECT_NO_THROW(CoefficientDistribution::from_doubles(F5, {F5.one(), F5.zero()}, {0.5, 0.5 + 1e-13}));
    const auto mu = parse_mu("{\"field\": \"5\", \"support\": [0, 1], \"probs\": [\"1/3\", 0.6666666666666666666667]}", F5);
    EXPECT_FALSE(mu.exact());
    const auto exact = parse_mu("{\"field\": \"5\", \"support\": [0, 1, 4], \"probs\": [\"1/3\", \"1/3\", \"1/3\"]}", F5);
    EXPECT_TRUE(exact.exact());
    EXPECT_EQ(exact.exact_prob(F5.from_int(-1)), mpq_class(1, 3));
    EXPECT_EQ(parse_mu("uniform:-1,0,1", F5).support().size(), 3u);
}

TEST(SamplePoly, Examples) {
    const FieldCtx F101 = make_field(101, 1);
    Rng rng(1, 0);
    const auto one = CoefficientDistribution::point_mass(F101.one());
    EXPECT_EQ(sample_poly(one, 2, rng), Polynomial::from_ints(F101, {1, 1, 1}));
    EXPECT_TRUE(sample_poly(CoefficientDistribution::point_mass(F101.zero()), 7, rng).is_zero());
    const auto mu = CoefficientDistribution::uniform_on(F101, {F101.from_int(-1), F101.zero(), F101.one()});
    for (int t = 0; t < 50; ++t) {
        const Polynomial f = sample_poly(mu, 20, rng);
        EXPECT_LE(f.degree(), 20);
        for (int i = 0; i <= 20; ++i) {
            const auto c = f.coeff(i).coord(0);
            EXPECT_TRUE(c == 0 || c == 1 || c == 100);
        }
    }
}

TEST(SamplePoly, SeedDeterministic) {
    const FieldCtx F = make_field(7, 2);
    const auto mu = CoefficientDistribution::uniform(F);
    Rng a(5, 9), b(5, 9);
    for (int t = 0; t < 10; ++t) EXPECT_EQ(sample_poly(mu, 12, a), sample_poly(mu, 12, b));
}

TEST(SamplePoly, MarginalChiSquare) {
    // df = 2, survival e^{-x/2}: critical value at 1e-6 is 2 ln 1e6.
    const FieldCtx F = make_field(101, 1);
    const auto mu = CoefficientDistribution::from_rationals(F, {F.from_int(-1), F.zero(), F.one()},
                                                             {mpq_class(1, 6), mpq_class(1, 3), mpq_class(1, 2)});
    Rng rng(3, 0);
    std::map<u64, double> counts;
    const int draws = 100000;
    for (int t = 0; t < draws; ++t) counts[sample_poly(mu, 4, rng).coeff(2).coord(0)] += 1;
    double chi2 = 0;
    for (std::size_t i = 0; i < mu.support().size(); ++i) {
        const double expect = draws * mu.probs()[i];
        const double obs = counts[mu.support()[i].coord(0)];
        chi2 += (obs - expect) * (obs - expect) / expect;
    }
    EXPECT_EQ(counts.size(), 3u);
    EXPECT_LT(chi2, 2 * std::log(1e6));
}

TEST(SampleUniformMonic, Examples) {
    const FieldCtx F2 = make_field(2, 1), F5 = make_field(5, 1);
    Rng rng(4, 0);
    int x_count = 0;
    for (int t = 0; t < 4000; ++t) {
        const Polynomial f = sample_uniform_monic(F2, 1, rng);
        ASSERT_TRUE(f.is_monic());
        ASSERT_EQ(f.degree(), 1);
        x_count += f.coeff(0).is_zero();
    }
    EXPECT_NEAR(x_count / 4000.0, 0.5, 5 * std::sqrt(0.25 / 4000));
    std::map<std::string, int> seen;
    for (int t = 0; t < 20000; ++t) {
        const Polynomial f = sample_uniform_monic(F5, 3, rng);
        ASSERT_EQ(f.degree(), 3);
        ASSERT_TRUE(f.is_monic());
        seen[f.to_string()]++;
    }
    EXPECT_EQ(seen.size(), 125u);
    EXPECT_THROW(sample_uniform_monic(F5, 0, rng), InvalidArgument);
}

TEST(Reference, Binomial) {
    Rng rng(8, 0);
    EXPECT_EQ(ref::binomial(1000, 0, rng), 0u);
    EXPECT_EQ(ref::binomial(1000, 1, rng), 1000u);
    EXPECT_THROW(ref::binomial(3, 1.5, rng), InvalidArgument);
    double s = 0;
    const int draws = 20000;
    for (int t = 0; t < draws; ++t) s += static_cast<double>(ref::binomial(40, 0.25, rng));
    EXPECT_NEAR(s / draws, 10.0, 5 * std::sqrt(40 * 0.25 * 0.75 / draws));
}

TEST(Reference, NegativeBinomialAndGeometric) {
    Rng rng(9, 0);
    const int draws = 40000;
    // mean m r/(1-r), variance m r/(1-r)^2
    double s = 0;
    for (int t = 0; t < draws; ++t) s += static_cast<double>(ref::negative_binomial(6, 0.25, rng));
    EXPECT_NEAR(s / draws, 2.0, 5 * std::sqrt(6 * 0.25 / 0.5625 / draws));
    double g = 0;
    for (int t = 0; t < draws; ++t) g += static_cast<double>(ref::geometric(1.0 / 3, rng));
    EXPECT_NEAR(g / draws, 0.5, 5 * std::sqrt((1.0 / 3) / (4.0 / 9) / draws));
    EXPECT_THROW(ref::geometric(1.0, rng), InvalidArgument);
    EXPECT_EQ(ref::poisson(0, rng), 0u);
}

TEST(Reference, StickBreaking) {
    const auto halves = ref::stick_breaking_from([] { return 0.5; });
    // residual 2^-k after k halvings; stops once it is below 2^-40
    ASSERT_EQ(halves.size(), 41u);
    for (std::size_t i = 0; i < 10; ++i) EXPECT_NEAR(halves[i], std::ldexp(1.0, -static_cast<int>(i) - 1), 1e-11);
    Rng rng(10, 0);
    for (int t = 0; t < 200; ++t) {
        const auto v = ref::stick_breaking_pd(100000, rng);
        EXPECT_TRUE(std::is_sorted(v.begin(), v.end(), std::greater<>()));
        EXPECT_NEAR(std::accumulate(v.begin(), v.end(), 0.0), 1.0, std::ldexp(1.0, -40));
    }
}

TEST(Reference, PdMaxMean) {
    // E[L_1] for Poisson-Dirichlet(1) is the Golomb-Dickman constant.
    Rng rng(12, 0);
    const int draws = 50000;
    double s = 0, ss = 0;
    for (int t = 0; t < draws; ++t) {
        const double x = ref::pd_max(rng);
        ASSERT_GT(x, 0.0);
        ASSERT_LE(x, 1.0);
        s += x;
        ss += x * x;
    }
    const double mean = s / draws, se = std::sqrt((ss / draws - mean * mean) / draws);
    EXPECT_NEAR(mean, 0.6243299885435508, 5 * se);
}

TEST(Reference, PermutationCycles) {
    for (unsigned n = 1; n <= 6; ++n) {
        // Exhaustive: mean number of fixed points is 1.
        std::vector<unsigned> perm(n);
        std::iota(perm.begin(), perm.end(), 0u);
        long fixed = 0, count = 0;
        do {
            for (unsigned i = 0; i < n; ++i) fixed += perm[i] == i;
            ++count;
        } while (std::next_permutation(perm.begin(), perm.end()));
        EXPECT_EQ(fixed, count);
    }
    Rng rng(13, 0);
    for (unsigned n : {1u, 2u, 7u, 30u}) {
        const int draws = 100000;
        double s = 0, ss = 0;
        for (int t = 0; t < draws; ++t) {
            const auto c = ref::permutation_cycle_counts(n, rng);
            std::uint64_t total = 0;
            for (unsigned i = 0; i < n; ++i) total += static_cast<std::uint64_t>(i + 1) * c[i];
            ASSERT_EQ(total, n);
            s += c[0];
            ss += static_cast<double>(c[0]) * c[0];
        }
        const double mean = s / draws, se = std::sqrt(std::max(ss / draws - mean * mean, 1e-12) / draws);
        EXPECT_NEAR(mean, 1.0, 5 * se + 1e-12) << n;
    }
}

TEST(Reference, PermutationCycleLawMatchesEnumeration) {
    // Law of (C_1, C_2) for n = 5 against exhaustive enumeration.
    const unsigned n = 5;
    std::map<std::pair<unsigned, unsigned>, double> exact;
    std::vector<unsigned> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    do {
        std::vector<bool> seen(n);
        unsigned c1 = 0, c2 = 0;
        for (unsigned i = 0; i < n; ++i) {
            if (seen[i]) continue;
            unsigned len = 0;
            for (unsigned j = i; !seen[j]; j = perm[j]) seen[j] = true, ++len;
            c1 += len == 1;
            c2 += len == 2;
        }
        exact[{c1, c2}] += 1.0 / 120;
    } while (std::next_permutation(perm.begin(), perm.end()));
    Rng rng(14, 0);
    std::map<std::pair<unsigned, unsigned>, double> emp;
    const int draws = 60000;
    for (int t = 0; t < draws; ++t) {
        const auto c = ref::permutation_cycle_counts(n, rng);
        emp[{c[0], c[1]}] += 1.0 / draws;
    }
    for (const auto& [k, v] : emp) EXPECT_TRUE(exact.count(k));
    for (const auto& [k, v] : exact) EXPECT_NEAR(emp[k], v, 5 * std::sqrt(v * (1 - v) / draws) + 1e-12);
}

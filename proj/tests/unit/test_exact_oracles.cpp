// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "polylab/exact_oracles.hpp"

using namespace polylab;

namespace {

CoefficientDistribution two_point(const FieldCtx& F, mpq_class w0 = mpq_class(1, 2)) {
    return CoefficientDistribution::from_rationals(F, {F.zero(), F.one()}, {w0, 1 - w0});
}

VSpace single(const FieldElement& a, std::vector<unsigned> ks) { return VSpace({{a, std::move(ks)}}); }

}  // namespace

TEST(VSpace, Validation) {
    const FieldCtx F5 = make_field(5, 1), F25 = make_field(5, 2);
    EXPECT_THROW(single(F5.zero(), {0}), InvalidArgument);
    EXPECT_THROW(single(F25.from_int(2), {0}), InvalidArgument);  // in the prime subfield
    const FieldElement g = F25.gen();
    EXPECT_THROW(VSpace({{g, {0}}, {g.frobenius(1), {0}}}), InvalidArgument);
    EXPECT_THROW(VSpace({{F5.from_int(2), {0}}, {F5.from_int(2), {1}}}), InvalidArgument);
    const VSpace V({{F5.from_int(2), {0, 2}}, {g, {1}}});
    EXPECT_EQ(V.dim(), 4u);
    EXPECT_EQ(V.d(), 3u + 4u);
    EXPECT_EQ(V.size(), 625u);
}

TEST(NuN, Examples) {
    const FieldCtx F3 = make_field(3, 1), F2 = make_field(2, 1), F7 = make_field(7, 1);
    const auto law = nu_n_distribution(two_point(F3), 0, single(F3.one(), {0}));
    EXPECT_EQ(law.weights, (std::vector<mpq_class>{mpq_class(1, 2), mpq_class(1, 2), 0}));
    const auto det = nu_n_distribution(CoefficientDistribution::point_mass(F2.one()), 2, single(F2.one(), {0}));
    EXPECT_EQ(det.weights, (std::vector<mpq_class>{0, 1}));
    const auto uni = nu_n_distribution(CoefficientDistribution::uniform(F7), 0, single(F7.from_int(3), {0}));
    for (const auto& w : uni.weights) EXPECT_EQ(w, mpq_class(1, 7));
    EXPECT_EQ(law.to_pmf().total(), 1);
}

TEST(NuN, ExtensionRootBecomesUniform) {
    // alpha generates F_9, mu uniform on F_3: (f(alpha)) is uniform once n >= 1.
    const FieldCtx F9 = make_field(3, 2), F3 = make_field(3, 1);
    const auto law = nu_n_distribution(CoefficientDistribution::uniform(F3), 1, single(F9.gen(), {0}));
    for (const auto& w : law.weights) EXPECT_EQ(w, mpq_class(1, 9));
}

TEST(NuN, MatchesEnumeration) {
    // Sum over all 2^{n+1} coefficient vectors of the F_5 values (f(2), f'(2)).
    const FieldCtx F5 = make_field(5, 1);
    const unsigned n = 7;
    const FieldElement a = F5.from_int(2);
    const auto law = nu_n_distribution(two_point(F5, mpq_class(1, 3)), n, single(a, {0, 1}));
    std::vector<mpq_class> expect(25);
    for (unsigned mask = 0; mask < (1u << (n + 1)); ++mask) {
        std::vector<long long> c(n + 1);
        mpq_class w = 1;
        for (unsigned i = 0; i <= n; ++i) {
            c[i] = mask >> i & 1;
            w *= c[i] ? mpq_class(2, 3) : mpq_class(1, 3);
        }
        const Polynomial f = Polynomial::from_ints(F5, c);
        const auto v0 = eval(f, a).coord(0), v1 = eval(derivative(f), a).coord(0);
        expect[v0 + 5 * v1] += w;
    }
    EXPECT_EQ(law.weights, expect);
}

TEST(NuN, StateSpaceCap) {
    const FieldCtx F101 = make_field(101, 1);
    const VSpace V = single(F101.from_int(3), {0, 1, 2, 3});
    EXPECT_THROW(nu_n_distribution(two_point(F101), 3, V), ResourceCapExceeded);
    const FieldCtx F5 = make_field(5, 1);
    const auto flt = CoefficientDistribution::from_doubles(F5, {F5.zero(), F5.one()}, {0.25, 0.75});
    EXPECT_THROW(nu_n_distribution(flt, 3, single(F5.one(), {0})), InvalidArgument);
}

TEST(Fourier, Examples) {
    const FieldCtx F3 = make_field(3, 1), F7 = make_field(7, 1);
    const VSpace V = single(F3.one(), {0});
    const auto law = nu_n_distribution(two_point(F3), 0, V);
    const auto z = fourier_coefficient(law, {F3.zero()});
    EXPECT_NEAR(z.real(), 1.0, 1e-15);
    EXPECT_NEAR(z.imag(), 0.0, 1e-15);
    const auto h = fourier_coefficient(law, {F3.one()});
    const std::complex<double> expect = 0.5 * (1.0 + e_p(1, 3));
    EXPECT_NEAR(std::abs(h - expect), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(h), 0.5, 1e-15);
    const auto uni = nu_n_distribution(CoefficientDistribution::uniform(F7), 2, single(F7.from_int(3), {0}));
    for (u64 b = 1; b < 7; ++b) EXPECT_NEAR(std::abs(fourier_coefficient(uni, {F7.from_int(b)})), 0.0, 1e-14);
    EXPECT_THROW(fourier_coefficient(law, {F3.one(), F3.one()}), InvalidArgument);
}

TEST(Fourier, ProductFormulaMatchesDft) {
    const FieldCtx F3 = make_field(3, 1), F5 = make_field(5, 1), F9 = make_field(3, 2), F7 = make_field(7, 1);
    struct Case {
        CoefficientDistribution mu;
        VSpace V;
        unsigned n;
    };
    std::vector<Case> cases{
        {two_point(F3), single(F3.from_int(2), {0, 1}), 40},
        {two_point(F5, mpq_class(1, 3)), VSpace({{F5.from_int(2), {0}}, {F5.from_int(3), {0, 1}}}), 60},
        {two_point(F3), single(F9.gen(), {0, 1}), 25},
        {CoefficientDistribution::uniform_on(F7, {F7.from_int(-1), F7.zero(), F7.one()}), single(F7.from_int(3), {1}), 12},
    };
    for (const auto& c : cases) {
        const auto law = nu_n_distribution(c.mu, c.n, c.V);
        const auto all = fourier_all(law);
        double parseval = 0;
        for (const auto& z : all) parseval += std::norm(z);
        mpq_class sq = 0;
        for (const auto& w : law.weights) sq += w * w;
        EXPECT_NEAR(parseval, static_cast<double>(c.V.size()) * sq.get_d(), 1e-10);
        for (const auto& beta : c.V.nonzero_duals()) {
            const auto prod = fourier_product(c.mu, c.n, c.V, beta);
            EXPECT_LT(std::abs(prod - fourier_coefficient(law, beta)), 1e-10);
            EXPECT_LT(std::abs(prod - all[c.V.index_of(c.V.functional(beta))]), 1e-10);
        }
    }
}

TEST(Prop32, Examples) {
    const FieldCtx F3 = make_field(3, 1);
    const auto rep = check_prop32(two_point(F3), 30, single(F3.one(), {0}));
    EXPECT_EQ(rep.d, 1u);
    EXPECT_DOUBLE_EQ(rep.eta, 0.5);
    EXPECT_NEAR(rep.bound, std::exp(-30.0 / 18.0), 1e-14);
    EXPECT_TRUE(rep.pass);
    EXPECT_LT(rep.max_path_gap, 1e-12);
    EXPECT_EQ(check_prop32(two_point(F3), 0, single(F3.one(), {0})).bound, 1.0);
    EXPECT_TRUE(check_prop32(two_point(F3), 0, single(F3.one(), {0})).pass);
    const FieldCtx F5 = make_field(5, 1);
    const auto u = check_prop32(CoefficientDistribution::uniform(F5), 6, single(F5.from_int(2), {0, 1}));
    EXPECT_LT(u.max_modulus, 1e-12);
    EXPECT_TRUE(u.pass);
    EXPECT_EQ(u.duals_checked, 16u);
}

TEST(Divisibility, Examples) {
    const FieldCtx F5 = make_field(5, 1), F2 = make_field(2, 1), F3 = make_field(3, 1);
    EXPECT_EQ(exact_divisibility_prob(CoefficientDistribution::uniform(F5), 4, {{F5.from_int(3), 1}}), mpq_class(1, 5));
    EXPECT_EQ(exact_divisibility_prob(CoefficientDistribution::point_mass(F2.one()), 5, {{F2.one(), 1}}), 1);
    // Enumeration: coefficient vectors in {0,1}^11 with sum divisible by 3.
    mpq_class expect = 0;
    for (unsigned mask = 0; mask < (1u << 11); ++mask)
        if (__builtin_popcount(mask) % 3 == 0) expect += mpq_class(1, 2048);
    const mpq_class got = exact_divisibility_prob(two_point(F3), 10, {{F3.one(), 1}});
    EXPECT_EQ(got, expect);
    EXPECT_EQ(got.get_den(), 2048);
    EXPECT_THROW(check_divisibility_chain(two_point(F3), 1, {{F3.one(), 2}}), InvalidArgument);
}

TEST(Divisibility, ChainHolds) {
    const FieldCtx F3 = make_field(3, 1), F5 = make_field(5, 1), F9 = make_field(3, 2);
    for (unsigned n : {10u, 20u, 40u}) {
        const auto r1 = check_divisibility_chain(two_point(F3), n, {{F3.one(), 2}, {F3.from_int(2), 1}});
        EXPECT_TRUE(r1.chain_holds);
        EXPECT_TRUE(r1.gap_within_bound);
        const auto r2 = check_divisibility_chain(two_point(F5, mpq_class(1, 3)), n, {{F5.from_int(2), 2}});
        EXPECT_TRUE(r2.chain_holds && r2.gap_within_bound);
        const auto r3 = check_divisibility_chain(two_point(F3), n, {{F9.gen(), 2}});
        EXPECT_TRUE(r3.chain_holds && r3.gap_within_bound);
        EXPECT_EQ(r3.uniform_prob, mpq_class(1, 81));
    }
}

TEST(Halasz, ReportsSmallestConstant) {
    const FieldCtx F5 = make_field(5, 1);
    const auto rep = halasz_report(two_point(F5), 20, {{F5.from_int(2), 1}});
    const double lhs = rep.prob.get_d();
    const double rhs = std::pow(0.2 + rep.c_min / std::sqrt(rep.eta * 20.0), 1.0);
    EXPECT_LE(lhs, rhs * (1 + 1e-12));
    EXPECT_GE(rep.c_min, 0.0);
    EXPECT_THROW(halasz_report(two_point(F5), 0, {{F5.from_int(2), 1}}), InvalidArgument);
}

TEST(BruteJoint, Examples) {
    const FieldCtx F2 = make_field(2, 1), F3 = make_field(3, 1);
    const auto one = brute_joint_pmf(CoefficientDistribution::point_mass(F3.one()), 3, 2);
    // x^3 + x^2 + x + 1 = (x + 1)(x^2 + 1) over F_3, x^2 + 1 irreducible.
    EXPECT_EQ(one.distinct.prob({1, 1}), 1);
    EXPECT_EQ(one.with_mult.prob({1, 1}), 1);
    EXPECT_EQ(one.zero_mass, 0);

    const auto monic = brute_joint_pmf(CoefficientDistribution::uniform(F2), 2, 1, {.monic = true});
    EXPECT_EQ(monic.distinct.prob({1}), mpq_class(1, 2));
    EXPECT_EQ(monic.distinct.prob({0}), mpq_class(1, 2));
    EXPECT_EQ(monic.zero_mass, 0);

    const auto full = brute_joint_pmf(CoefficientDistribution::uniform(F2), 3, 2);
    EXPECT_EQ(full.zero_mass, mpq_class(1, 16));
    EXPECT_EQ(full.distinct.total() + full.zero_mass, 1);
    const auto with_x = brute_joint_pmf(CoefficientDistribution::uniform(F2), 2, 1, {.monic = true, .include_x = true});
    // x^2, (x+1)^2, x(x+1), x^2+x+1 give N_1 = 1, 1, 2, 0 and N'_1 = 2, 2, 2, 0 when x counts.
    EXPECT_EQ(with_x.distinct.prob({2}), mpq_class(1, 4));
    EXPECT_EQ(with_x.with_mult.prob({2}), mpq_class(3, 4));
}

TEST(BruteJoint, Cap) {
    const FieldCtx F101 = make_field(101, 1);
    EXPECT_THROW(brute_joint_pmf(CoefficientDistribution::uniform(F101), 5, 1), ResourceCapExceeded);
}

TEST(SSequence, Examples) {
    const FieldCtx F5 = make_field(5, 1), F101 = make_field(101, 1);
    const auto r1 = s_sequence({F5.one()}, single(F5.one(), {0}), 0, 10);
    EXPECT_EQ(r1.centered, std::vector<long long>(11, 1));
    EXPECT_EQ(r1.block_sum, 11);
    const auto r2 = s_sequence({F5.one()}, single(F5.from_int(4), {0}), 0, 9);
    for (std::size_t i = 0; i < r2.centered.size(); ++i) EXPECT_EQ(r2.centered[i], i % 2 ? -1 : 1);
    EXPECT_EQ(r2.block_sum, 10);
    // 2 generates F_101^*.
    ASSERT_EQ(mult_order(F101.from_int(2)), 100u);
    const auto r3 = s_sequence({F101.one()}, single(F101.from_int(2), {0}), 0, 200);
    EXPECT_GT(static_cast<double>(r3.block_sum), r3.threshold);
    EXPECT_FALSE(r3.slow_direction_candidate);
    const FieldCtx F25 = make_field(5, 2);
    EXPECT_THROW(s_sequence({F25.one()}, single(F25.gen(), {0}), 0, 5), InvalidArgument);
}

TEST(SSequence, BinomialTerms) {
    // alpha = 1, k = 1: S_n = n mod p.
    const FieldCtx F7 = make_field(7, 1);
    const auto r = s_sequence({F7.one()}, single(F7.one(), {1}), 0, 13);
    for (long long n = 0; n <= 13; ++n) {
        long long v = n % 7;
        if (v > 3) v -= 7;
        EXPECT_EQ(r.centered[static_cast<std::size_t>(n)], v);
    }
}

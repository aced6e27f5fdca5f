// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "polylab/coeff_models.hpp"
#include "polylab/factor_stats.hpp"

using namespace polylab;

namespace {

Polynomial P(const FieldCtx& F, std::vector<long long> c) { return Polynomial::from_ints(F, c); }

ExactPMF pmf(std::vector<std::pair<Key, mpq_class>> entries) {
    ExactPMF out;
    for (auto& [k, v] : entries) out.add(k, v);
    return out;
}

}  // namespace

TEST(FactorStats, Examples) {
    const FieldCtx F2 = make_field(2, 1);
    const Polynomial x = P(F2, {0, 1}), x1 = P(F2, {1, 1}), q = P(F2, {1, 1, 1});
    const auto s = factor_stats(x * x1 * x1 * q, 2);
    EXPECT_EQ(s.distinct, (std::vector<std::uint32_t>{1, 1}));
    EXPECT_EQ(s.with_mult, (std::vector<std::uint32_t>{2, 1}));
    EXPECT_EQ(s.x_multiplicity, 1u);
    EXPECT_EQ(s.largest_norm_degree(), mpq_class(2, 5));
    EXPECT_EQ(s.total_mult, 3u);

    const Polynomial ir7 = P(F2, {1, 1, 0, 0, 0, 0, 0, 1});  // x^7 + x + 1
    ASSERT_TRUE(is_irreducible(ir7));
    const auto t = factor_stats(ir7, 3);
    EXPECT_EQ(t.distinct, (std::vector<std::uint32_t>{0, 0, 0}));
    EXPECT_EQ(t.with_mult, (std::vector<std::uint32_t>{0, 0, 0}));
    EXPECT_EQ(t.largest_norm_degree(), 1);

    const auto c = factor_stats(x1 * x1 * x1, 1);
    EXPECT_EQ(c.distinct, (std::vector<std::uint32_t>{1}));
    EXPECT_EQ(c.with_mult, (std::vector<std::uint32_t>{3}));
    EXPECT_THROW(factor_stats(Polynomial(F2), 2), InvalidArgument);
}

TEST(FactorStats, ShapeAndFullFactorizationAgree) {
    const FieldCtx F = make_field(7, 1);
    Rng rng(1, 0);
    const auto mu = CoefficientDistribution::uniform(F);
    for (int t = 0; t < 200; ++t) {
        const Polynomial f = sample_poly(mu, 12, rng);
        if (f.is_zero()) continue;
        const auto a = factor_stats(factorize(f), 4), b = factor_stats(f, 4);
        EXPECT_EQ(a.distinct, b.distinct);
        EXPECT_EQ(a.with_mult, b.with_mult);
        EXPECT_EQ(a.largest_degree, b.largest_degree);
        EXPECT_EQ(a.total_mult, b.total_mult);
        EXPECT_EQ(a.x_multiplicity, b.x_multiplicity);
        EXPECT_EQ(a.high_degree, b.high_degree);
    }
}

TEST(FactorStats, DegreeAccountingInvariant) {
    Rng rng(2, 0);
    for (auto F : {make_field(2, 1), make_field(5, 1), make_field(3, 2)}) {
        const auto mu = CoefficientDistribution::uniform(F);
        for (int t = 0; t < 150; ++t) {
            const Polynomial f = sample_poly(mu, 15, rng);
            if (f.is_zero()) continue;
            for (unsigned N : {1u, 2u, 4u}) {
                const auto s = factor_stats(f, N);
                std::uint32_t sum = 0;
                for (unsigned i = 0; i < N; ++i) {
                    EXPECT_LE(s.distinct[i], s.with_mult[i]);
                    sum += (i + 1) * s.with_mult[i];
                }
                EXPECT_EQ(sum + s.x_multiplicity + s.high_degree, static_cast<std::uint32_t>(f.degree()));
                EXPECT_EQ(s.largest_norm_degree() * f.degree(), s.largest_degree);
            }
        }
    }
}

TEST(MultiplicityOf, Examples) {
    const FieldCtx F2 = make_field(2, 1);
    const Polynomial q = P(F2, {1, 1, 1});
    EXPECT_EQ(multiplicity_of(q * q, q), 2u);
    EXPECT_EQ(multiplicity_of(P(F2, {1, 1, 0, 1}), q), 0u);
    EXPECT_EQ(multiplicity_of(P(F2, {0, 1, 0, 0, 1}), P(F2, {1, 1})), 1u);
    EXPECT_THROW(multiplicity_of(q, P(F2, {1, 0, 1})), InvalidArgument);
}

TEST(TvDistance, Examples) {
    const auto a = pmf({{{0}, mpq_class(1, 2)}, {{1}, mpq_class(1, 2)}});
    const auto b = pmf({{{0}, mpq_class(3, 4)}, {{1}, mpq_class(1, 4)}});
    const auto c = pmf({{{5}, mpq_class(1)}});
    EXPECT_EQ(tv_distance_exact(a, b), mpq_class(1, 4));
    EXPECT_EQ(tv_distance_exact(a, a), 0);
    EXPECT_EQ(tv_distance_exact(a, c), 1);
    EXPECT_THROW(tv_distance(a, ExactPMF{}), InvalidArgument);
    EmpiricalDistribution e;
    e.add({0}, 3);
    e.add({1}, 1);
    EXPECT_DOUBLE_EQ(tv_distance(e, a), 0.25);
    EXPECT_DOUBLE_EQ(tv_distance(e, b), 0.0);
    EXPECT_DOUBLE_EQ(tv_distance(e, e), 0.0);
}

TEST(TvDistance, TriangleOnSampledTriples) {
    Rng rng(3, 0);
    for (int t = 0; t < 100; ++t) {
        EmpiricalDistribution d[3];
        for (auto& x : d)
            for (int k = 0; k < 50; ++k) x.add({static_cast<std::int64_t>(rng.uniform_below(6))});
        EXPECT_LE(tv_distance(d[0], d[2]), tv_distance(d[0], d[1]) + tv_distance(d[1], d[2]) + 1e-15);
    }
}

TEST(EmpiricalDistribution, MergeAssociativeCommutative) {
    Rng rng(4, 0);
    EmpiricalDistribution a, b, c;
    for (auto* d : {&a, &b, &c})
        for (int k = 0; k < 300; ++k)
            d->add({static_cast<std::int64_t>(rng.uniform_below(4)), static_cast<std::int64_t>(rng.uniform_below(3))});
    EmpiricalDistribution ab = a, bc = b, ba = b;
    ab.merge(b);
    ab.merge(c);
    bc.merge(c);
    EmpiricalDistribution a_bc = a;
    a_bc.merge(bc);
    EXPECT_EQ(ab, a_bc);
    ba.merge(a);
    EmpiricalDistribution ab2 = a;
    ab2.merge(b);
    EXPECT_EQ(ab2, ba);
    EXPECT_EQ(ab.trials(), 900u);
}

TEST(Bootstrap, IntervalCoversEstimate) {
    Rng rng(5, 0);
    EmpiricalDistribution a, b;
    for (int k = 0; k < 2000; ++k) {
        a.add({static_cast<std::int64_t>(rng.uniform_below(3))});
        b.add({static_cast<std::int64_t>(rng.uniform_below(4))});
    }
    const auto ci = bootstrap_ci(a, b, 200, 0.95, 7);
    EXPECT_LE(ci.lo, ci.hi);
    EXPECT_GT(ci.estimate, 0.15);
    EXPECT_LT(ci.lo, 0.25);
    EXPECT_GT(ci.hi, 0.25);
    const auto again = bootstrap_ci(a, b, 200, 0.95, 7);
    EXPECT_EQ(ci.lo, again.lo);
    EXPECT_THROW(bootstrap_ci(a, b, 0, 0.95), InvalidArgument);
}

TEST(KsDistance, Basic) {
    EXPECT_DOUBLE_EQ(ks_distance({0.1, 0.2, 0.3}, {0.1, 0.2, 0.3}), 0.0);
    EXPECT_DOUBLE_EQ(ks_distance({0.1, 0.2}, {0.8, 0.9}), 1.0);
    EXPECT_DOUBLE_EQ(ks_distance({0.1, 0.5}, {0.3, 0.7}), 0.5);
}

TEST(Csv, RowsAndSidecar) {
    EmpiricalDistribution d;
    d.add({1, 0}, 2);
    d.add({0, 2});
    const std::string path = ::testing::TempDir() + "polylab_fs.csv";
    write_csv(path, d, {"N1", "N2"});
    write_sidecar(path + ".json", d, "abc");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), "N1,N2,count\n0,2,1\n1,0,2\n");
    std::ifstream js(path + ".json");
    const auto j = nlohmann::json::parse(js);
    EXPECT_EQ(j["trials"], 3);
    EXPECT_EQ(j["config_hash"], "abc");
    std::remove(path.c_str());
    std::remove((path + ".json").c_str());
}

// SPDX-License-Identifier: Apache-2.0
#pragma once

// Per-polynomial factor statistics (N_i, N'_i, normalized largest degree,
// total count) and comparisons between distributions of them: total
// variation (exact or plug-in), bootstrap intervals, Kolmogorov-Smirnov.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "polylab/errors.hpp"
#include "polylab/pmf.hpp"
#include "polylab/poly_algebra.hpp"
#include "polylab/rng.hpp"

namespace polylab {

/// Statistics of one nonzero polynomial. Index i-1 holds degree i. The factor
/// x is kept out of the degree-1 counts and of total_mult and reported in
/// x_multiplicity; it does take part in largest_degree.
struct FactorStats {
    std::vector<std::uint32_t> distinct;   // N_i
    std::vector<std::uint32_t> with_mult;  // N'_i
    std::uint32_t degree = 0;
    std::uint32_t largest_degree = 0;
    std::uint32_t total_mult = 0;
    std::uint32_t x_multiplicity = 0;
    std::uint32_t high_degree = 0;  // degree of the product of factors of degree > N (with multiplicity)

    /// largest factor degree / deg f, or 0 for constants
    mpq_class largest_norm_degree() const {
        if (degree == 0) return 0;
        mpq_class r(largest_degree, degree);
        r.canonicalize();
        return r;
    }
};

inline FactorStats factor_stats(const Factorization& fac, unsigned N) {
    FactorStats s;
    s.distinct.assign(N, 0);
    s.with_mult.assign(N, 0);
    for (const auto& [phi, m] : fac.factors) {
        const auto d = static_cast<std::uint32_t>(phi.degree());
        s.degree += d * m;
        s.largest_degree = std::max(s.largest_degree, d);
        if (d == 1 && phi.coeff(0).is_zero()) {
            s.x_multiplicity = m;
            continue;
        }
        s.total_mult += m;
        if (d <= N) {
            s.distinct[d - 1] += 1;
            s.with_mult[d - 1] += m;
        } else {
            s.high_degree += d * m;
        }
    }
    return s;
}

/// Same statistics from a factorization shape (no equal degree split needed).
inline FactorStats factor_stats(const FactorShape& shape, unsigned N) {
    FactorStats s;
    s.distinct.assign(N, 0);
    s.with_mult.assign(N, 0);
    s.degree = shape.degree;
    s.x_multiplicity = shape.x_multiplicity;
    if (shape.x_multiplicity) s.largest_degree = 1;
    for (const auto& e : shape.entries) {
        s.largest_degree = std::max(s.largest_degree, e.degree);
        s.total_mult += e.multiplicity * e.count;
        if (e.degree <= N) {
            s.distinct[e.degree - 1] += e.count;
            s.with_mult[e.degree - 1] += e.multiplicity * e.count;
        } else {
            s.high_degree += e.degree * e.multiplicity * e.count;
        }
    }
    return s;
}

inline FactorStats factor_stats(const Polynomial& f, unsigned N) {
    if (f.is_zero()) throw InvalidArgument("factor statistics of the zero polynomial");
    return factor_stats(factor_shape(f), N);
}

/// Largest m with phi^m | f, for f nonzero and phi monic irreducible.
inline unsigned multiplicity_of(const Polynomial& f, const Polynomial& phi) {
    if (f.is_zero()) throw InvalidArgument("multiplicity in the zero polynomial");
    if (phi.degree() < 1 || !phi.is_monic() || !is_irreducible(phi))
        throw InvalidArgument("multiplicity_of needs a monic irreducible phi");
    unsigned m = 0;
    Polynomial g = f;
    for (;;) {
        auto [q, r] = divmod(g, phi);
        if (!r.is_zero()) return m;
        g = std::move(q);
        ++m;
    }
}

inline Key to_key(const std::vector<std::uint32_t>& v) { return Key(v.begin(), v.end()); }

/// Exact total variation distance.
inline mpq_class tv_distance_exact(const ExactPMF& a, const ExactPMF& b) {
    if (a.empty() || b.empty()) throw InvalidArgument("tv_distance of an empty distribution");
    mpq_class s = 0;
    for (const auto& [k, v] : a.table()) s += abs(v - b.prob(k));
    for (const auto& [k, v] : b.table())
        if (a.table().find(k) == a.table().end()) s += v;
    return s / 2;
}

inline double tv_distance(const ExactPMF& a, const ExactPMF& b) { return tv_distance_exact(a, b).get_d(); }

inline double tv_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
    if (a.empty() || b.empty()) throw InvalidArgument("tv_distance of an empty distribution");
    double s = 0;
    for (const auto& [k, v] : a.table()) s += std::fabs(a.prob(k) - b.prob(k));
    for (const auto& [k, v] : b.table())
        if (a.table().find(k) == a.table().end()) s += b.prob(k);
    return s / 2;
}

inline double tv_distance(const EmpiricalDistribution& a, const ExactPMF& b) {
    if (a.empty() || b.empty()) throw InvalidArgument("tv_distance of an empty distribution");
    double s = 0;
    for (const auto& [k, v] : a.table()) s += std::fabs(a.prob(k) - b.prob(k).get_d());
    for (const auto& [k, v] : b.table())
        if (a.table().find(k) == a.table().end()) s += v.get_d();
    return s / 2;
}
inline double tv_distance(const ExactPMF& a, const EmpiricalDistribution& b) { return tv_distance(b, a); }

namespace detail {

/// Multinomial resample of an empirical distribution with the same trial count.
inline EmpiricalDistribution resample(const EmpiricalDistribution& d, Rng& rng) {
    std::vector<const Key*> keys;
    std::vector<std::uint64_t> cum;
    std::uint64_t acc = 0;
    for (const auto& [k, v] : d.table()) {
        keys.push_back(&k);
        cum.push_back(acc += v);
    }
    std::vector<std::uint64_t> counts(keys.size(), 0);
    for (std::uint64_t t = 0; t < d.trials(); ++t) {
        const std::uint64_t u = rng.uniform_below(d.trials());
        ++counts[static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin())];
    }
    EmpiricalDistribution out;
    for (std::size_t i = 0; i < keys.size(); ++i)
        if (counts[i]) out.add(*keys[i], counts[i]);
    return out;
}

inline double quantile(std::vector<double> v, double level) {
    std::sort(v.begin(), v.end());
    const double pos = level * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace detail

struct Interval {
    double estimate = 0, lo = 0, hi = 0;
};

/// Percentile bootstrap interval for the plug-in TV distance; only the
/// empirical sides are resampled.
inline Interval bootstrap_ci(const EmpiricalDistribution& a, const EmpiricalDistribution& b, unsigned resamples,
                             double level, u64 seed = 0) {
    if (resamples == 0 || !(level > 0 && level < 1)) throw InvalidArgument("bad bootstrap parameters");
    Rng rng(seed, 0x626f6f74ULL);
    std::vector<double> vals;
    for (unsigned r = 0; r < resamples; ++r) vals.push_back(tv_distance(detail::resample(a, rng), detail::resample(b, rng)));
    const double alpha = (1 - level) / 2;
    return {tv_distance(a, b), detail::quantile(vals, alpha), detail::quantile(vals, 1 - alpha)};
}

inline Interval bootstrap_ci(const EmpiricalDistribution& a, const ExactPMF& b, unsigned resamples, double level,
                             u64 seed = 0) {
    if (resamples == 0 || !(level > 0 && level < 1)) throw InvalidArgument("bad bootstrap parameters");
    Rng rng(seed, 0x626f6f74ULL);
    std::vector<double> vals;
    for (unsigned r = 0; r < resamples; ++r) vals.push_back(tv_distance(detail::resample(a, rng), b));
    const double alpha = (1 - level) / 2;
    return {tv_distance(a, b), detail::quantile(vals, alpha), detail::quantile(vals, 1 - alpha)};
}

/// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|.
inline double ks_distance(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw InvalidArgument("ks_distance of an empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double best = 0;
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        best = std::max(best, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return best;
}

/// CSV rows "v1,...,vN,count" under a header line of column names.
inline void write_csv(const std::string& path, const EmpiricalDistribution& d, const std::vector<std::string>& columns) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path);
    for (const auto& c : columns) out << c << ',';
    out << "count\n";
    for (const auto& [k, v] : d.table()) out << key_string(k) << ',' << v << '\n';
}

inline void write_sidecar(const std::string& path, const EmpiricalDistribution& d, const std::string& config_hash,
                          const nlohmann::json& extra = nlohmann::json::object()) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path);
    nlohmann::json j = extra;
    j["trials"] = d.trials();
    j["config_hash"] = config_hash;
    out << j.dump(2) << '\n';
}

}  // namespace polylab

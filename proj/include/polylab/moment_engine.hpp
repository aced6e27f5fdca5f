// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exact laws and mixed moments of low-degree factor counts of a uniformly
// random monic polynomial, read off the factor-count generating function.
//
// With u = y/q and pi(i) irreducibles of degree i, marking degree i <= N gives
//   distinct:           (1/(1-y)) prod_{i<=N} (1 + (z_i - 1) u^i)^{pi(i)}
//   with multiplicity:  (1/(1-y)) prod_{i<=N} ((1 - u^i)/(1 - z_i u^i))^{pi(i)}
// since the unmarked product over all degrees collapses to 1/(1-y). Series are
// carried in u with integer coefficients and [y^n] is sum_s q^{n-s}[u^s] / q^n.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "polylab/errors.hpp"
#include "polylab/number_theory.hpp"
#include "polylab/pmf.hpp"
#include "polylab/poly_algebra.hpp"
#include "polylab/rational.hpp"
#include "polylab/series.hpp"

namespace polylab {

enum class FactorModel { distinct, with_multiplicity };

inline std::string to_string(FactorModel m) { return m == FactorModel::distinct ? "distinct" : "with_multiplicity"; }

inline FactorModel parse_model(const std::string& s) {
    if (s == "distinct" || s == "N") return FactorModel::distinct;
    if (s == "with_multiplicity" || s == "mult" || s == "N'" || s == "Nprime") return FactorModel::with_multiplicity;
    throw InvalidArgument("unknown factor model '" + s + "'");
}

namespace detail {

inline void check_prime_power(u64 q) {
    if (q < 2) throw InvalidArgument("q must be a prime power >= 2");
    const auto fac = nt::factorize(q);
    if (fac.size() != 1) throw InvalidArgument("q = " + std::to_string(q) + " is not a prime power");
}

enum class MarkKind { indeterminate, exponential };

/// The factor contributed by degree i in the (u, w) plane, w being the mark.
inline TruncatedSeries degree_factor(unsigned n, unsigned i, unsigned mark_cap, const mpz_class& exponent,
                                     FactorModel model, MarkKind kind) {
    const TruncatedSeries::Exps caps{n, mark_cap};
    const TruncatedSeries one = TruncatedSeries::constant(caps, 1);
    const TruncatedSeries w = TruncatedSeries::variable(caps, 1);
    const TruncatedSeries mark = kind == MarkKind::indeterminate ? w : exp_series(w);
    const TruncatedSeries ui = TruncatedSeries::variable(caps, 0, i);
    if (model == FactorModel::distinct) return integer_pow(one + (mark - one) * ui, exponent);
    return integer_pow((one - ui) * geometric_inverse(mark * ui), exponent);
}

/// Places a (u, w) series into the full space (u, w_1, ..., w_N) at mark slot `slot`.
inline TruncatedSeries embed(const TruncatedSeries& s, const TruncatedSeries::Exps& full_caps, std::size_t slot) {
    TruncatedSeries out(full_caps);
    for (const auto& [idx, e] : s.support()) {
        TruncatedSeries::Exps fe(full_caps.size(), 0);
        fe[0] = e[0];
        fe[slot] = e[1];
        out.add_term(fe, s.at(idx));
    }
    return out;
}

/// Product of the marked degree factors, i = 1..N.
inline TruncatedSeries marked_product(u64 q, unsigned n, const std::vector<unsigned>& mark_caps, FactorModel model,
                                      bool exclude_x, MarkKind kind) {
    TruncatedSeries::Exps caps{n};
    caps.insert(caps.end(), mark_caps.begin(), mark_caps.end());
    TruncatedSeries P = TruncatedSeries::constant(caps, 1);
    for (unsigned i = 1; i <= mark_caps.size(); ++i) {
        if (i > n) break;  // u^i exceeds the cap: the factor is 1
        mpz_class pi = count_irreducibles(q, i);
        if (i == 1 && exclude_x) pi -= 1;
        P = P * embed(degree_factor(n, i, mark_caps[i - 1], pi, model, kind), caps, i);
    }
    return P;
}

/// [y^n] of P / (1 - q u) divided by q^n, as a table over mark exponents.
inline std::vector<std::pair<TruncatedSeries::Exps, mpq_class>> extract_level(const TruncatedSeries& P, u64 q, unsigned n) {
    std::map<TruncatedSeries::Exps, mpq_class> acc;
    std::vector<mpz_class> qpow(n + 1);
    qpow[0] = 1;
    for (unsigned s = 1; s <= n; ++s) qpow[s] = qpow[s - 1] * q;
    for (const auto& [idx, e] : P.support()) {
        const unsigned s = e[0];
        TruncatedSeries::Exps marks(e.begin() + 1, e.end());
        acc[marks] += P.at(idx) * mpq_class(qpow[n - s]);
    }
    std::vector<std::pair<TruncatedSeries::Exps, mpq_class>> out;
    for (auto& [k, v] : acc) {
        if (v == 0) continue;
        mpq_class r = v / mpq_class(qpow[n]);
        r.canonicalize();
        out.emplace_back(k, r);
    }
    return out;
}

}  // namespace detail

/// Exact law of (N_1..N_N) or (N'_1..N'_N) for a uniform monic polynomial of degree n over F_q.
inline ExactPMF uniform_joint_law(u64 q, unsigned n, unsigned N, FactorModel model, bool exclude_x) {
    detail::check_prime_power(q);
    std::vector<unsigned> caps;
    for (unsigned i = 1; i <= N; ++i) caps.push_back(n / i);
    const auto P = detail::marked_product(q, n, caps, model, exclude_x, detail::MarkKind::indeterminate);
    ExactPMF out;
    for (const auto& [k, v] : detail::extract_level(P, q, n)) out.add(Key(k.begin(), k.end()), v);
    if (N == 0 && out.empty()) out.add({}, 1);
    return out;
}

/// E[prod_i N_i^{h_i}] via exponential marks z_i = e^{t_i}: prod h_i! [t^h][y^n].
inline mpq_class uniform_joint_moment(u64 q, unsigned n, const std::vector<unsigned>& h, FactorModel model,
                                      bool exclude_x) {
    detail::check_prime_power(q);
    const auto P = detail::marked_product(q, n, h, model, exclude_x, detail::MarkKind::exponential);
    mpq_class coeff = 0;
    for (const auto& [k, v] : detail::extract_level(P, q, n))
        if (k == h) coeff = v;
    mpz_class fact = 1;
    for (unsigned hi : h)
        for (unsigned r = 2; r <= hi; ++r) fact *= r;
    return coeff * mpq_class(fact);
}

struct MomentReport {
    std::vector<unsigned> exponents;
    mpq_class moment;
    FactorModel model = FactorModel::distinct;
    bool exclude_x = true;

    nlohmann::json to_json() const {
        return {{"exponents", exponents},
                {"moment", polylab::to_string(moment)},
                {"moment_float", moment.get_d()},
                {"model", to_string(model)},
                {"exclude_x", exclude_x}};
    }
};

/// Law of (C_1..C_N) for a uniform permutation of n: [y^n] exp(sum_{i<=N} (z_i - 1) y^i / i) / (1 - y).
inline ExactPMF permutation_cycle_law(unsigned n, unsigned N) {
    TruncatedSeries::Exps caps{n};
    for (unsigned i = 1; i <= N; ++i) caps.push_back(n / i);
    TruncatedSeries P = TruncatedSeries::constant(caps, 1);
    for (unsigned i = 1; i <= N && i <= n; ++i) {
        const TruncatedSeries::Exps c2{n, n / i};
        const auto one = TruncatedSeries::constant(c2, 1);
        const auto s = (TruncatedSeries::variable(c2, 1) - one) * TruncatedSeries::variable(c2, 0, i) * mpq_class(1, i);
        P = P * detail::embed(exp_series(s), caps, i);
    }
    ExactPMF out;
    for (const auto& [k, v] : detail::extract_level(P, 1, n)) out.add(Key(k.begin(), k.end()), v);
    if (N == 0 && out.empty()) out.add({}, 1);
    return out;
}

/// Coefficients of D(y/q; 1, ...) up to y^cap using the full product over every
/// degree; each must equal 1.
inline std::vector<mpq_class> marks_to_one_series(u64 q, unsigned cap, FactorModel model) {
    detail::check_prime_power(q);
    const TruncatedSeries::Exps caps{cap};
    const auto one = TruncatedSeries::constant(caps, 1);
    TruncatedSeries D = one;
    for (unsigned i = 1; i <= cap; ++i) {
        const auto ui = TruncatedSeries::variable(caps, 0, i);
        const mpz_class pi = count_irreducibles(q, i);
        if (model == FactorModel::distinct)
            D = D * integer_pow(one + ui * geometric_inverse(ui), pi);
        else
            D = D * integer_pow(one - ui, -pi);
    }
    std::vector<mpq_class> out;
    mpz_class qpow = 1;
    for (unsigned s = 0; s <= cap; ++s) {
        mpq_class c = D.coeff({s}) / mpq_class(qpow);
        c.canonicalize();
        out.push_back(c);
        qpow *= q;
    }
    return out;
}

/// (H / (log H - log log(N+1)))^H, valid for H > log(N+1).
inline double poisson_moment_bound(unsigned H, unsigned N) {
    if (N < 1) throw InvalidArgument("poisson_moment_bound needs N >= 1");
    const double lg = std::log(static_cast<double>(N) + 1.0);
    if (!(static_cast<double>(H) > lg)) throw InvalidArgument("moment tail bound needs H > log(N+1)");
    const double denom = round_down(std::log(static_cast<double>(H)) - std::log(lg));
    return round_up(std::pow(round_up(static_cast<double>(H) / denom), static_cast<double>(H)));
}

/// N^{H-1} e^pi eps + 2 C pi^H / H!, rounded up.
inline double tv_from_moments_bound(unsigned N, unsigned H, double epsilon, double C) {
    if (H < 1) throw InvalidArgument("H must be >= 1");
    if (!(epsilon >= 0) || !(C >= 0)) throw InvalidArgument("epsilon and C must be nonnegative");
    double fact = 1;
    for (unsigned r = 2; r <= H; ++r) fact *= r;
    const double pi = std::numbers::pi;
    const double first = std::pow(static_cast<double>(N), static_cast<double>(H) - 1) * round_up(std::exp(pi)) * epsilon;
    const double second = 2 * C * round_up(std::pow(pi, static_cast<double>(H))) / fact;
    return round_up(round_up(first) + round_up(second));
}

struct PointwiseReport {
    mpq_class epsilon;
    double C = 0;
    double bound = 0;
    mpq_class max_gap;
    Key worst;
    std::size_t points = 0;
    bool pass = true;

    nlohmann::json to_json() const {
        return {{"epsilon", polylab::to_string(epsilon)},
                {"epsilon_float", epsilon.get_d()},
                {"C", C},
                {"bound", bound},
                {"max_gap", max_gap.get_d()},
                {"worst", worst},
                {"points", points},
                {"margin", bound - max_gap.get_d()},
                {"pass", pass}};
    }
};

namespace detail {

inline std::size_t key_arity(const ExactPMF& a) {
    if (a.empty()) throw InvalidArgument("empty PMF");
    const std::size_t n = a.table().begin()->first.size();
    for (const auto& [k, v] : a.table())
        if (k.size() != n) throw InvalidArgument("PMF keys of mixed length");
    return n;
}

inline void for_each_exponent(std::size_t N, unsigned H, const std::function<void(const std::vector<unsigned>&)>& fn) {
    std::vector<unsigned> k(N, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned left) {
        if (pos == N) {
            fn(k);
            return;
        }
        for (unsigned v = 0; v <= left; ++v) {
            k[pos] = v;
            rec(pos + 1, left - v);
        }
        k[pos] = 0;
    };
    rec(0, H);
}

}  // namespace detail

/// Checks |P[Z=a] - P[Z'=a]| <= N^{H-1} e^pi eps + 2 C pi^H / H! at every a in
/// the union support. eps is exact; C is the larger of the exact moments
/// E(sum |Z_i|)^H of both sides and `c_floor` (e.g. the Poisson tail bound).
inline PointwiseReport pointwise_check(const ExactPMF& a, const ExactPMF& b, unsigned H,
                                       std::optional<double> c_floor = std::nullopt) {
    if (H < 1) throw InvalidArgument("H must be >= 1");
    const std::size_t N = detail::key_arity(a);
    if (detail::key_arity(b) != N) throw InvalidArgument("PMFs over different key spaces");
    PointwiseReport rep;
    detail::for_each_exponent(N, H, [&](const std::vector<unsigned>& k) {
        const mpq_class diff = abs(a.moment(k) - b.moment(k));
        if (diff > rep.epsilon) rep.epsilon = diff;
    });
    auto sum_moment = [&](const ExactPMF& d) {
        mpq_class acc = 0;
        for (const auto& [k, v] : d.table()) {
            mpz_class s = 0;
            for (auto x : k) s += static_cast<long>(x < 0 ? -x : x);
            mpz_class pw;
            mpz_pow_ui(pw.get_mpz_t(), s.get_mpz_t(), H);
            acc += v * mpq_class(pw);
        }
        return acc;
    };
    rep.C = round_up(std::max(sum_moment(a).get_d(), sum_moment(b).get_d()));
    if (c_floor) rep.C = std::max(rep.C, *c_floor);
    rep.bound = tv_from_moments_bound(static_cast<unsigned>(N), H, round_up(rep.epsilon.get_d()), rep.C);
    const mpq_class bound_q(rep.bound);
    auto visit = [&](const Key& k) {
        const mpq_class gap = abs(a.prob(k) - b.prob(k));
        ++rep.points;
        if (gap > rep.max_gap || rep.worst.empty()) {
            rep.max_gap = gap;
            rep.worst = k;
        }
        if (gap > bound_q) rep.pass = false;
    };
    for (const auto& [k, v] : a.table()) visit(k);
    for (const auto& [k, v] : b.table())
        if (a.table().find(k) == a.table().end()) visit(k);
    return rep;
}

}  // namespace polylab

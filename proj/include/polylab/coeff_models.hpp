// SPDX-License-Identifier: Apache-2.0
#pragma once

// Coefficient laws mu on F_q, the anti-concentration parameter eta, samplers
// for the mu-model and the uniform monic model, and the reference random
// variables used for comparisons (binomial, negative binomial, Poisson,
// geometric, Poisson-Dirichlet stick breaking, permutation cycle counts).

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "polylab/errors.hpp"
#include "polylab/ff_core.hpp"
#include "polylab/poly_algebra.hpp"
#include "polylab/rational.hpp"
#include "polylab/rng.hpp"

namespace polylab {

class CoefficientDistribution {
public:
    CoefficientDistribution() = default;

    /// Exact law. Entries with equal elements are merged; zero weights dropped.
    static CoefficientDistribution from_rationals(const FieldCtx& ctx, const std::vector<FieldElement>& support,
                                                  const std::vector<mpq_class>& probs) {
        if (support.size() != probs.size()) throw InvalidArgument("support and probs differ in length");
        std::map<u64, mpq_class> table;
        for (std::size_t i = 0; i < support.size(); ++i) {
            if (!support[i].ctx().same_as(ctx)) throw InvalidArgument("support element from a different field");
            if (probs[i] < 0) throw InvalidArgument("negative probability");
            table[ctx.index_of(support[i])] += probs[i];
        }
        mpq_class total = 0;
        for (const auto& [k, v] : table) total += v;
        if (total != 1) throw InvalidArgument("probabilities sum to " + to_string(total) + ", not 1");
        CoefficientDistribution mu;
        mu.ctx_ = ctx;
        mu.exact_ = true;
        for (const auto& [k, v] : table) {
            if (v == 0) continue;
            mu.support_.push_back(ctx.element(k));
            mu.exact_probs_.push_back(v);
            mu.probs_.push_back(v.get_d());
        }
        mu.finish();
        return mu;
    }

    /// Floating-point law; probabilities must sum to 1 within 1e-12.
    static CoefficientDistribution from_doubles(const FieldCtx& ctx, const std::vector<FieldElement>& support,
                                                const std::vector<double>& probs) {
        if (support.size() != probs.size()) throw InvalidArgument("support and probs differ in length");
        std::map<u64, double> table;
        double total = 0;
        for (std::size_t i = 0; i < support.size(); ++i) {
            if (!support[i].ctx().same_as(ctx)) throw InvalidArgument("support element from a different field");
            if (!(probs[i] >= 0) || !std::isfinite(probs[i])) throw InvalidArgument("invalid probability");
            table[ctx.index_of(support[i])] += probs[i];
            total += probs[i];
        }
        if (std::fabs(total - 1.0) > 1e-12) throw InvalidArgument("probabilities do not sum to 1");
        CoefficientDistribution mu;
        mu.ctx_ = ctx;
        for (const auto& [k, v] : table) {
            if (v == 0) continue;
            mu.support_.push_back(ctx.element(k));
            mu.probs_.push_back(v);
        }
        mu.finish();
        return mu;
    }

    static CoefficientDistribution uniform(const FieldCtx& ctx) {
        std::vector<FieldElement> s;
        for (u64 i = 0; i < ctx.q(); ++i) s.push_back(ctx.element(i));
        return uniform_on(ctx, s);
    }
    static CoefficientDistribution uniform_on(const FieldCtx& ctx, const std::vector<FieldElement>& support) {
        if (support.empty()) throw InvalidArgument("empty support");
        std::vector<FieldElement> s = support;
        std::sort(s.begin(), s.end(), [&](const auto& a, const auto& b) { return ctx.index_of(a) < ctx.index_of(b); });
        s.erase(std::unique(s.begin(), s.end()), s.end());
        const mpq_class w(1, static_cast<unsigned long>(s.size()));
        return from_rationals(ctx, s, std::vector<mpq_class>(s.size(), w));
    }
    static CoefficientDistribution point_mass(const FieldElement& a) {
        return from_rationals(a.ctx(), {a}, {mpq_class(1)});
    }

    const FieldCtx& ctx() const { return ctx_; }
    bool exact() const { return exact_; }
    /// Support in canonical order (by coordinate index).
    const std::vector<FieldElement>& support() const { return support_; }
    const std::vector<double>& probs() const { return probs_; }
    const std::vector<mpq_class>& exact_probs() const {
        if (!exact_) throw InvalidArgument("coefficient law is not rational");
        return exact_probs_;
    }
    double prob(const FieldElement& a) const {
        const auto i = find(a);
        return i ? probs_[*i] : 0.0;
    }
    mpq_class exact_prob(const FieldElement& a) const {
        const auto& ep = exact_probs();
        const auto i = find(a);
        return i ? ep[*i] : mpq_class(0);
    }

    /// 1 - max mass of a proper affine F_p-subspace; for e > 1 the maximum is
    /// attained on a hyperplane {x : Tr(lambda x) = c}.
    double eta() const { return eta_; }
    mpq_class eta_exact() const {
        if (!exact_) throw InvalidArgument("coefficient law is not rational");
        return eta_exact_;
    }

    FieldElement sample(Rng& rng) const {
        std::size_t k;
        if (!cum_int_.empty()) {
            const u64 u = rng.uniform_below(denominator_);
            k = static_cast<std::size_t>(std::upper_bound(cum_int_.begin(), cum_int_.end(), u) - cum_int_.begin());
        } else {
            const double u = rng.uniform01();
            k = static_cast<std::size_t>(std::upper_bound(cum_.begin(), cum_.end(), u) - cum_.begin());
            if (k >= support_.size()) k = support_.size() - 1;
        }
        return support_[k];
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["field"] = ctx_.describe();
        std::vector<std::uint32_t> mod(ctx_.modulus().begin(), ctx_.modulus().end());
        j["modulus"] = mod;
        j["support"] = nlohmann::json::array();
        j["probs"] = nlohmann::json::array();
        for (std::size_t i = 0; i < support_.size(); ++i) {
            j["support"].push_back(support_[i].to_string());
            if (exact_)
                j["probs"].push_back(polylab::to_string(exact_probs_[i]));
            else
                j["probs"].push_back(probs_[i]);
        }
        return j;
    }

private:
    std::optional<std::size_t> find(const FieldElement& a) const {
        for (std::size_t i = 0; i < support_.size(); ++i)
            if (support_[i] == a) return i;
        return std::nullopt;
    }

    void finish() {
        if (support_.empty()) throw InvalidArgument("empty support");
        double c = 0;
        for (double v : probs_) cum_.push_back(c += v);
        if (exact_) {
            mpz_class lcm = 1;
            for (const auto& v : exact_probs_) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
            if (lcm.fits_ulong_p() && lcm <= mpz_class("9223372036854775807")) {
                denominator_ = lcm.get_ui();
                u64 acc = 0;
                for (const auto& v : exact_probs_) {
                    mpq_class scaled = v * mpq_class(lcm);
                    acc += mpz_class(scaled.get_num()).get_ui();
                    cum_int_.push_back(acc);
                }
            }
        }
        compute_eta();
    }

    void compute_eta() {
        const unsigned e = ctx_.e();
        const u64 p = ctx_.p();
        std::vector<mpq_class> exact_best;
        double best = 0;
        mpq_class best_exact = 0;
        if (e == 1) {
            for (std::size_t i = 0; i < support_.size(); ++i) {
                best = std::max(best, probs_[i]);
                if (exact_ && exact_probs_[i] > best_exact) best_exact = exact_probs_[i];
            }
        } else {
            // projective directions: first nonzero coordinate equal to 1
            const u64 q = ctx_.q();
            std::vector<double> bins(p);
            std::vector<mpq_class> ebins(exact_ ? p : 0);
            for (u64 idx = 1; idx < q; ++idx) {
                const FieldElement lambda = ctx_.element(idx);
                unsigned lead = 0;
                while (lambda.coord(lead) == 0) ++lead;
                if (lambda.coord(lead) != 1) continue;
                std::fill(bins.begin(), bins.end(), 0.0);
                for (auto& b : ebins) b = 0;
                for (std::size_t i = 0; i < support_.size(); ++i) {
                    const std::uint32_t c = trace(lambda * support_[i]);
                    bins[c] += probs_[i];
                    if (exact_) ebins[c] += exact_probs_[i];
                }
                best = std::max(best, *std::max_element(bins.begin(), bins.end()));
                if (exact_)
                    for (const auto& b : ebins)
                        if (b > best_exact) best_exact = b;
            }
        }
        eta_ = 1.0 - best;
        if (exact_) {
            eta_exact_ = 1 - best_exact;
            eta_ = eta_exact_.get_d();
        }
    }

    FieldCtx ctx_;
    bool exact_ = false;
    std::vector<FieldElement> support_;
    std::vector<double> probs_;
    std::vector<mpq_class> exact_probs_;
    std::vector<double> cum_;
    std::vector<u64> cum_int_;
    u64 denominator_ = 0;
    double eta_ = 0;
    mpq_class eta_exact_ = 0;
};

/// f = sum_{i <= n} eps_i x^i with eps_i i.i.d. from mu; may have degree < n.
inline Polynomial sample_poly(const CoefficientDistribution& mu, unsigned n, Rng& rng) {
    std::vector<ExtCoords> c(n + 1);
    for (auto& x : c) x = mu.sample(rng).coords();
    return {mu.ctx(), std::move(c)};
}

/// Uniformly random monic polynomial of degree exactly n.
inline Polynomial sample_uniform_monic(const FieldCtx& ctx, unsigned n, Rng& rng) {
    if (n < 1) throw InvalidArgument("sample_uniform_monic needs n >= 1");
    std::vector<ExtCoords> c(n + 1);
    for (unsigned i = 0; i < n; ++i) c[i] = ctx.element(rng.uniform_below(ctx.q())).coords();
    c[n] = ctx.one().coords();
    return {ctx, std::move(c)};
}

// Reference random variables. Parameters m may exceed 2^63 (pi(i) grows like
// q^i / i), so they are passed as doubles where the law allows it.
namespace ref {

inline void check_prob(double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw InvalidArgument("probability parameter outside [0, 1]");
}

/// Binomial(m, r). For m beyond 2^62 the Poisson(m r) law is used; the two
/// differ by at most m r^2 in total variation.
inline std::uint64_t binomial(double m, double r, Rng& rng) {
    check_prob(r);
    if (m < 0) throw InvalidArgument("binomial needs m >= 0");
    if (m == 0 || r == 0) return 0;
    if (m > 4.6e18) return std::poisson_distribution<std::uint64_t>(m * r)(rng);
    return static_cast<std::uint64_t>(std::binomial_distribution<long long>(static_cast<long long>(m), r)(rng));
}

/// Negative binomial: sum of m independent geometric(r) counts,
/// P[k] = C(m+k-1, k) r^k (1-r)^m. Drawn as a gamma-mixed Poisson.
inline std::uint64_t negative_binomial(double m, double r, Rng& rng) {
    check_prob(r);
    if (r >= 1.0) throw InvalidArgument("negative binomial needs r < 1");
    if (m < 0) throw InvalidArgument("negative binomial needs m >= 0");
    if (m == 0 || r == 0) return 0;
    const double lambda = std::gamma_distribution<double>(m, r / (1.0 - r))(rng);
    if (lambda <= 0) return 0;
    return std::poisson_distribution<std::uint64_t>(lambda)(rng);
}

inline std::uint64_t poisson(double lambda, Rng& rng) {
    if (!(lambda >= 0)) throw InvalidArgument("poisson needs lambda >= 0");
    if (lambda == 0) return 0;
    return std::poisson_distribution<std::uint64_t>(lambda)(rng);
}

/// P[G >= k] = r^k (multiplicity of a fixed irreducible with r = q^{-deg}).
inline std::uint64_t geometric(double r, Rng& rng) {
    check_prob(r);
    if (r >= 1.0) throw InvalidArgument("geometric needs r < 1");
    if (r == 0) return 0;
    return std::geometric_distribution<std::uint64_t>(1.0 - r)(rng);
}

inline constexpr double kStickResidual = 0x1.0p-40;

/// Stick breaking V_i = U_i prod_{j<i} (1 - U_j) with U_i from `next_u`,
/// stopped once the residual stick drops below 2^-40 or after `depth` pieces.
/// Returns the lengths sorted descending and normalized to sum to 1.
inline std::vector<double> stick_breaking_from(const std::function<double()>& next_u, std::size_t depth = 100000) {
    std::vector<double> pieces;
    double residual = 1.0;
    while (residual >= kStickResidual && pieces.size() < depth) {
        const double u = next_u();
        pieces.push_back(residual * u);
        residual *= 1.0 - u;
    }
    double total = 0;
    for (double v : pieces) total += v;
    for (double& v : pieces) v /= total;
    std::sort(pieces.begin(), pieces.end(), std::greater<>());
    return pieces;
}

inline std::vector<double> stick_breaking_pd(std::size_t depth, Rng& rng) {
    return stick_breaking_from([&] { return rng.uniform_open01(); }, depth);
}

/// Largest part of the Poisson-Dirichlet(1) partition; stops as soon as the
/// residual stick cannot beat the current maximum.
inline double pd_max(Rng& rng) {
    double residual = 1.0, best = 0.0;
    while (residual > best && residual >= kStickResidual) {
        const double u = rng.uniform_open01();
        best = std::max(best, residual * u);
        residual *= 1.0 - u;
    }
    return best;
}

/// (C_1, ..., C_n) for a uniform permutation of n, via the Feller coupling:
/// independent xi_i ~ Bernoulli(1/i), cycle lengths are the spacings between
/// successive ones of xi_1 xi_2 ... xi_n 1.
inline std::vector<std::uint32_t> permutation_cycle_counts(unsigned n, Rng& rng) {
    std::vector<std::uint32_t> c(n, 0);
    if (n == 0) return c;
    unsigned last = 1;  // xi_1 = 1
    for (unsigned i = 2; i <= n; ++i) {
        if (rng.uniform_below(i) == 0) {
            ++c[i - last - 1];
            last = i;
        }
    }
    ++c[n + 1 - last - 1];
    return c;
}

}  // namespace ref

// Configuration: {field: "p^e", modulus?: [...], seed?: k, support: [...], probs: [...]}.
// Support entries are integers or element strings "a0+a1*t"; probs are numbers
// or strings such as "1/3" and "0.3" (parsed exactly).

inline FieldCtx field_from_json(const nlohmann::json& j) {
    if (!j.contains("field")) throw InvalidArgument("missing 'field'");
    const std::string spec = j.at("field").get<std::string>();
    const auto caret = spec.find('^');
    u64 p = 0;
    unsigned e = 1;
    try {
        p = std::stoull(spec.substr(0, caret));
        if (caret != std::string::npos) e = static_cast<unsigned>(std::stoul(spec.substr(caret + 1)));
    } catch (const std::exception&) {
        throw InvalidArgument("bad field spec '" + spec + "'");
    }
    std::optional<std::vector<u64>> modulus;
    if (j.contains("modulus")) modulus = j.at("modulus").get<std::vector<u64>>();
    const u64 seed = j.value("seed", u64{0});
    return make_field(p, e, modulus, seed);
}

inline FieldElement element_from_json(const nlohmann::json& v, const FieldCtx& ctx) {
    if (v.is_number_integer()) return ctx.from_int(v.get<long long>());
    if (v.is_string()) return detail::parse_element(v.get<std::string>(), ctx);
    throw InvalidArgument("support entries must be integers or element strings");
}

inline mpq_class rational_from_json(const nlohmann::json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return mpq_class(static_cast<long>(v.get<long long>()));
    if (v.is_number_float()) return parse_rational(v.dump());
    throw InvalidArgument("probabilities must be numbers or strings");
}

inline CoefficientDistribution mu_from_json(const nlohmann::json& j, const FieldCtx& ctx) {
    const auto& sup = j.at("support");
    const auto& pr = j.at("probs");
    if (!sup.is_array() || !pr.is_array() || sup.size() != pr.size())
        throw InvalidArgument("'support' and 'probs' must be arrays of equal length");
    std::vector<FieldElement> support;
    std::vector<mpq_class> probs;
    for (std::size_t i = 0; i < sup.size(); ++i) {
        support.push_back(element_from_json(sup[i], ctx));
        probs.push_back(rational_from_json(pr[i]));
    }
    mpq_class total = 0;
    for (const auto& v : probs) total += v;
    if (total == 1) return CoefficientDistribution::from_rationals(ctx, support, probs);
    std::vector<double> dprobs;
    for (const auto& v : probs) dprobs.push_back(v.get_d());
    return CoefficientDistribution::from_doubles(ctx, support, dprobs);
}

/// Short text forms used on the command line:
///   "uniform"                  uniform on F_q
///   "uniform:-1,0,1"           uniform on the listed elements
///   "0:1/2,1:1/2"              explicit element:probability pairs
///   a JSON object              as mu_from_json
inline CoefficientDistribution parse_mu(const std::string& text, const FieldCtx& ctx) {
    std::string_view s = detail::strip(text);
    if (s.empty()) throw InvalidArgument("empty mu spec");
    if (s.front() == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(s);
        } catch (const nlohmann::json::exception& e) {
            throw InvalidArgument(std::string("bad mu JSON: ") + e.what());
        }
        return mu_from_json(j, ctx);
    }
    if (s == "uniform") return CoefficientDistribution::uniform(ctx);
    auto split = [](std::string_view body) {
        std::vector<std::string_view> parts;
        std::size_t start = 0;
        while (start <= body.size()) {
            std::size_t comma = body.find(',', start);
            if (comma == std::string_view::npos) comma = body.size();
            parts.push_back(detail::strip(body.substr(start, comma - start)));
            start = comma + 1;
        }
        return parts;
    };
    auto parse_value = [&](std::string_view v) {
        v = detail::strip(v);
        if (!v.empty() && v.front() == '-') {
            const u64 a = detail::parse_u64(v.substr(1), "mu spec");
            return ctx.from_int(-static_cast<long long>(a % ctx.p()));
        }
        return detail::parse_element(v, ctx);
    };
    if (s.rfind("uniform:", 0) == 0) {
        std::vector<FieldElement> support;
        for (auto part : split(s.substr(8))) support.push_back(parse_value(part));
        return CoefficientDistribution::uniform_on(ctx, support);
    }
    std::vector<FieldElement> support;
    std::vector<mpq_class> probs;
    for (auto part : split(s)) {
        const auto colon = part.find(':');
        if (colon == std::string_view::npos) throw InvalidArgument("mu pairs must look like value:prob");
        support.push_back(parse_value(part.substr(0, colon)));
        probs.push_back(parse_rational(part.substr(colon + 1)));
    }
    return CoefficientDistribution::from_rationals(ctx, support, probs);
}

}  // namespace polylab

// SPDX-License-Identifier: Apache-2.0
#pragma once

// File-producing front ends over the exact oracles, the series engine and
// the order analysis, shared by the command-line tool and the tests.

#include <string>
#include <vector>

#include "polylab/exact_oracles.hpp"
#include "polylab/harness.hpp"
#include "polylab/moment_engine.hpp"
#include "polylab/order_analysis.hpp"

namespace polylab::harness {

/// Root constraint text "alpha:k1,k2,..." with alpha an element of F_{p^e}
/// ("2", "t", "1+2*t"); the derivative list defaults to "0".
inline RootConstraint parse_root(const std::string& text, const FieldCtx& F) {
    const auto colon = text.find(':');
    RootConstraint rc{polylab::detail::parse_element(text.substr(0, colon), F), {}};
    if (colon == std::string::npos) {
        rc.derivatives = {0};
        return rc;
    }
    std::string rest = text.substr(colon + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
        auto comma = rest.find(',', start);
        if (comma == std::string::npos) comma = rest.size();
        try {
            rc.derivatives.push_back(static_cast<unsigned>(std::stoul(rest.substr(start, comma - start))));
        } catch (const std::exception&) {
            throw InvalidArgument("bad derivative list in '" + text + "'");
        }
        start = comma + 1;
    }
    return rc;
}

/// Multiplicity form of a constraint set, or nullopt when some K_j is not {0..m-1}.
inline std::optional<std::vector<std::pair<FieldElement, unsigned>>> as_multiplicities(const std::vector<RootConstraint>& cs) {
    std::vector<std::pair<FieldElement, unsigned>> out;
    for (const auto& c : cs) {
        auto k = c.derivatives;
        std::sort(k.begin(), k.end());
        k.erase(std::unique(k.begin(), k.end()), k.end());
        for (std::size_t i = 0; i < k.size(); ++i)
            if (k[i] != i) return std::nullopt;
        out.emplace_back(c.alpha, static_cast<unsigned>(k.size()));
    }
    return out;
}

/// One (mu, n, V) instance. Roots may live in F_p or in F_{p^e} (the
/// element text decides: anything mentioning t is read in F_{p^e}).
struct FourierRequest {
    u64 p = 3;
    unsigned e = 1;
    std::string mu = "0:1/2,1:1/2";
    unsigned n = 10;
    std::vector<std::string> roots{"1:0"};

    json to_json() const { return {{"p", p}, {"e", e}, {"mu", mu}, {"n", n}, {"roots", roots}}; }
    std::string hash() const { return content_hash(to_json()); }
};

struct FourierInstance {
    FieldCtx Fp;
    CoefficientDistribution mu;
    VSpace V;
    std::vector<RootConstraint> constraints;
};

inline FourierInstance build_instance(const FourierRequest& r) {
    const FieldCtx Fp = make_field(r.p, 1);
    std::optional<FieldCtx> Fe;
    if (r.e > 1) Fe = make_field(r.p, r.e);
    std::vector<RootConstraint> cs;
    for (const auto& text : r.roots) {
        const bool ext = text.substr(0, text.find(':')).find('t') != std::string::npos;
        if (ext && !Fe) throw InvalidArgument("root '" + text + "' needs e > 1");
        cs.push_back(parse_root(text, ext ? *Fe : Fp));
    }
    auto mu = parse_mu(r.mu, Fp);
    VSpace V(cs);
    return {Fp, std::move(mu), std::move(V), std::move(cs)};
}

/// nu_n, its Fourier maximum against the bound and, for multiplicity-type
/// constraints with d <= n, the divisibility chain.
inline json exact_report(const FourierRequest& r, bool include_law) {
    const auto inst = build_instance(r);
    const json cfg = r.to_json();
    json j{{"schema", "polylab-exact/1"}, {"config_hash", r.hash()}, {"config", cfg}, {"space", inst.V.to_json()}};
    const VLaw law = nu_n_distribution(inst.mu, r.n, inst.V);
    j["prob_zero"] = polylab::to_string(law.prob_zero());
    if (include_law) {
        j["law"] = json::array();
        for (u64 i = 0; i < law.weights.size(); ++i)
            if (law.weights[i] != 0)
                j["law"].push_back({{"index", i}, {"digits", inst.V.digits_of(i)}, {"prob", polylab::to_string(law.weights[i])}});
    }
    j["prop32"] = check_prop32(inst.mu, r.n, inst.V).to_json(cfg);
    if (auto m = as_multiplicities(inst.constraints); m && inst.V.d() <= r.n)
        j["divisibility"] = check_divisibility_chain(inst.mu, r.n, *m).to_json(cfg);
    return j;
}

// ---- the Fourier grid ------------------------------------------------------

/// Root sets of the standard grid for a prime p: single roots, pairs,
/// Hasse-derivative constraints and roots in F_{p^2}, with d <= 4.
inline std::vector<std::vector<std::string>> grid_root_sets() {
    return {{"1:0"},           {"1:0", "2:0"},      {"1:0,1"},        {"2:0,1", "1:0"},
            {"t:0"},           {"t:0", "1:0,1"},    {"1:0,1,2,3"}};
}

inline std::vector<FourierRequest> fourier_grid() {
    std::vector<FourierRequest> out;
    for (u64 p : {3, 5, 7})
        for (const char* mu : {"0:1/2,1:1/2", "0:1/3,1:2/3"})
            for (const auto& roots : grid_root_sets())
                for (unsigned n : {10u, 20u, 40u, 60u}) {
                    const bool ext = std::any_of(roots.begin(), roots.end(), [](const std::string& s) { return s[0] == 't'; });
                    out.push_back({p, ext ? 2u : 1u, mu, n, roots});
                }
    return out;
}

struct GridResult {
    json entries = json::array();
    bool prop32_all = true;
    bool divisibility_all = true;
    std::size_t duals = 0;
};

inline GridResult run_fourier_grid(const std::vector<FourierRequest>& grid) {
    GridResult g;
    for (const auto& r : grid) {
        const auto inst = build_instance(r);
        const auto rep = check_prop32(inst.mu, r.n, inst.V);
        json e{{"config", r.to_json()}, {"prop32", rep.to_json(r.to_json())}};
        g.prop32_all = g.prop32_all && rep.pass;
        g.duals += rep.duals_checked;
        if (auto m = as_multiplicities(inst.constraints); m && inst.V.d() <= r.n) {
            const auto div = check_divisibility_chain(inst.mu, r.n, *m);
            e["divisibility"] = div.to_json(r.to_json());
            g.divisibility_all = g.divisibility_all && div.chain_holds && div.gap_within_bound;
        }
        g.entries.push_back(std::move(e));
    }
    return g;
}

// ---- moments ---------------------------------------------------------------

struct MomentsRequest {
    u64 q = 2;
    unsigned n = 8;
    std::vector<unsigned> h{2, 1};
    std::string model = "distinct";
    bool exclude_x = true;
    bool law = false;

    json to_json() const {
        return {{"q", q}, {"n", n}, {"h", h}, {"model", model}, {"exclude_x", exclude_x}, {"law", law}};
    }
};

inline json moments_report(const MomentsRequest& r) {
    if (r.h.empty()) throw InvalidArgument("exponent list is empty");
    const FactorModel model = parse_model(r.model);
    MomentReport m{r.h, uniform_joint_moment(r.q, r.n, r.h, model, r.exclude_x), model, r.exclude_x};
    json j{{"schema", "polylab-moments/1"}, {"config_hash", content_hash(r.to_json())}, {"config", r.to_json()},
           {"moment", m.to_json()}};
    if (r.law)
        j["law"] = uniform_joint_law(r.q, r.n, static_cast<unsigned>(r.h.size()), model, r.exclude_x).to_json();
    return j;
}

// ---- moment comparison grid ------------------------------------------------

/// One comparison of the exact mu-model law (f != 0, x excluded) with the
/// exact uniform monic law through their joint moments.
struct PointwiseCase {
    u64 q;
    std::string mu;
    unsigned n, N, H;
    std::string model;

    json to_json() const { return {{"q", q}, {"mu", mu}, {"n", n}, {"N", N}, {"H", H}, {"model", model}}; }
};

inline std::vector<PointwiseCase> pointwise_grid() {
    std::vector<PointwiseCase> out;
    for (u64 q : {2, 3})
        for (const char* mu : {"uniform", "0:1/3,1:2/3"})
            for (unsigned n = 2; n <= 8; ++n)
                for (unsigned N = 1; N <= 2; ++N)
                    for (unsigned H = 1; H <= 4; ++H)
                        for (const char* model : {"distinct", "with_multiplicity"}) out.push_back({q, mu, n, N, H, model});
    return out;
}

/// Poisson tail bound for E(sum Z_i)^H when it applies.
inline std::optional<double> lemma_moment_floor(unsigned H, unsigned N) {
    if (static_cast<double>(H) <= std::log(static_cast<double>(N) + 1)) return std::nullopt;
    return poisson_moment_bound(H, N);
}

inline PointwiseReport run_pointwise(const PointwiseCase& c) {
    const FieldCtx F = make_field(c.q, 1);
    const auto mu = parse_mu(c.mu, F);
    const FactorModel model = parse_model(c.model);
    const auto brute = brute_joint_pmf(mu, c.n, c.N, {.monic = false, .include_x = false});
    const ExactPMF a = (model == FactorModel::distinct ? brute.distinct : brute.with_mult).normalized();
    const ExactPMF b = uniform_joint_law(c.q, c.n, c.N, model, /*exclude_x=*/true);
    return pointwise_check(a, b, c.H, lemma_moment_floor(c.H, c.N));
}

// ---- order classification --------------------------------------------------

struct ClassifyRequest {
    u64 p = 101;
    unsigned e = 1;
    OrderThresholdParams params{};
    bool polys = false;  // classify monic irreducibles of degree e instead of elements

    json to_json() const {
        return {{"p", p}, {"e", e}, {"H", params.H}, {"K", params.K}, {"C_order", params.C_order}, {"polys", polys}};
    }
};

inline constexpr u64 kClassifyCap = 1'000'000;

inline std::vector<ClassificationRow> classify_rows(const ClassifyRequest& r) {
    OrderThresholdParams par = r.params;
    par.p = r.p;
    par.e = r.e;
    std::vector<ClassificationRow> rows;
    if (!r.polys) {
        const FieldCtx F = make_field(r.p, r.e);
        if (F.q() == 0 || F.q() > kClassifyCap) throw ResourceCapExceeded("classify limited to fields of size <= 10^6");
        for (u64 i = 1; i < F.q(); ++i) {
            const auto a = F.element(i);
            const auto c = classify_element(a, par);
            rows.push_back({a.to_string(), c.order, c.threshold, c.high});
        }
        return rows;
    }
    const FieldCtx Fp = make_field(r.p, 1);
    const u64 count = nt::checked_pow(r.p, r.e);
    if (count == 0 || count > kClassifyCap) throw ResourceCapExceeded("classify limited to p^e <= 10^6 polynomials");
    for (u64 idx = 0; idx < count; ++idx) {
        std::vector<long long> c(r.e + 1);
        u64 x = idx;
        for (unsigned i = 0; i < r.e; ++i, x /= r.p) c[i] = static_cast<long long>(x % r.p);
        c[r.e] = 1;
        const auto g = Polynomial::from_ints(Fp, c);
        if (g.degree() == 1 && c[0] == 0) continue;  // x
        if (!is_irreducible(g)) continue;
        const auto cl = classify_irreducible(g, par);
        rows.push_back({g.to_string(), cl.order, cl.threshold, cl.high});
    }
    return rows;
}

inline json classify_summary(const ClassifyRequest& r, const std::vector<ClassificationRow>& rows) {
    OrderThresholdParams par = r.params;
    par.p = r.p;
    par.e = r.e;
    std::size_t high = 0;
    for (const auto& row : rows) high += row.high;
    json j{{"schema", "polylab-classify/1"}, {"config_hash", content_hash(r.to_json())}, {"config", r.to_json()},
           {"threshold", order_threshold(par)}, {"items", rows.size()}, {"high", high}, {"low", rows.size() - high}};
    if (!r.polys && order_threshold(par) >= 1) {
        const double below = std::ceil(order_threshold(par)) - 1;
        if (below >= 1) j["exact_low_count"] = count_low_order(r.p, r.e, below);
    }
    return j;
}

/// CSV with a hash preamble; columns element,order,threshold,class.
inline std::string classification_csv(const std::string& hash, const std::vector<ClassificationRow>& rows) {
    std::ostringstream o;
    o << csv_preamble(hash, "order classification");
    o << "element,order,threshold,class\n";
    for (const auto& r : rows)
        o << '"' << r.element << "\"," << r.order << ',' << fmt(r.threshold) << ',' << (r.high ? "high" : "low") << '\n';
    return o.str();
}

}  // namespace polylab::harness

// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exact small-instance ground truth. The joint law nu_n of the values
// (D^{(k)} f(alpha_j))_{j, k in K_j} is built by sequential convolution over
// the flattened F_p-space V; its Fourier coefficients are available both by
// direct summation and by the product formula prod_i mu-hat(<beta, T v_i>).
// Brute-force enumeration gives exact joint laws of factor counts.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "polylab/coeff_models.hpp"
#include "polylab/errors.hpp"
#include "polylab/factor_stats.hpp"
#include "polylab/ff_core.hpp"
#include "polylab/pmf.hpp"
#include "polylab/poly_algebra.hpp"
#include "polylab/rational.hpp"

namespace polylab {

inline constexpr u64 kStateSpaceCap = 10'000'000;
inline constexpr u64 kEnumerationCap = 20'000'000;

struct RootConstraint {
    FieldElement alpha;
    std::vector<unsigned> derivatives;  // the set K_j
};

/// V = prod_j (F_{p^{e_j}})^{K_j}, flattened to F_p^{d'} as (j, k in K_j ascending, coordinate).
class VSpace {
public:
    VSpace() = default;
    explicit VSpace(std::vector<RootConstraint> constraints) : cs_(std::move(constraints)) {
        if (cs_.empty()) throw InvalidArgument("VSpace needs at least one root");
        p_ = cs_.front().alpha.ctx().p();
        std::vector<Polynomial> minpolys;
        for (auto& c : cs_) {
            const FieldElement& a = c.alpha;
            if (a.ctx().p() != p_) throw InvalidArgument("roots over different characteristics");
            if (a.is_zero()) throw InvalidArgument("root alpha = 0 is degenerate");
            if (lies_in_proper_subfield(a)) throw InvalidArgument("root lies in a proper subfield of its field");
            if (c.derivatives.empty()) throw InvalidArgument("empty derivative set");
            std::sort(c.derivatives.begin(), c.derivatives.end());
            c.derivatives.erase(std::unique(c.derivatives.begin(), c.derivatives.end()), c.derivatives.end());
            Polynomial mp = minimal_polynomial(a);
            for (const auto& other : minpolys)
                if (other == mp) throw InvalidArgument("roots are Galois conjugate");
            minpolys.push_back(std::move(mp));
            dim_ += a.ctx().e() * c.derivatives.size();
            d_ += a.ctx().e() * (c.derivatives.back() + 1);
        }
        const u64 cap = std::numeric_limits<u64>::max();
        size_ = 1;
        for (std::size_t i = 0; i < dim_; ++i) size_ = size_ > cap / p_ ? cap : size_ * p_;
    }

    /// Roots alpha_j with derivative sets {0, ..., m_j - 1}.
    static VSpace with_multiplicities(const std::vector<std::pair<FieldElement, unsigned>>& roots) {
        std::vector<RootConstraint> cs;
        for (const auto& [a, m] : roots) {
            if (m < 1) throw InvalidArgument("multiplicity must be >= 1");
            RootConstraint c{a, {}};
            for (unsigned k = 0; k < m; ++k) c.derivatives.push_back(k);
            cs.push_back(std::move(c));
        }
        return VSpace(std::move(cs));
    }

    u64 p() const { return p_; }
    std::size_t dim() const { return dim_; }  // d'
    std::size_t d() const { return d_; }      // sum e_j (max K_j + 1)
    u64 size() const { return size_; }        // p^{d'}, saturating
    const std::vector<RootConstraint>& constraints() const { return cs_; }

    /// Number of (j, k) slots.
    std::size_t slots() const {
        std::size_t s = 0;
        for (const auto& c : cs_) s += c.derivatives.size();
        return s;
    }

    /// Field of each (j, k) slot in layout order.
    std::vector<FieldCtx> slot_fields() const {
        std::vector<FieldCtx> out;
        for (const auto& c : cs_)
            for (std::size_t k = 0; k < c.derivatives.size(); ++k) out.push_back(c.alpha.ctx());
        return out;
    }

    /// (D^{(k)}(x^i))(alpha_j) = C(i, k) alpha_j^{i-k} for every slot.
    std::vector<FieldElement> column(u64 i) const {
        std::vector<FieldElement> out;
        for (const auto& c : cs_) {
            const FieldCtx& L = c.alpha.ctx();
            BinomialModP binom(p_, i);
            for (unsigned k : c.derivatives) {
                if (i < k)
                    out.push_back(L.zero());
                else
                    out.push_back(L.from_int(static_cast<long long>(binom(i, k))) * c.alpha.pow(i - k));
            }
        }
        return out;
    }

    /// Flattens slot values to F_p digits.
    std::vector<std::uint32_t> flatten(const std::vector<FieldElement>& slots_values) const {
        std::vector<std::uint32_t> out;
        out.reserve(dim_);
        for (const auto& v : slots_values)
            for (unsigned c = 0; c < v.ctx().e(); ++c) out.push_back(v.coord(c));
        return out;
    }

    /// The F_p-linear functional v -> sum_{j,k} Tr(beta_{j,k} v_{j,k}) on flattened vectors.
    std::vector<std::uint32_t> functional(const std::vector<FieldElement>& beta) const {
        const auto fields = slot_fields();
        if (beta.size() != fields.size()) throw InvalidArgument("dual vector has the wrong number of slots");
        std::vector<std::uint32_t> ell;
        for (std::size_t s = 0; s < beta.size(); ++s) {
            if (!beta[s].ctx().same_as(fields[s])) throw InvalidArgument("dual vector component from the wrong field");
            const FieldCtx& L = fields[s];
            for (unsigned c = 0; c < L.e(); ++c) {
                ExtCoords basis{};
                basis[c] = 1;
                ell.push_back(trace(beta[s] * FieldElement(L, basis)));
            }
        }
        return ell;
    }

    u64 index_of(const std::vector<std::uint32_t>& digits) const {
        u64 idx = 0;
        for (std::size_t c = digits.size(); c-- > 0;) idx = idx * p_ + digits[c];
        return idx;
    }
    std::vector<std::uint32_t> digits_of(u64 idx) const {
        std::vector<std::uint32_t> out(dim_);
        for (std::size_t c = 0; c < dim_; ++c) {
            out[c] = static_cast<std::uint32_t>(idx % p_);
            idx /= p_;
        }
        return out;
    }

    /// All dual vectors with every component nonzero, in a fixed order.
    std::vector<std::vector<FieldElement>> nonzero_duals() const {
        const auto fields = slot_fields();
        std::vector<std::vector<FieldElement>> out{{}};
        for (const auto& L : fields) {
            std::vector<std::vector<FieldElement>> next;
            for (const auto& partial : out)
                for (u64 idx = 1; idx < L.q(); ++idx) {
                    auto v = partial;
                    v.push_back(L.element(idx));
                    next.push_back(std::move(v));
                }
            out = std::move(next);
        }
        return out;
    }

    nlohmann::json to_json() const {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& c : cs_)
            j.push_back({{"alpha", c.alpha.to_string()}, {"field", c.alpha.ctx().describe()}, {"derivatives", c.derivatives}});
        return j;
    }

private:
    std::vector<RootConstraint> cs_;
    u64 p_ = 2;
    std::size_t dim_ = 0, d_ = 0;
    u64 size_ = 1;
};

namespace detail {

/// Coefficients of mu act on slot values through the field of each slot: mu
/// must live on F_p or on the same field as every root.
inline FieldElement lift_coefficient(const FieldElement& eps, const FieldCtx& slot_field) {
    if (eps.ctx().same_as(slot_field)) return eps;
    if (eps.ctx().e() == 1 && eps.ctx().p() == slot_field.p()) return slot_field.from_int(eps.coord(0));
    throw InvalidArgument("coefficient field " + eps.ctx().describe() + " does not act on " + slot_field.describe());
}

/// Flattened shift eps * T v_i.
inline std::vector<std::uint32_t> shift_vector(const VSpace& V, const std::vector<FieldElement>& column,
                                               const FieldElement& eps) {
    std::vector<FieldElement> scaled;
    scaled.reserve(column.size());
    for (const auto& w : column) scaled.push_back(lift_coefficient(eps, w.ctx()) * w);
    return V.flatten(scaled);
}

}  // namespace detail

/// Dense law on V = F_p^{d'}: weights[idx] over the base-p index of the digit vector.
struct VLaw {
    VSpace space;
    std::vector<mpq_class> weights;

    ExactPMF to_pmf() const {
        ExactPMF out;
        for (u64 idx = 0; idx < weights.size(); ++idx) {
            if (weights[idx] == 0) continue;
            const auto dg = space.digits_of(idx);
            out.add(Key(dg.begin(), dg.end()), weights[idx]);
        }
        return out;
    }
    mpq_class prob_zero() const { return weights.at(0); }
};

/// Exact nu_n: law of sum_{i=0}^n eps_i T v_i with eps_i i.i.d. mu.
inline VLaw nu_n_distribution(const CoefficientDistribution& mu, unsigned n, const VSpace& V) {
    if (!mu.exact()) throw InvalidArgument("nu_n needs a rational coefficient law");
    if (V.size() > kStateSpaceCap)
        throw ResourceCapExceeded("state space p^{d'} = " + std::to_string(V.size()) + " exceeds 10^7");
    const u64 p = V.p();
    const std::size_t dim = V.dim();
    const u64 size = V.size();
    // Integer weights scaled by D^{i+1}, D the common denominator of mu.
    mpz_class D = 1;
    for (const auto& w : mu.exact_probs()) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), w.get_den().get_mpz_t());
    std::vector<mpz_class> num;
    for (const auto& w : mu.exact_probs()) num.push_back(mpz_class(w * mpq_class(D)));

    std::vector<mpz_class> cur(size), next(size);
    cur[0] = 1;
    std::vector<std::uint32_t> dg(dim);
    for (unsigned i = 0; i <= n; ++i) {
        const auto col = V.column(i);
        for (auto& v : next) v = 0;
        for (std::size_t s = 0; s < mu.support().size(); ++s) {
            const auto shift = detail::shift_vector(V, col, mu.support()[s]);
            for (u64 idx = 0; idx < size; ++idx) {
                if (cur[idx] == 0) continue;
                u64 rest = idx, target = 0, scale = 1;
                for (std::size_t c = 0; c < dim; ++c) {
                    const u64 digit = (rest % p + shift[c]) % p;
                    rest /= p;
                    target += digit * scale;
                    scale *= p;
                }
                mpz_addmul(next[target].get_mpz_t(), cur[idx].get_mpz_t(), num[s].get_mpz_t());
            }
        }
        std::swap(cur, next);
    }
    mpz_class denom;
    mpz_pow_ui(denom.get_mpz_t(), D.get_mpz_t(), n + 1);
    VLaw law{V, std::vector<mpq_class>(size)};
    for (u64 idx = 0; idx < size; ++idx) {
        law.weights[idx] = mpq_class(cur[idx], denom);
        law.weights[idx].canonicalize();
    }
    return law;
}

inline std::complex<double> e_p(u64 a, u64 p) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(a % p) / static_cast<double>(p);
    return {std::cos(angle), std::sin(angle)};
}

/// nu-hat(beta) = sum_v nu(v) e_p(sum Tr(beta_{j,k} v_{j,k})) by direct summation.
inline std::complex<double> fourier_coefficient(const VLaw& law, const std::vector<FieldElement>& beta) {
    const auto ell = law.space.functional(beta);
    const u64 p = law.space.p();
    std::complex<double> acc = 0;
    for (u64 idx = 0; idx < law.weights.size(); ++idx) {
        if (law.weights[idx] == 0) continue;
        u64 rest = idx, phase = 0;
        for (std::size_t c = 0; c < ell.size(); ++c) {
            phase += (rest % p) * ell[c];
            rest /= p;
        }
        acc += law.weights[idx].get_d() * e_p(phase % p, p);
    }
    return acc;
}

/// Fourier coefficient of an explicit PMF over flattened F_p digit vectors.
inline std::complex<double> fourier_coefficient(const ExactPMF& pmf, const std::vector<std::uint32_t>& ell, u64 p) {
    std::complex<double> acc = 0;
    for (const auto& [k, v] : pmf.table()) {
        if (k.size() != ell.size()) throw InvalidArgument("dual vector dimension mismatch");
        u64 phase = 0;
        for (std::size_t c = 0; c < ell.size(); ++c) phase += static_cast<u64>(k[c]) * ell[c];
        acc += v.get_d() * e_p(phase % p, p);
    }
    return acc;
}

/// Product formula nu-hat_n(beta) = prod_{i=0}^n mu-hat(<beta, T v_i>).
inline std::complex<double> fourier_product(const CoefficientDistribution& mu, unsigned n, const VSpace& V,
                                            const std::vector<FieldElement>& beta) {
    const auto ell = V.functional(beta);
    const u64 p = V.p();
    std::complex<double> acc = 1;
    for (unsigned i = 0; i <= n; ++i) {
        const auto col = V.column(i);
        std::complex<double> mu_hat = 0;
        for (std::size_t s = 0; s < mu.support().size(); ++s) {
            const auto shift = detail::shift_vector(V, col, mu.support()[s]);
            u64 phase = 0;
            for (std::size_t c = 0; c < ell.size(); ++c) phase += static_cast<u64>(shift[c]) * ell[c];
            mu_hat += mu.probs()[s] * e_p(phase % p, p);
        }
        acc *= mu_hat;
    }
    return acc;
}

/// All p^{d'} Fourier coefficients by a radix-p transform, indexed like the law.
inline std::vector<std::complex<double>> fourier_all(const VLaw& law) {
    const u64 p = law.space.p();
    const std::size_t dim = law.space.dim();
    std::vector<std::complex<double>> a(law.weights.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = law.weights[i].get_d();
    std::vector<std::complex<double>> roots(p);
    for (u64 r = 0; r < p; ++r) roots[r] = e_p(r, p);
    u64 stride = 1;
    std::vector<std::complex<double>> buf(p);
    for (std::size_t c = 0; c < dim; ++c, stride *= p) {
        for (u64 base = 0; base < a.size(); ++base) {
            if ((base / stride) % p != 0) continue;
            for (u64 out = 0; out < p; ++out) {
                std::complex<double> s = 0;
                for (u64 in = 0; in < p; ++in) s += a[base + in * stride] * roots[(in * out) % p];
                buf[out] = s;
            }
            for (u64 out = 0; out < p; ++out) a[base + out * stride] = buf[out];
        }
    }
    return a;
}

/// e^{-eta n / (d p^2)}, rounded up.
inline double prop32_bound(double eta, unsigned n, std::size_t d, u64 p) {
    const double x = eta * n / (static_cast<double>(d) * static_cast<double>(p) * static_cast<double>(p));
    return std::min(1.0, round_up(std::exp(-x)));
}

struct Prop32Report {
    double max_modulus = 0;
    std::vector<FieldElement> argmax;
    double bound = 1;
    double margin = 0;
    bool pass = true;
    std::size_t duals_checked = 0;
    double max_path_gap = 0;  // |DFT - product formula| when the DFT path ran
    std::size_t d = 0;
    double eta = 0;
    unsigned n = 0;

    nlohmann::json to_json(const nlohmann::json& config) const {
        return {{"config", config},
                {"max_fourier_modulus", max_modulus},
                {"bound", bound},
                {"margin", margin},
                {"pass", pass},
                {"duals_checked", duals_checked},
                {"max_path_gap", max_path_gap},
                {"d", d},
                {"eta", eta},
                {"n", n}};
    }
};

/// Relative slack granted to floating Fourier moduli when comparing against
/// the bound (a product of n + 1 double factors).
inline double modulus_slack(unsigned n) { return 1e-13 * (n + 2); }

/// max over all-nonzero beta of |nu-hat_n(beta)| against e^{-eta n/(d p^2)}.
inline Prop32Report check_prop32(const CoefficientDistribution& mu, unsigned n, const VSpace& V, bool cross_check = true) {
    Prop32Report rep;
    rep.d = V.d();
    rep.eta = mu.eta();
    rep.n = n;
    rep.bound = prop32_bound(mu.eta(), n, V.d(), V.p());
    std::optional<VLaw> law;
    if (cross_check && mu.exact() && V.size() <= kStateSpaceCap) law = nu_n_distribution(mu, n, V);
    for (const auto& beta : V.nonzero_duals()) {
        const std::complex<double> prod = fourier_product(mu, n, V, beta);
        if (law) rep.max_path_gap = std::max(rep.max_path_gap, std::abs(prod - fourier_coefficient(*law, beta)));
        const double m = std::abs(prod);
        if (m > rep.max_modulus || rep.argmax.empty()) {
            rep.max_modulus = m;
            rep.argmax = beta;
        }
        ++rep.duals_checked;
    }
    const double upper = rep.max_modulus * (1 + modulus_slack(n)) + 1e-300;
    rep.margin = rep.bound - upper;
    rep.pass = upper <= rep.bound;
    return rep;
}

/// P[D^{(k)} f(alpha_j) = 0 for all j and k < m_j]: the mass of 0 under nu_n.
inline mpq_class exact_divisibility_prob(const CoefficientDistribution& mu, unsigned n,
                                         const std::vector<std::pair<FieldElement, unsigned>>& constraints) {
    return nu_n_distribution(mu, n, VSpace::with_multiplicities(constraints)).prob_zero();
}

struct DivisibilityReport {
    mpq_class prob;          // exact, mu-model
    mpq_class uniform_prob;  // p^{-d}
    mpq_class gap;           // |prob - p^{-d}|
    double max_fourier = 0;  // max over beta != 0 of |nu-hat_n(beta)|
    double bound = 1;        // e^{-eta n/(d p^2)}
    bool chain_holds = true;  // gap <= max_fourier (with slack) and gap <= bound (exact)
    bool gap_within_bound = true;
    std::size_t d = 0;

    nlohmann::json to_json(const nlohmann::json& config) const {
        return {{"config", config},
                {"prob", to_string(prob)},
                {"uniform_prob", to_string(uniform_prob)},
                {"gap", to_string(gap)},
                {"gap_float", gap.get_d()},
                {"max_fourier_modulus", max_fourier},
                {"bound", bound},
                {"margin", bound - gap.get_d()},
                {"pass", chain_holds && gap_within_bound}};
    }
};

/// The chain |P - p^{-d}| <= max_{beta != 0} |nu-hat_n(beta)| <= e^{-eta n/(d p^2)}.
inline DivisibilityReport check_divisibility_chain(const CoefficientDistribution& mu, unsigned n,
                                                   const std::vector<std::pair<FieldElement, unsigned>>& constraints) {
    const VSpace V = VSpace::with_multiplicities(constraints);
    if (V.d() > n) throw InvalidArgument("uniform comparison needs d <= n");
    const VLaw law = nu_n_distribution(mu, n, V);
    DivisibilityReport rep;
    rep.d = V.d();
    rep.prob = law.prob_zero();
    mpz_class pd;
    mpz_ui_pow_ui(pd.get_mpz_t(), V.p(), static_cast<unsigned long>(V.dim()));
    rep.uniform_prob = mpq_class(1, pd);
    rep.uniform_prob.canonicalize();
    rep.gap = abs(rep.prob - rep.uniform_prob);
    const auto spectrum = fourier_all(law);
    for (std::size_t i = 1; i < spectrum.size(); ++i) rep.max_fourier = std::max(rep.max_fourier, std::abs(spectrum[i]));
    rep.bound = prop32_bound(mu.eta(), n, V.d(), V.p());
    rep.gap_within_bound = rep.gap <= mpq_class(rep.bound);
    rep.chain_holds = rep.gap.get_d() <= rep.max_fourier * (1 + modulus_slack(n)) + 1e-15;
    return rep;
}

struct HalaszReport {
    mpq_class prob;
    std::size_t d = 0;
    unsigned n = 0;
    double eta = 0;
    double c_min = 0;  // smallest C with prob <= (1/p + C eta^{-1/2} floor(n/d)^{-1/2})^d

    nlohmann::json to_json(const nlohmann::json& config) const {
        return {{"config", config}, {"prob", to_string(prob)}, {"d", d}, {"n", n}, {"eta", eta}, {"c_min", c_min}};
    }
};

/// Reports the smallest Halasz constant C consistent with one exact instance.
inline HalaszReport halasz_report(const CoefficientDistribution& mu, unsigned n,
                                  const std::vector<std::pair<FieldElement, unsigned>>& constraints) {
    const VSpace V = VSpace::with_multiplicities(constraints);
    HalaszReport rep;
    rep.prob = nu_n_distribution(mu, n, V).prob_zero();
    rep.d = V.d();
    rep.n = n;
    rep.eta = mu.eta();
    const double blocks = std::floor(static_cast<double>(n) / static_cast<double>(rep.d));
    if (blocks < 1 || rep.eta <= 0) throw InvalidArgument("Halasz bound needs n >= d and eta > 0");
    const double root = std::pow(rep.prob.get_d(), 1.0 / static_cast<double>(rep.d));
    rep.c_min = std::max(0.0, round_up((root - 1.0 / static_cast<double>(V.p())) * std::sqrt(rep.eta * blocks)));
    return rep;
}

struct BruteJointPMF {
    ExactPMF distinct;   // (N_1..N_N), mass of nonzero polynomials
    ExactPMF with_mult;  // (N'_1..N'_N)
    mpq_class zero_mass = 0;
};

struct BruteOptions {
    bool monic = false;      // condition on eps_n = 1
    bool include_x = false;  // count the factor x in N_1
};

/// Enumerates every coefficient vector in supp(mu)^{n+1} (or supp(mu)^n with a
/// fixed leading 1) and accumulates exact weights of the factor counts.
inline BruteJointPMF brute_joint_pmf(const CoefficientDistribution& mu, unsigned n, unsigned N,
                                     BruteOptions opts = {}) {
    if (!mu.exact()) throw InvalidArgument("brute_joint_pmf needs a rational coefficient law");
    const auto& support = mu.support();
    const std::size_t s = support.size();
    const unsigned free = opts.monic ? n : n + 1;
    long double count = 1;
    for (unsigned i = 0; i < free; ++i) count *= static_cast<long double>(s);
    if (count > static_cast<long double>(kEnumerationCap))
        throw ResourceCapExceeded("enumeration of " + std::to_string(static_cast<double>(count)) + " polynomials exceeds 2*10^7");
    mpz_class D = 1;
    for (const auto& w : mu.exact_probs()) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), w.get_den().get_mpz_t());
    std::vector<mpz_class> num;
    for (const auto& w : mu.exact_probs()) num.push_back(mpz_class(w * mpq_class(D)));
    mpz_class denom;
    mpz_pow_ui(denom.get_mpz_t(), D.get_mpz_t(), free);

    std::map<Key, mpz_class> acc_distinct, acc_mult;
    mpz_class acc_zero = 0;
    std::vector<std::size_t> digit(free, 0);
    std::vector<ExtCoords> coeffs(n + 1);
    if (opts.monic) coeffs[n] = mu.ctx().one().coords();
    const auto total = static_cast<u64>(count);
    for (u64 t = 0; t < total; ++t) {
        mpz_class w = 1;
        for (unsigned i = 0; i < free; ++i) {
            coeffs[i] = support[digit[i]].coords();
            w *= num[digit[i]];
        }
        const Polynomial f(mu.ctx(), coeffs);
        if (f.is_zero()) {
            acc_zero += w;
        } else {
            FactorStats st = factor_stats(f, N);
            if (opts.include_x && st.x_multiplicity && N >= 1) {
                st.distinct[0] += 1;
                st.with_mult[0] += st.x_multiplicity;
            }
            acc_distinct[to_key(st.distinct)] += w;
            acc_mult[to_key(st.with_mult)] += w;
        }
        for (unsigned i = 0; i < free; ++i) {
            if (++digit[i] < s) break;
            digit[i] = 0;
        }
    }
    BruteJointPMF out;
    for (const auto& [k, v] : acc_distinct) out.distinct.add(k, mpq_class(v, denom));
    for (const auto& [k, v] : acc_mult) out.with_mult.add(k, mpq_class(v, denom));
    out.zero_mass = mpq_class(acc_zero, denom);
    out.zero_mass.canonicalize();
    return out;
}

struct SSequenceReport {
    std::vector<long long> centered;  // S-hat_n for n = n0 .. n0 + L
    long long block_sum = 0;          // sum of squares
    double threshold = 0;             // p^2 / (8 log(4L))
    bool slow_direction_candidate = false;

    nlohmann::json to_json() const {
        return {{"centered", centered},
                {"block_sum", block_sum},
                {"threshold", threshold},
                {"slow_direction_candidate", slow_direction_candidate}};
    }
};

/// S_n = sum_j sum_{k in K_j} beta_{j,k} alpha_j^{n-k} C(n,k) over F_p, centered
/// into [-p/2, p/2], for n0 <= n <= n0 + L.
inline SSequenceReport s_sequence(const std::vector<FieldElement>& beta, const VSpace& V, u64 n0, u64 L) {
    for (const auto& c : V.constraints())
        if (c.alpha.ctx().e() != 1) throw InvalidArgument("s_sequence is defined over prime fields only");
    if (L < 1) throw InvalidArgument("s_sequence needs L >= 1");
    const u64 p = V.p();
    const auto ell = V.functional(beta);
    SSequenceReport rep;
    for (u64 n = n0; n <= n0 + L; ++n) {
        const auto col = V.flatten(V.column(n));
        u64 s = 0;
        for (std::size_t c = 0; c < col.size(); ++c) s = (s + static_cast<u64>(col[c]) * ell[c]) % p;
        const long long centered = s > p / 2 ? static_cast<long long>(s) - static_cast<long long>(p) : static_cast<long long>(s);
        rep.centered.push_back(centered);
        rep.block_sum += centered * centered;
    }
    rep.threshold = static_cast<double>(p) * static_cast<double>(p) / (8.0 * std::log(4.0 * static_cast<double>(L)));
    rep.slow_direction_candidate = static_cast<double>(rep.block_sum) <= rep.threshold;
    return rep;
}

}  // namespace polylab

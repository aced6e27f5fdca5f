// SPDX-License-Identifier: Apache-2.0
#pragma once

// Integer polynomials and their Mahler measure, cyclotomic detection, and the
// high/low multiplicative order classification of roots used to split factor
// counts into a part controlled by Fourier bounds and a small remainder.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "polylab/coeff_models.hpp"
#include "polylab/errors.hpp"
#include "polylab/ff_core.hpp"
#include "polylab/number_theory.hpp"
#include "polylab/poly_algebra.hpp"
#include "polylab/rational.hpp"

namespace polylab {

/// Dense polynomial over Z, coefficients low to high, no trailing zeros.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<mpz_class> c) : c_(std::move(c)) { trim(); }
    static IntPolynomial from_ints(const std::vector<long long>& c) {
        std::vector<mpz_class> v;
        for (long long x : c) v.emplace_back(static_cast<long>(x));
        return IntPolynomial(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    const mpz_class& leading() const {
        if (c_.empty()) throw InvalidArgument("leading coefficient of zero");
        return c_.back();
    }
    mpz_class coeff(std::size_t i) const { return i < c_.size() ? c_[i] : mpz_class(0); }

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<mpz_class> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return IntPolynomial(std::move(r));
    }
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

    /// sqrt(sum c_i^2), an upper bound for the Mahler measure.
    double l2_norm() const {
        mpz_class s = 0;
        for (const auto& x : c_) s += x * x;
        return std::sqrt(s.get_d());
    }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            const bool neg = c_[i] < 0;
            const mpz_class mag = abs(c_[i]);
            if (!out.empty()) out += neg ? " - " : " + ";
            else if (neg) out += "-";
            if (mag != 1 || i == 0) out += mag.get_str();
            if (i >= 1) out += (mag != 1 ? "*x" : "x");
            if (i >= 2) out += "^" + std::to_string(i);
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<mpz_class> c_;
};

namespace detail {

using QPoly = std::vector<mpq_class>;  // low to high, trimmed

inline void qtrim(QPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline QPoly to_q(const IntPolynomial& f) {
    QPoly r;
    for (const auto& c : f.coeffs()) r.emplace_back(c);
    return r;
}

inline std::pair<QPoly, QPoly> qdivmod(QPoly a, const QPoly& b) {
    if (b.empty()) throw InvalidArgument("division by zero polynomial");
    qtrim(a);
    if (a.size() < b.size()) return {QPoly{}, a};
    QPoly q(a.size() - b.size() + 1);
    const mpq_class lead = b.back();
    for (std::size_t k = a.size(); k-- >= b.size();) {
        const mpq_class c = a[k] / lead;
        q[k - (b.size() - 1)] = c;
        if (c != 0)
            for (std::size_t j = 0; j < b.size(); ++j) a[k - (b.size() - 1) + j] -= c * b[j];
        if (k == b.size() - 1) break;
    }
    qtrim(a);
    qtrim(q);
    return {q, a};
}

inline QPoly qmonic(QPoly a) {
    qtrim(a);
    if (a.empty()) return a;
    const mpq_class lead = a.back();
    for (auto& c : a) c /= lead;
    return a;
}

inline QPoly qgcd(QPoly a, QPoly b) {
    qtrim(a);
    qtrim(b);
    while (!b.empty()) {
        auto r = qdivmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return qmonic(a);
}

inline QPoly qderivative(const QPoly& a) {
    QPoly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<long>(i));
    qtrim(r);
    return r;
}

/// Yun's squarefree decomposition of a monic f: f = prod_i g_i^i.
inline std::vector<QPoly> yun(const QPoly& f) {
    std::vector<QPoly> out;
    QPoly a0 = qgcd(f, qderivative(f));
    QPoly b = qdivmod(f, a0).first;
    QPoly c = qdivmod(qderivative(f), a0).first;
    QPoly d;
    {
        const QPoly db = qderivative(b);
        d = c;
        d.resize(std::max(c.size(), db.size()));
        for (std::size_t i = 0; i < db.size(); ++i) d[i] -= db[i];
        qtrim(d);
    }
    while (b.size() > 1) {
        QPoly a = qgcd(b, d);
        out.push_back(a);
        b = qdivmod(b, a).first;
        c = qdivmod(d, a).first;
        const QPoly db = qderivative(b);
        d = c;
        d.resize(std::max(c.size(), db.size()));
        for (std::size_t i = 0; i < db.size(); ++i) d[i] -= db[i];
        qtrim(d);
    }
    return out;
}

/// Roots of a squarefree polynomial with the given (double) coefficients by
/// Aberth iteration started on a circle of Cauchy-bound radius.
template <class Real>
std::vector<std::complex<Real>> aberth_roots(const std::vector<Real>& coeffs, double tol, int max_iter, double phase) {
    using C = std::complex<Real>;
    const std::size_t d = coeffs.size() - 1;
    std::vector<C> z(d);
    if (d == 0) return z;
    Real bound = 0;
    for (std::size_t i = 0; i < d; ++i) bound = std::max(bound, std::abs(coeffs[i] / coeffs[d]));
    const Real radius = 1 + bound;
    // start on a circle of radius ~ geometric mean of root moduli, capped by the Cauchy bound
    const Real gm = std::pow(std::abs(coeffs[0] / coeffs[d]) + std::numeric_limits<Real>::min(), Real(1) / Real(d));
    const Real r0 = std::min(radius, std::max(gm, Real(0.5)));
    for (std::size_t k = 0; k < d; ++k) {
        const Real ang = Real(2) * std::numbers::pi_v<Real> * Real(k) / Real(d) + Real(phase);
        z[k] = std::polar(r0, ang);
    }
    auto eval = [&](const C& x, C& p, C& dp) {
        p = coeffs[d];
        dp = 0;
        for (std::size_t i = d; i-- > 0;) {
            dp = dp * x + p;
            p = p * x + coeffs[i];
        }
    };
    for (int it = 0; it < max_iter; ++it) {
        Real worst = 0;
        for (std::size_t k = 0; k < d; ++k) {
            C p, dp;
            eval(z[k], p, dp);
            if (p == C(0)) continue;
            const C ratio = p / dp;
            C sum = 0;
            for (std::size_t j = 0; j < d; ++j)
                if (j != k) sum += C(1) / (z[k] - z[j]);
            const C w = ratio / (C(1) - ratio * sum);
            z[k] -= w;
            worst = std::max(worst, std::abs(w) / (1 + std::abs(z[k])));
        }
        if (!(worst == worst)) break;  // NaN
        if (worst < tol) return z;
    }
    throw NonConvergence("Aberth iteration did not converge");
}

/// prod max(1, |root|) over the roots of a monic squarefree polynomial.
inline double monic_measure(const QPoly& g, double tol) {
    if (g.size() <= 1) return 1.0;
    const double phases[] = {0.4, 1.1, 2.3};
    for (int attempt = 0; attempt < 4; ++attempt) {
        try {
            long double m = 1;
            if (attempt == 0) {
                std::vector<double> c;
                for (const auto& x : g) c.push_back(x.get_d());
                for (const auto& r : aberth_roots<double>(c, tol * 1e-3, 500, 0.4)) m *= std::max<long double>(1, std::abs(r));
            } else {
                std::vector<long double> c;
                for (const auto& x : g) c.push_back(static_cast<long double>(x.get_d()));
                for (const auto& r : aberth_roots<long double>(c, tol * 1e-3, 2000 * attempt, phases[attempt - 1]))
                    m *= std::max<long double>(1, std::abs(r));
            }
            return static_cast<double>(m);
        } catch (const NonConvergence&) {
        }
    }
    throw NonConvergence("Mahler measure root finding failed after restarts");
}

}  // namespace detail

/// M(f) = |c_d| prod max(1, |alpha_i|).
inline double mahler_measure(const IntPolynomial& f, double tol = 1e-12) {
    if (f.is_zero()) throw InvalidArgument("Mahler measure of the zero polynomial");
    if (f.degree() > 64) throw InvalidArgument("Mahler measure supports degree <= 64");
    detail::QPoly q = detail::to_q(f);
    // drop the factor x^k: roots at 0 contribute 1
    std::size_t low = 0;
    while (q[low] == 0) ++low;
    q.erase(q.begin(), q.begin() + static_cast<long>(low));
    const double lead = std::fabs(f.leading().get_d());
    if (q.size() == 1) return lead;
    long double m = lead;
    const auto parts = detail::yun(detail::qmonic(q));
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const double gi = detail::monic_measure(parts[i], tol);
        m *= std::pow(static_cast<long double>(gi), static_cast<long double>(i + 1));
    }
    return static_cast<double>(m);
}

/// 1 + c (log log d / log d)^3
inline double dobrowolski_floor(unsigned d, double c_dob = 1.0 / 1200) {
    if (d < 3) throw InvalidArgument("dobrowolski_floor needs d >= 3");
    const double r = std::log(std::log(static_cast<double>(d))) / std::log(static_cast<double>(d));
    return 1.0 + c_dob * r * r * r;
}

/// Phi_k = prod_{d | k} (x^d - 1)^{mu(k/d)}.
inline IntPolynomial cyclotomic_polynomial(unsigned k) {
    if (k == 0) throw InvalidArgument("cyclotomic_polynomial needs k >= 1");
    std::vector<mpz_class> a{1};
    const auto divs = nt::divisors(k);
    for (u64 d : divs)
        if (nt::mobius(k / d) == 1) {
            std::vector<mpz_class> r(a.size() + d);
            for (std::size_t i = 0; i < a.size(); ++i) {
                r[i + d] += a[i];
                r[i] -= a[i];
            }
            a = std::move(r);
        }
    for (u64 d : divs)
        if (nt::mobius(k / d) == -1) {
            // exact division by x^d - 1, top coefficient first
            std::vector<mpz_class> q(a.size() - d);
            for (std::size_t i = q.size(); i-- > 0;) q[i] = a[i + d] + (i + d < q.size() ? q[i + d] : mpz_class(0));
            a = std::move(q);
        }
    return IntPolynomial(std::move(a));
}

/// True when f divides x^k - 1 over Q for some k, i.e. f is a constant times
/// a product of distinct cyclotomic polynomials. Only Phi_k with
/// phi(k) <= deg f can occur, and phi(k) >= sqrt(k/2) bounds k by 2 deg^2.
inline bool is_cyclotomic_like(const IntPolynomial& f) {
    if (f.degree() < 1) return false;
    const auto d = static_cast<u64>(f.degree());
    detail::QPoly rest = detail::to_q(f);
    for (u64 k = 1; k <= std::max<u64>(2 * d * d, 6) && rest.size() > 1; ++k) {
        if (nt::euler_phi(k) + 1 > rest.size()) continue;
        auto [q, r] = detail::qdivmod(rest, detail::to_q(cyclotomic_polynomial(static_cast<unsigned>(k))));
        if (r.empty()) rest = std::move(q);
    }
    // each Phi_k is removed at most once, so a repeated factor is left over
    return rest.size() == 1;
}

struct OrderThresholdParams {
    unsigned H = 1;
    unsigned K = 0;
    unsigned e = 1;
    u64 p = 2;
    double C_order = 1.0;

    void validate() const {
        if (H < 1 || e < 1 || p < 2 || !(C_order > 0)) throw InvalidArgument("invalid order threshold parameters");
    }
};

/// m_e = C H (K+1) e log p log(H (K+1) e log p).
inline double order_threshold(const OrderThresholdParams& params) {
    params.validate();
    const double base = static_cast<double>(params.H) * (params.K + 1) * params.e * std::log(static_cast<double>(params.p));
    return params.C_order * base * std::log(base);
}

struct OrderClass {
    u64 order = 0;
    double threshold = 0;
    bool high = false;
};

/// High order iff the multiplicative order is at least m_e.
inline OrderClass classify_element(const FieldElement& a, OrderThresholdParams params) {
    if (a.is_zero()) throw InvalidArgument("classify_element of 0");
    if (params.p != a.ctx().p() || params.e != a.ctx().e())
        throw InvalidArgument("threshold parameters describe a different field than the element");
    OrderClass c;
    c.order = mult_order(a);
    c.threshold = order_threshold(params);
    c.high = static_cast<double>(c.order) >= c.threshold;
    return c;
}

/// Classifies a monic irreducible g over F_p (g != x) through the root x of F_p[x]/(g).
inline OrderClass classify_irreducible(const Polynomial& g, OrderThresholdParams params) {
    if (g.ctx().e() != 1) throw InvalidArgument("classify_irreducible expects a polynomial over a prime field");
    if (!g.is_monic() || !is_irreducible(g)) throw InvalidArgument("classify_irreducible needs a monic irreducible");
    if (g.degree() == 1 && g.coeff(0).is_zero()) throw InvalidArgument("the factor x has no multiplicative order");
    std::vector<u64> mod;
    for (std::size_t i = 0; i < g.size(); ++i) mod.push_back(g.coeff(i).coord(0));
    const auto e = static_cast<unsigned>(g.degree());
    const FieldCtx L = make_field(g.ctx().p(), e, mod);
    params.p = g.ctx().p();
    params.e = e;
    return classify_element(L.gen(), params);
}

/// Number of elements of F_{p^e}^* with multiplicative order <= m: sum of
/// phi(d) over divisors d <= m of p^e - 1.
inline u64 count_low_order(u64 p, unsigned e, double m) {
    if (!(m >= 1)) throw InvalidArgument("count_low_order needs m >= 1");
    const u64 size = nt::checked_pow(p, e);
    if (size == 0) throw ResourceCapExceeded("p^e does not fit in 64 bits");
    const u64 order = size - 1;
    u64 total = 0;
    for (u64 d : nt::divisors(order))
        if (static_cast<double>(d) <= m) total += nt::euler_phi(d);
    return total;
}
inline u64 count_low_order(const FieldCtx& ctx, double m) { return count_low_order(ctx.p(), ctx.e(), m); }

struct UnionBoundTerm {
    unsigned i = 0;
    double m = 0;          // m_i
    double count = 0;     // low order elements of F_{p^i}
    bool exact_count = true;
    double per_root = 0;  // (1/p + C_hal eta^{-1/2} (n/i)^{-1/2})^i
};

/// Terms of sum_{i<=N} #low(F_{p^i}) (1/p + C_hal eta^{-1/2} (n/i)^{-1/2})^i.
inline std::vector<UnionBoundTerm> low_order_union_terms(const CoefficientDistribution& mu, unsigned n, unsigned N,
                                                         OrderThresholdParams params, double C_hal = 2.0) {
    if (static_cast<double>(N) > static_cast<double>(n) / 10) throw InvalidArgument("union bound needs N <= n/10");
    const double eta = mu.eta();
    if (!(eta > 0)) throw InvalidArgument("union bound needs eta > 0");
    const u64 p = mu.ctx().p();
    params.p = p;
    std::vector<UnionBoundTerm> out;
    for (unsigned i = 1; i <= N; ++i) {
        params.e = i;
        UnionBoundTerm t;
        t.i = i;
        t.m = order_threshold(params);
        // low order means order < m_i
        const double below = std::ceil(t.m) - 1;
        if (below < 1) {
            t.count = 0;
        } else {
            try {
                t.count = static_cast<double>(count_low_order(p, i, below));
            } catch (const ResourceCapExceeded&) {
                t.count = t.m * t.m;  // p^i beyond 64 bits: the m_i^2 bound
                t.exact_count = false;
            }
        }
        const double base = 1.0 / static_cast<double>(p) + C_hal / std::sqrt(eta) / std::sqrt(static_cast<double>(n) / i);
        t.per_root = round_up(std::pow(base, static_cast<double>(i)));
        out.push_back(t);
    }
    return out;
}

inline double low_order_union_bound(const CoefficientDistribution& mu, unsigned n, unsigned N,
                                    const OrderThresholdParams& params, double C_hal = 2.0) {
    double s = 0;
    for (const auto& t : low_order_union_terms(mu, n, N, params, C_hal)) s += t.count * t.per_root;
    return s > 0 ? round_up(s) : 0.0;
}

struct ClassificationRow {
    std::string element;
    u64 order = 0;
    double threshold = 0;
    bool high = false;
};

/// CSV with columns element,order,threshold,class.
inline void write_classification_csv(const std::string& path, const std::vector<ClassificationRow>& rows) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << "element,order,threshold,class\n";
    for (const auto& r : rows)
        out << '"' << r.element << "\"," << r.order << ',' << r.threshold << ',' << (r.high ? "high" : "low") << '\n';
}

}  // namespace polylab

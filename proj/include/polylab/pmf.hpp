// SPDX-License-Identifier: Apache-2.0
#pragma once

// Probability tables keyed by integer vectors: exact (rational weights) and
// empirical (occurrence counts). Both are ordered maps so iteration and
// serialization are deterministic.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "polylab/errors.hpp"
#include "polylab/rational.hpp"

namespace polylab {

using Key = std::vector<std::int64_t>;

inline std::string key_string(const Key& k) {
    std::string s;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(k[i]);
    }
    return s;
}

class ExactPMF {
public:
    void add(const Key& k, const mpq_class& w) {
        if (w == 0) return;
        mpq_class& slot = table_[k];
        slot += w;
        slot.canonicalize();
    }
    mpq_class prob(const Key& k) const {
        auto it = table_.find(k);
        return it == table_.end() ? mpq_class(0) : it->second;
    }
    mpq_class total() const {
        mpq_class t = 0;
        for (const auto& [k, v] : table_) t += v;
        return t;
    }
    bool empty() const { return table_.empty(); }
    std::size_t size() const { return table_.size(); }
    const std::map<Key, mpq_class>& table() const { return table_; }

    /// Divides every weight by the total mass.
    ExactPMF normalized() const {
        const mpq_class t = total();
        if (t == 0) throw InvalidArgument("cannot normalize an empty PMF");
        ExactPMF out;
        for (const auto& [k, v] : table_) out.table_[k] = v / t;
        return out;
    }

    /// Image under a key map, merging colliding weights.
    template <class Fn>
    ExactPMF map_keys(Fn&& fn) const {
        ExactPMF out;
        for (const auto& [k, v] : table_) out.add(fn(k), v);
        return out;
    }

    /// E[prod_i k_i^{h_i}]
    mpq_class moment(const std::vector<unsigned>& h) const {
        mpq_class acc = 0;
        for (const auto& [k, v] : table_) {
            mpz_class term = 1;
            for (std::size_t i = 0; i < h.size(); ++i) {
                mpz_class base = static_cast<long>(i < k.size() ? k[i] : 0);
                mpz_class pw;
                mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), h[i]);
                term *= pw;
            }
            acc += v * mpq_class(term);
        }
        return acc;
    }

    nlohmann::json to_json() const {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& [k, v] : table_) j.push_back({{"value", k}, {"prob", polylab::to_string(v)}});
        return j;
    }

    friend bool operator==(const ExactPMF& a, const ExactPMF& b) { return a.table_ == b.table_; }

private:
    std::map<Key, mpq_class> table_;
};

class EmpiricalDistribution {
public:
    void add(const Key& k, std::uint64_t count = 1) {
        table_[k] += count;
        trials_ += count;
    }
    void merge(const EmpiricalDistribution& other) {
        for (const auto& [k, v] : other.table_) table_[k] += v;
        trials_ += other.trials_;
    }
    std::uint64_t trials() const { return trials_; }
    std::uint64_t count(const Key& k) const {
        auto it = table_.find(k);
        return it == table_.end() ? 0 : it->second;
    }
    double prob(const Key& k) const { return trials_ ? static_cast<double>(count(k)) / static_cast<double>(trials_) : 0.0; }
    const std::map<Key, std::uint64_t>& table() const { return table_; }
    bool empty() const { return trials_ == 0; }

    /// Mean of coordinate i.
    double mean(std::size_t i) const {
        if (trials_ == 0) throw InvalidArgument("mean of an empty distribution");
        long double s = 0;
        for (const auto& [k, v] : table_) s += static_cast<long double>(k.at(i)) * v;
        return static_cast<double>(s / trials_);
    }
    /// Standard error of the mean of coordinate i (sample variance / trials).
    double standard_error(std::size_t i) const {
        if (trials_ < 2) return 0.0;
        const long double m = mean(i);
        long double ss = 0;
        for (const auto& [k, v] : table_) {
            const long double d = static_cast<long double>(k.at(i)) - m;
            ss += d * d * v;
        }
        return static_cast<double>(std::sqrt(ss / (trials_ - 1) / trials_));
    }

    friend bool operator==(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
        return a.trials_ == b.trials_ && a.table_ == b.table_;
    }

private:
    std::map<Key, std::uint64_t> table_;
    std::uint64_t trials_ = 0;
};

}  // namespace polylab

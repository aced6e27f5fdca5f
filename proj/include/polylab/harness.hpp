// SPDX-License-Identifier: Apache-2.0
#pragma once

// Deterministic parallel Monte Carlo over random polynomials. Trial t always
// draws from stream t of the master seed, so the merged distributions do not
// depend on how trials are split across workers.

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "polylab/coeff_models.hpp"
#include "polylab/factor_stats.hpp"
#include "polylab/moment_engine.hpp"

namespace polylab::harness {

namespace fs = std::filesystem;
using nlohmann::json;

inline constexpr const char* kCsvSchema = "polylab-csv/1";
inline constexpr u64 kReferenceStream = u64{1} << 62;
inline constexpr u64 kPoissonDirichletStream = u64{3} << 62;
inline constexpr unsigned kMaxZeroRedraws = 1000;

inline std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

/// Short content hash used to tag output files.
inline std::string content_hash(const json& j) { return sha256_hex(j.dump()).substr(0, 16); }

/// Seed for a named sub-experiment, derived from the master seed.
inline u64 derive_seed(u64 master, const std::string& label) {
    const std::string h = sha256_hex(std::to_string(master) + "/" + label);
    return std::stoull(h.substr(0, 16), nullptr, 16);
}

/// Shortest round-trip decimal for a double, stable across runs.
inline std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}
inline std::string fmt_fixed(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

/// Runs fn(t, acc) for t in [0, trials) on `workers` threads over contiguous
/// blocks and returns the per-block accumulators in block order.
template <class Acc, class Fn>
std::vector<Acc> run_blocks(u64 trials, unsigned workers, Fn&& fn) {
    if (workers == 0) throw InvalidArgument("workers must be >= 1");
    const u64 blocks = std::min<u64>(workers, std::max<u64>(trials, 1));
    std::vector<Acc> acc(blocks);
    std::vector<std::exception_ptr> errors(blocks);
    auto body = [&](u64 b) {
        try {
            const u64 lo = trials * b / blocks, hi = trials * (b + 1) / blocks;
            for (u64 t = lo; t < hi; ++t) fn(t, acc[b]);
        } catch (...) {
            errors[b] = std::current_exception();
        }
    };
    if (blocks == 1) {
        body(0);
    } else {
        std::vector<std::jthread> pool;
        for (u64 b = 0; b < blocks; ++b) pool.emplace_back(body, b);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return acc;
}

enum class Stat { distinct, with_mult, largest, total, multiplicity };

inline std::string to_string(Stat s) {
    switch (s) {
        case Stat::distinct: return "distinct";
        case Stat::with_mult: return "with-mult";
        case Stat::largest: return "largest";
        case Stat::total: return "total";
        case Stat::multiplicity: return "multiplicity";
    }
    return "?";
}

inline Stat parse_stat(const std::string& s) {
    for (Stat t : {Stat::distinct, Stat::with_mult, Stat::largest, Stat::total, Stat::multiplicity})
        if (s == to_string(t)) return t;
    throw InvalidArgument("unknown statistic '" + s + "' (distinct, with-mult, largest, total, multiplicity)");
}

/// One experiment. Serialized as a flat JSON object whose keys match the
/// command-line flags; see README for the schema.
struct ExperimentConfig {
    u64 p = 101;
    unsigned e = 1;
    unsigned n = 20;
    unsigned N = 3;
    std::string mu = "uniform:-1,0,1";
    std::string model = "mu";  // mu | uniform-monic
    u64 trials = 10000;
    u64 seed = 1;
    unsigned workers = 1;
    std::vector<std::string> stats{"with-mult"};
    std::vector<std::string> phis;  // monic irreducibles for the multiplicity statistic
    std::string reference = "auto";  // auto | exact | sampled | none
    unsigned bootstrap = 200;
    std::string out = "out";

    void validate() const {
        if (trials < 1) throw InvalidArgument("trials must be >= 1");
        if (workers < 1) throw InvalidArgument("workers must be >= 1");
        if (n < 1) throw InvalidArgument("n must be >= 1");
        if (model != "mu" && model != "uniform-monic") throw InvalidArgument("model must be 'mu' or 'uniform-monic'");
        if (reference != "auto" && reference != "exact" && reference != "sampled" && reference != "none")
            throw InvalidArgument("reference must be auto, exact, sampled or none");
        if (stats.empty()) throw InvalidArgument("at least one statistic is required");
        for (const auto& s : stats) {
            const Stat st = parse_stat(s);
            if (st == Stat::multiplicity && phis.empty()) throw InvalidArgument("multiplicity statistic needs phis");
            if ((st == Stat::distinct || st == Stat::with_mult) && N < 1) throw InvalidArgument("N must be >= 1");
        }
    }

    /// Fields that determine the data; workers and output paths excluded.
    json hashed_json() const {
        return json{{"p", p},          {"e", e},           {"n", n},         {"N", N},
                    {"mu", mu},        {"model", model},   {"trials", trials}, {"seed", seed},
                    {"stats", stats},  {"phis", phis},     {"reference", reference}, {"bootstrap", bootstrap}};
    }
    json to_json() const {
        json j = hashed_json();
        j["workers"] = workers;
        j["out"] = out;
        return j;
    }
    std::string hash() const { return content_hash(hashed_json()); }

    static ExperimentConfig from_json(const json& j) {
        static const std::vector<std::string> known{"p",    "e",     "n",         "N",         "mu",
                                                    "model", "trials", "seed",     "workers",   "stats",
                                                    "phis", "reference", "bootstrap", "out"};
        if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
        for (const auto& [k, v] : j.items())
            if (std::find(known.begin(), known.end(), k) == known.end())
                throw InvalidArgument("unknown config key '" + k + "'");
        ExperimentConfig c;
        try {
            c.p = j.value("p", c.p);
            c.e = j.value("e", c.e);
            c.n = j.value("n", c.n);
            c.N = j.value("N", c.N);
            c.mu = j.value("mu", c.mu);
            c.model = j.value("model", c.model);
            c.trials = j.value("trials", c.trials);
            c.seed = j.value("seed", c.seed);
            c.workers = j.value("workers", c.workers);
            c.stats = j.value("stats", c.stats);
            c.phis = j.value("phis", c.phis);
            c.reference = j.value("reference", c.reference);
            c.bootstrap = j.value("bootstrap", c.bootstrap);
            c.out = j.value("out", c.out);
        } catch (const json::exception& ex) {
            throw InvalidArgument(std::string("bad config value: ") + ex.what());
        }
        return c;
    }
};

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read config " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& ex) {
        throw InvalidArgument("config " + path + " is not valid JSON: " + ex.what());
    }
    return ExperimentConfig::from_json(j);
}

/// Draws trial polynomials for one configuration.
class TrialSampler {
public:
    TrialSampler(const FieldCtx& F, std::optional<CoefficientDistribution> mu, unsigned n)
        : F_(F), mu_(std::move(mu)), n_(n) {}

    const FieldCtx& field() const { return F_; }

    /// A nonzero polynomial for trial t and the number of zero draws skipped.
    std::pair<Polynomial, unsigned> draw(u64 seed, u64 stream) const {
        Rng rng(seed, stream);
        if (!mu_) return {sample_uniform_monic(F_, n_, rng), 0};
        for (unsigned z = 0; z < kMaxZeroRedraws; ++z) {
            Polynomial f = sample_poly(*mu_, n_, rng);
            if (!f.is_zero()) return {std::move(f), z};
        }
        throw InvalidArgument("mu produced the zero polynomial " + std::to_string(kMaxZeroRedraws) + " times in a row");
    }

private:
    FieldCtx F_;
    std::optional<CoefficientDistribution> mu_;
    unsigned n_;
};

struct StatSpec {
    Stat kind;
    std::vector<std::string> columns;
};

inline std::vector<StatSpec> stat_specs(const ExperimentConfig& c) {
    std::vector<StatSpec> out;
    for (const auto& s : c.stats) {
        StatSpec sp{parse_stat(s), {}};
        switch (sp.kind) {
            case Stat::distinct:
                for (unsigned i = 1; i <= c.N; ++i) sp.columns.push_back("N_" + std::to_string(i));
                break;
            case Stat::with_mult:
                for (unsigned i = 1; i <= c.N; ++i) sp.columns.push_back("Nm_" + std::to_string(i));
                break;
            case Stat::largest: sp.columns = {"largest_degree", "degree"}; break;
            case Stat::total: sp.columns = {"total_factors"}; break;
            case Stat::multiplicity:
                for (std::size_t i = 0; i < c.phis.size(); ++i) sp.columns.push_back("mult_" + std::to_string(i + 1));
                break;
        }
        out.push_back(std::move(sp));
    }
    return out;
}

/// Key of one statistic for one polynomial. The factor x is excluded from
/// the degree-1 counts; `total` counts every irreducible factor including x.
inline Key stat_key(Stat kind, const FactorStats& fs, const Polynomial& f, const std::vector<Polynomial>& phis) {
    switch (kind) {
        case Stat::distinct: return to_key(fs.distinct);
        case Stat::with_mult: return to_key(fs.with_mult);
        case Stat::largest: return {fs.largest_degree, fs.degree};
        case Stat::total: return {static_cast<std::int64_t>(fs.total_mult) + fs.x_multiplicity};
        case Stat::multiplicity: {
            Key k;
            for (const auto& phi : phis) k.push_back(multiplicity_of(f, phi));
            return k;
        }
    }
    return {};
}

struct Accumulator {
    std::vector<EmpiricalDistribution> dists;
    u64 zero_redraws = 0;
};

/// Samples `trials` polynomials from streams offset + t and tabulates every statistic.
inline Accumulator tabulate(const TrialSampler& sampler, const std::vector<StatSpec>& specs, unsigned N,
                            const std::vector<Polynomial>& phis, u64 trials, u64 seed, u64 offset, unsigned workers) {
    auto blocks = run_blocks<Accumulator>(trials, workers, [&](u64 t, Accumulator& acc) {
        if (acc.dists.empty()) acc.dists.resize(specs.size());
        auto [f, z] = sampler.draw(seed, offset + t);
        acc.zero_redraws += z;
        const FactorStats st = factor_stats(f, N);
        for (std::size_t s = 0; s < specs.size(); ++s) acc.dists[s].add(stat_key(specs[s].kind, st, f, phis));
    });
    Accumulator out;
    out.dists.resize(specs.size());
    for (const auto& b : blocks) {
        for (std::size_t s = 0; s < b.dists.size(); ++s) out.dists[s].merge(b.dists[s]);
        out.zero_redraws += b.zero_redraws;
    }
    return out;
}

/// `trials` samples of the largest Poisson-Dirichlet part, stream offset + t.
inline std::vector<double> pd_max_samples(u64 trials, u64 seed, unsigned workers) {
    auto blocks = run_blocks<std::vector<double>>(trials, workers, [&](u64 t, std::vector<double>& v) {
        Rng rng(seed, kPoissonDirichletStream + t);
        v.push_back(ref::pd_max(rng));
    });
    std::vector<double> out;
    for (auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
    return out;
}

inline std::vector<double> normalized_largest(const EmpiricalDistribution& d) {
    std::vector<double> out;
    for (const auto& [k, v] : d.table())
        for (u64 c = 0; c < v; ++c) out.push_back(k[1] ? static_cast<double>(k[0]) / static_cast<double>(k[1]) : 0.0);
    return out;
}

struct StatResult {
    StatSpec spec;
    EmpiricalDistribution dist;
    std::vector<double> means, std_errors;
    std::string reference_kind = "none";  // exact-uniform | sampled-uniform | poisson-dirichlet | none
    std::optional<ExactPMF> exact_reference;
    std::optional<EmpiricalDistribution> sampled_reference;
    std::vector<double> reference_means;
    std::optional<double> tv, ks;
    std::optional<Interval> tv_ci;

    json to_json() const {
        json j{{"stat", to_string(spec.kind)}, {"columns", spec.columns}, {"trials", dist.trials()}};
        j["means"] = json::array();
        j["std_errors"] = json::array();
        for (std::size_t i = 0; i < means.size(); ++i) {
            j["means"].push_back(fmt(means[i]));
            j["std_errors"].push_back(fmt(std_errors[i]));
        }
        json r{{"kind", reference_kind}};
        if (!reference_means.empty()) {
            r["means"] = json::array();
            for (double m : reference_means) r["means"].push_back(fmt(m));
        }
        if (tv) r["tv"] = fmt(*tv);
        if (tv_ci) r["tv_ci95"] = {fmt(tv_ci->lo), fmt(tv_ci->hi)};
        if (ks) r["ks"] = fmt(*ks);
        j["reference"] = r;
        return j;
    }
};

struct RunRecord {
    std::string config_hash;
    json config;
    u64 zero_redraws = 0;
    std::vector<StatResult> stats;
    double wall_time_s = 0;

    /// Everything but the wall time, which is kept out so records compare equal.
    json to_json() const {
        json j{{"schema", "polylab-record/1"}, {"config_hash", config_hash}, {"config", config},
               {"zero_redraws", zero_redraws}};
        j["stats"] = json::array();
        for (const auto& s : stats) j["stats"].push_back(s.to_json());
        return j;
    }
    const StatResult& stat(Stat kind) const {
        for (const auto& s : stats)
            if (s.spec.kind == kind) return s;
        throw InvalidArgument("statistic " + to_string(kind) + " not in record");
    }
};

namespace detail {

inline void fill_means(StatResult& r) {
    const std::size_t cols = r.spec.kind == Stat::largest ? 0 : r.spec.columns.size();
    if (r.spec.kind == Stat::largest) {
        const auto v = normalized_largest(r.dist);
        long double s = 0, ss = 0;
        for (double x : v) s += x;
        const long double m = s / v.size();
        for (double x : v) ss += (x - m) * (x - m);
        r.means = {static_cast<double>(m)};
        r.std_errors = {v.size() > 1 ? static_cast<double>(std::sqrt(ss / (v.size() - 1) / v.size())) : 0.0};
        return;
    }
    for (std::size_t i = 0; i < cols; ++i) {
        r.means.push_back(r.dist.mean(i));
        r.std_errors.push_back(r.dist.standard_error(i));
    }
}

inline std::vector<double> exact_means(const ExactPMF& pmf, std::size_t cols) {
    std::vector<double> out;
    for (std::size_t i = 0; i < cols; ++i) {
        std::vector<unsigned> h(cols, 0);
        h[i] = 1;
        out.push_back(pmf.moment(h).get_d());
    }
    return out;
}

inline std::vector<double> empirical_means(const EmpiricalDistribution& d, std::size_t cols) {
    std::vector<double> out;
    for (std::size_t i = 0; i < cols; ++i) out.push_back(d.mean(i));
    return out;
}

}  // namespace detail

/// Runs the experiment and compares each statistic with its reference: the
/// exact uniform-model law from the series engine when it fits in memory,
/// otherwise uniform monic samples with the same trial count; the largest
/// normalized degree is compared with Poisson-Dirichlet samples.
inline RunRecord simulate(const ExperimentConfig& config) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const FieldCtx F = make_field(config.p, config.e);
    std::optional<CoefficientDistribution> mu;
    if (config.model == "mu") mu = parse_mu(config.mu, F);
    std::vector<Polynomial> phis;
    for (const auto& s : config.phis) phis.push_back(parse_polynomial(s, F));
    for (const auto& phi : phis)
        if (phi.degree() < 1 || !phi.is_monic() || !is_irreducible(phi))
            throw InvalidArgument("phi must be monic irreducible");

    const auto specs = stat_specs(config);
    const TrialSampler sampler(F, mu, config.n);
    Accumulator acc = tabulate(sampler, specs, config.N, phis, config.trials, config.seed, 0, config.workers);

    RunRecord rec;
    rec.config_hash = config.hash();
    rec.config = config.hashed_json();
    rec.zero_redraws = acc.zero_redraws;

    // which statistics need a sampled uniform monic reference
    std::vector<std::size_t> sampled_idx;
    std::vector<std::optional<ExactPMF>> exact(specs.size());
    for (std::size_t s = 0; s < specs.size(); ++s) {
        const Stat k = specs[s].kind;
        if (config.reference == "none" || k == Stat::largest) continue;
        if ((k == Stat::distinct || k == Stat::with_mult) && config.reference != "sampled") {
            try {
                exact[s] = uniform_joint_law(F.q(), config.n, config.N,
                                             k == Stat::distinct ? FactorModel::distinct : FactorModel::with_multiplicity,
                                             /*exclude_x=*/true);
                continue;
            } catch (const ResourceCapExceeded&) {
                if (config.reference == "exact") throw;
            }
        }
        sampled_idx.push_back(s);
    }
    std::optional<Accumulator> ref_acc;
    if (!sampled_idx.empty()) {
        std::vector<StatSpec> ref_specs;
        for (auto s : sampled_idx) ref_specs.push_back(specs[s]);
        const TrialSampler uniform(F, std::nullopt, config.n);
        ref_acc = tabulate(uniform, ref_specs, config.N, phis, config.trials, config.seed, kReferenceStream, config.workers);
    }

    for (std::size_t s = 0; s < specs.size(); ++s) {
        StatResult r;
        r.spec = specs[s];
        r.dist = std::move(acc.dists[s]);
        detail::fill_means(r);
        const std::size_t cols = r.spec.columns.size();
        if (exact[s]) {
            r.reference_kind = "exact-uniform";
            r.reference_means = detail::exact_means(*exact[s], cols);
            r.tv = tv_distance(r.dist, *exact[s]);
            if (config.bootstrap > 0) r.tv_ci = bootstrap_ci(r.dist, *exact[s], config.bootstrap, 0.95, config.seed);
            r.exact_reference = std::move(exact[s]);
        } else if (auto it = std::find(sampled_idx.begin(), sampled_idx.end(), s); it != sampled_idx.end()) {
            r.reference_kind = "sampled-uniform";
            auto& ref = ref_acc->dists[static_cast<std::size_t>(it - sampled_idx.begin())];
            r.reference_means = detail::empirical_means(ref, cols);
            r.tv = tv_distance(r.dist, ref);
            if (config.bootstrap > 0) r.tv_ci = bootstrap_ci(r.dist, ref, config.bootstrap, 0.95, config.seed);
            r.sampled_reference = std::move(ref);
        } else if (r.spec.kind == Stat::largest && config.reference != "none") {
            r.reference_kind = "poisson-dirichlet";
            const auto pd = pd_max_samples(config.trials, config.seed, config.workers);
            long double m = 0;
            for (double x : pd) m += x;
            r.reference_means = {static_cast<double>(m / pd.size())};
            r.ks = ks_distance(normalized_largest(r.dist), pd);
        }
        rec.stats.push_back(std::move(r));
    }
    rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

// ---- output files ----------------------------------------------------------

inline std::string csv_preamble(const std::string& hash, const std::string& what) {
    return std::string("# ") + kCsvSchema + " config_hash=" + hash + " content=" + what + "\n";
}

/// Reads the config hash embedded in the first line of an output file.
inline std::string embedded_hash(const fs::path& path) {
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    const auto pos = first.find("config_hash");
    if (pos == std::string::npos) {
        // JSON outputs carry it as a field
        in.clear();
        in.seekg(0);
        try {
            const json j = json::parse(in);
            return j.value("config_hash", "");
        } catch (const json::exception&) {
            return "";
        }
    }
    auto start = first.find_first_not_of("\":= ", pos + 11);
    auto end = first.find_first_of(" \",", start);
    return first.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

inline void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + path.string());
    out << text;
}

inline std::string distribution_csv(const RunRecord& rec, const StatResult& r) {
    std::ostringstream o;
    o << csv_preamble(rec.config_hash, to_string(r.spec.kind));
    for (const auto& c : r.spec.columns) o << c << ',';
    o << "count\n";
    for (const auto& [k, v] : r.dist.table()) o << key_string(k) << ',' << v << '\n';
    return o.str();
}

inline std::string reference_csv(const RunRecord& rec, const StatResult& r) {
    std::ostringstream o;
    o << csv_preamble(rec.config_hash, to_string(r.spec.kind) + "-reference-" + r.reference_kind);
    for (const auto& c : r.spec.columns) o << c << ',';
    if (r.exact_reference) {
        o << "prob\n";
        for (const auto& [k, v] : r.exact_reference->table()) o << key_string(k) << ',' << polylab::to_string(v) << '\n';
    } else {
        o << "count\n";
        for (const auto& [k, v] : r.sampled_reference->table()) o << key_string(k) << ',' << v << '\n';
    }
    return o.str();
}

/// Writes <stat>.csv, <stat>_reference.csv, record.json and timing.json
/// (the only file that varies between identical runs).
inline std::vector<fs::path> write_record(const RunRecord& rec, const fs::path& dir, unsigned workers) {
    std::vector<fs::path> files;
    for (const auto& r : rec.stats) {
        const auto name = to_string(r.spec.kind);
        write_text(dir / (name + ".csv"), distribution_csv(rec, r));
        files.push_back(dir / (name + ".csv"));
        if (r.exact_reference || r.sampled_reference) {
            write_text(dir / (name + "_reference.csv"), reference_csv(rec, r));
            files.push_back(dir / (name + "_reference.csv"));
        }
    }
    write_text(dir / "record.json", rec.to_json().dump(2) + "\n");
    files.push_back(dir / "record.json");
    write_text(dir / "timing.json",
               json{{"config_hash", rec.config_hash}, {"wall_time_s", rec.wall_time_s}, {"workers", workers}}.dump(2) + "\n");
    return files;
}

inline std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw VerificationFailure("missing output file " + p.string());
    std::ostringstream o;
    o << in.rdbuf();
    return o.str();
}

/// Regenerates the outputs of `produce` into a scratch directory and checks
/// that every data file in `dir` carries `hash` and matches byte for byte.
/// timing.json is skipped. Throws VerificationFailure on any difference.
inline void verify_outputs(const fs::path& dir, const std::string& hash,
                           const std::function<void(const fs::path&)>& produce) {
    if (!fs::is_directory(dir)) throw VerificationFailure("output directory " + dir.string() + " does not exist");
    const fs::path scratch = fs::temp_directory_path() / ("polylab-verify-" + hash + "-" + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
    fs::remove_all(scratch);
    produce(scratch);
    std::vector<std::string> problems;
    for (const auto& entry : fs::directory_iterator(scratch)) {
        const auto name = entry.path().filename();
        if (name == "timing.json") continue;
        const fs::path mine = dir / name;
        if (!fs::exists(mine)) {
            problems.push_back(name.string() + " missing");
            continue;
        }
        if (name.extension() != ".svg" && embedded_hash(mine) != hash) problems.push_back(name.string() + " has another config hash");
        if (read_file(mine) != read_file(entry.path())) problems.push_back(name.string() + " differs");
    }
    fs::remove_all(scratch);
    if (!problems.empty()) {
        std::string msg = "verification failed:";
        for (const auto& p : problems) msg += " " + p + ";";
        throw VerificationFailure(msg);
    }
}

}  // namespace polylab::harness

// SPDX-License-Identifier: Apache-2.0
#pragma once

// Data and SVG for the four simulation figures: means of N'_i against p
// (fig1), histograms of N'_i at p near 10^7 against Poisson(1/i) (fig2),
// means of N'_i against n (fig3), and the normalized largest factor degree
// against the largest Poisson-Dirichlet part (fig4).

#include <map>
#include <string>
#include <vector>

#include "polylab/harness.hpp"
#include "polylab/svg.hpp"

namespace polylab::harness {

inline constexpr const char* kTernaryMu = "uniform:-1,0,1";

struct FigureOptions {
    u64 trials = 10000;
    u64 seed = 1;
    unsigned workers = 1;
    // Empty lists select the default grid of each figure.
    std::vector<u64> primes;         // fig1: small primes; fig2..4: the primes shown
    std::vector<u64> large_primes;   // fig1 only
    std::vector<unsigned> degrees;   // polynomial degrees n
    unsigned bins = 20;              // fig4 histogram bins on [0, 1]

    json to_json(const std::string& figure) const {
        return json{{"figure", figure}, {"trials", trials},  {"seed", seed},
                    {"primes", primes}, {"large_primes", large_primes}, {"degrees", degrees}, {"bins", bins}};
    }
};

struct FigureOutput {
    std::string name;
    std::string hash;
    std::string csv;
    std::string svg;
    json summary;
};

/// Primes in [lo, hi].
inline std::vector<u64> primes_between(u64 lo, u64 hi) {
    std::vector<u64> out;
    for (u64 x = lo; x <= hi; ++x)
        if (nt::is_prime(x)) out.push_back(x);
    return out;
}

/// k primes drawn without replacement from [lo, hi], sorted.
inline std::vector<u64> sample_primes(u64 lo, u64 hi, std::size_t k, u64 seed) {
    auto pool = primes_between(lo, hi);
    if (pool.size() < k) throw InvalidArgument("not enough primes in range");
    Rng rng(seed, 0x7072696d6573ULL);
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.uniform_below(pool.size() - i)]);
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

struct MeanCell {
    u64 p = 0;
    unsigned n = 0;
    u64 trials = 0;
    std::vector<unsigned> degrees;  // the i tracked
    std::vector<double> mean, se, exact;
};

/// Empirical means of N'_i (ternary coefficients) and the exact uniform
/// monic means, for the listed i.
inline MeanCell mean_cell(u64 p, unsigned n, const std::vector<unsigned>& is, u64 trials, u64 seed, unsigned workers,
                          const std::string& label) {
    const FieldCtx F = make_field(p, 1);
    const TrialSampler sampler(F, parse_mu(kTernaryMu, F), n);
    const unsigned N = *std::max_element(is.begin(), is.end());
    const std::vector<StatSpec> specs{{Stat::with_mult, {}}};
    const u64 cell_seed = derive_seed(seed, label + "/" + std::to_string(p) + "/" + std::to_string(n));
    const auto acc = tabulate(sampler, specs, N, {}, trials, cell_seed, 0, workers);
    MeanCell c{p, n, trials, is, {}, {}, {}};
    for (unsigned i : is) {
        c.mean.push_back(acc.dists[0].mean(i - 1));
        c.se.push_back(acc.dists[0].standard_error(i - 1));
        std::vector<unsigned> h(i, 0);
        h[i - 1] = 1;
        c.exact.push_back(uniform_joint_moment(p, n, h, FactorModel::with_multiplicity, /*exclude_x=*/true).get_d());
    }
    return c;
}

inline const char* degree_color(std::size_t k) {
    static const char* colors[] = {"#d62728", "#1f77b4", "#8c564b", "#2ca02c", "#9467bd"};
    return colors[k % 5];
}

inline std::string mean_rows(const std::vector<MeanCell>& cells) {
    std::ostringstream o;
    o << "p,n,i,mean,stderr,exact_uniform_mean\n";
    for (const auto& c : cells)
        for (std::size_t k = 0; k < c.degrees.size(); ++k)
            o << c.p << ',' << c.n << ',' << c.degrees[k] << ',' << fmt(c.mean[k]) << ',' << fmt(c.se[k]) << ','
              << fmt(c.exact[k]) << '\n';
    return o.str();
}

struct Fig1Grid {
    std::vector<u64> small, large;
    std::vector<unsigned> degrees;
};

inline Fig1Grid fig1_grid(const FigureOptions& o) {
    Fig1Grid g;
    g.small = o.primes.empty() ? sample_primes(10, 1000, 20, o.seed) : o.primes;
    g.large = o.large_primes.empty() ? sample_primes(10'000'000, 10'001'000, 3, o.seed) : o.large_primes;
    g.degrees = o.degrees.empty() ? std::vector<unsigned>{5, 10, 20} : o.degrees;
    return g;
}

inline std::vector<MeanCell> fig1_cells(const FigureOptions& o) {
    const auto g = fig1_grid(o);
    std::vector<MeanCell> cells;
    for (const auto& list : {g.small, g.large})
        for (u64 p : list)
            for (unsigned n : g.degrees) cells.push_back(mean_cell(p, n, {1, 2, 3}, o.trials, o.seed, o.workers, "fig1"));
    return cells;
}

/// Scatter panels of mean N'_i against p (or n), one row per i, with the 1/i line.
inline std::string mean_panels(const std::vector<MeanCell>& cells, const std::vector<std::vector<u64>>& columns,
                               const std::vector<std::string>& column_titles, bool by_degree) {
    std::vector<unsigned> is = cells.empty() ? std::vector<unsigned>{} : cells[0].degrees;
    std::vector<unsigned> series_keys;
    for (const auto& c : cells) {
        const unsigned key = by_degree ? static_cast<unsigned>(c.p) : c.n;
        if (std::find(series_keys.begin(), series_keys.end(), key) == series_keys.end()) series_keys.push_back(key);
    }
    const double pw = 320, ph = 200, mx = 70, my = 40;
    Svg svg(mx + columns.size() * (pw + mx) + 80, my + is.size() * (ph + 70));
    for (std::size_t r = 0; r < is.size(); ++r) {
        for (std::size_t col = 0; col < columns.size(); ++col) {
            double xlo = 1e300, xhi = 0, ylo = 1.0 / is[r], yhi = 1.0 / is[r];
            for (const auto& c : cells) {
                const u64 xkey = by_degree ? c.n : c.p;
                if (std::find(columns[col].begin(), columns[col].end(), c.p) == columns[col].end()) continue;
                xlo = std::min<double>(xlo, static_cast<double>(xkey));
                xhi = std::max<double>(xhi, static_cast<double>(xkey));
                ylo = std::min(ylo, c.mean[r]);
                yhi = std::max(yhi, c.mean[r]);
            }
            if (xhi < xlo) continue;
            const double pad = 0.1 * (yhi - ylo) + 0.05;
            const bool logx = !by_degree && xhi / xlo > 20;
            auto f = svg.frame(mx + col * (pw + mx), my + r * (ph + 70), pw, ph, xlo, xhi == xlo ? xlo + 1 : xhi,
                               std::max(0.0, ylo - pad), yhi + pad,
                               "i = " + std::to_string(is[r]) + (column_titles[col].empty() ? "" : ", " + column_titles[col]),
                               by_degree ? "n" : "p", "mean N'_" + std::to_string(is[r]), logx);
            svg.hline(f, 1.0 / is[r], "#000");
            for (const auto& c : cells) {
                if (std::find(columns[col].begin(), columns[col].end(), c.p) == columns[col].end()) continue;
                const unsigned key = by_degree ? static_cast<unsigned>(c.p) : c.n;
                const auto k = static_cast<std::size_t>(std::find(series_keys.begin(), series_keys.end(), key) - series_keys.begin());
                svg.point(f, static_cast<double>(by_degree ? c.n : c.p), c.mean[r], degree_color(k));
            }
        }
    }
    std::vector<std::pair<std::string, std::string>> legend;
    for (std::size_t k = 0; k < series_keys.size(); ++k)
        legend.emplace_back((by_degree ? "p = " : "n = ") + std::to_string(series_keys[k]), degree_color(k));
    legend.emplace_back("1/i", "#000");
    svg.legend(mx + columns.size() * (pw + mx) - 20, my + 10, legend);
    return svg.str();
}

inline FigureOutput figure1(const FigureOptions& o) {
    const auto g = fig1_grid(o);
    const auto cells = fig1_cells(o);
    FigureOutput out{"fig1", content_hash(o.to_json("fig1")), "", "", {}};
    out.csv = csv_preamble(out.hash, "fig1 mean N'_i against p") + mean_rows(cells);
    out.svg = mean_panels(cells, {g.small, g.large}, {"small p", "large p"}, false);
    out.summary = {{"small_primes", g.small}, {"large_primes", g.large}, {"degrees", g.degrees}};
    return out;
}

inline FigureOutput figure3(const FigureOptions& o) {
    const std::vector<u64> primes = o.primes.empty() ? std::vector<u64>{101, 10007} : o.primes;
    std::vector<unsigned> degrees = o.degrees;
    if (degrees.empty())
        for (unsigned n = 5; n <= 200; n += 5) degrees.push_back(n);
    std::vector<MeanCell> cells;
    for (u64 p : primes)
        for (unsigned n : degrees) cells.push_back(mean_cell(p, n, {1, 2, 5}, o.trials, o.seed, o.workers, "fig3"));
    FigureOutput out{"fig3", content_hash(o.to_json("fig3")), "", "", {}};
    out.csv = csv_preamble(out.hash, "fig3 mean N'_i against n") + mean_rows(cells);
    out.svg = mean_panels(cells, {primes}, {""}, true);
    out.summary = {{"primes", primes}, {"degrees", degrees}};
    return out;
}

inline double poisson_pmf(double lambda, unsigned k) {
    return std::exp(-lambda + k * std::log(lambda) - std::lgamma(k + 1.0));
}

inline FigureOutput figure2(const FigureOptions& o) {
    const u64 p = o.primes.empty() ? 10'000'079 : o.primes.at(0);
    const std::vector<unsigned> degrees = o.degrees.empty() ? std::vector<unsigned>{20, 50} : o.degrees;
    const std::vector<unsigned> is{1, 2, 5};
    FigureOutput out{"fig2", content_hash(o.to_json("fig2")), "", "", {}};
    std::ostringstream rows;
    rows << "n,i,value,count,poisson_expected\n";
    const FieldCtx F = make_field(p, 1);
    const double pw = 260, ph = 180, mx = 60, my = 40;
    Svg svg(mx + 3 * (pw + mx), my + degrees.size() * (ph + 70));
    for (std::size_t r = 0; r < degrees.size(); ++r) {
        const unsigned n = degrees[r];
        const TrialSampler s(F, parse_mu(kTernaryMu, F), n);
        const auto acc = tabulate(s, {{Stat::with_mult, {}}}, 5, {}, o.trials,
                                  derive_seed(o.seed, "fig2/" + std::to_string(p) + "/" + std::to_string(n)), 0, o.workers);
        for (std::size_t c = 0; c < is.size(); ++c) {
            const unsigned i = is[c];
            std::map<unsigned, u64> hist;
            for (const auto& [k, v] : acc.dists[0].table()) hist[static_cast<unsigned>(k[i - 1])] += v;
            const unsigned kmax = std::max(hist.empty() ? 0u : hist.rbegin()->first, 3u);
            double ymax = 0;
            for (unsigned k = 0; k <= kmax; ++k) {
                const double expect = static_cast<double>(o.trials) * poisson_pmf(1.0 / i, k);
                ymax = std::max({ymax, expect, static_cast<double>(hist[k])});
                rows << n << ',' << i << ',' << k << ',' << hist[k] << ',' << fmt(expect) << '\n';
            }
            auto f = svg.frame(mx + c * (pw + mx), my + r * (ph + 70), pw, ph, -0.5, kmax + 0.5, 0, ymax * 1.05,
                               "n = " + std::to_string(n) + ", i = " + std::to_string(i), "N'_" + std::to_string(i), "count");
            for (unsigned k = 0; k <= kmax; ++k) {
                svg.bar(f, k - 0.4, k + 0.4, static_cast<double>(hist[k]), "#9ecae1");
                svg.point(f, k, static_cast<double>(o.trials) * poisson_pmf(1.0 / i, k), "#d62728", 3.5);
            }
        }
    }
    out.csv = csv_preamble(out.hash, "fig2 histograms of N'_i") + rows.str();
    out.svg = svg.str();
    out.summary = {{"p", p}, {"degrees", degrees}, {"i", is}};
    return out;
}

struct LargestFactorData {
    u64 p = 0;
    unsigned n = 0;
    std::vector<double> values;  // normalized largest degrees
    double ks = 0;
};

/// Normalized largest factor degrees for each prime and PD max samples.
inline std::pair<std::vector<LargestFactorData>, std::vector<double>> fig4_data(const FigureOptions& o) {
    const std::vector<u64> primes = o.primes.empty() ? std::vector<u64>{11, 10'000'079} : o.primes;
    const unsigned n = o.degrees.empty() ? 500 : o.degrees.at(0);
    const auto pd = pd_max_samples(o.trials, derive_seed(o.seed, "fig4/pd"), o.workers);
    std::vector<LargestFactorData> data;
    for (u64 p : primes) {
        const FieldCtx F = make_field(p, 1);
        const TrialSampler s(F, parse_mu(kTernaryMu, F), n);
        const auto acc = tabulate(s, {{Stat::largest, {}}}, 0, {}, o.trials,
                                  derive_seed(o.seed, "fig4/" + std::to_string(p) + "/" + std::to_string(n)), 0, o.workers);
        LargestFactorData d{p, n, normalized_largest(acc.dists[0]), 0};
        d.ks = ks_distance(d.values, pd);
        data.push_back(std::move(d));
    }
    return {data, pd};
}

inline std::vector<u64> histogram01(const std::vector<double>& v, unsigned bins) {
    std::vector<u64> h(bins, 0);
    for (double x : v) ++h[std::min<std::size_t>(bins - 1, static_cast<std::size_t>(x * bins))];
    return h;
}

inline FigureOutput figure4(const FigureOptions& o) {
    if (o.bins < 1) throw InvalidArgument("bins must be >= 1");
    const auto [data, pd] = fig4_data(o);
    FigureOutput out{"fig4", content_hash(o.to_json("fig4")), "", "", {}};
    std::ostringstream rows;
    rows << "source,bin_lo,bin_hi,count\n";
    std::vector<std::pair<std::string, std::vector<u64>>> panels;
    for (const auto& d : data) panels.emplace_back("p=" + std::to_string(d.p), histogram01(d.values, o.bins));
    panels.emplace_back("poisson-dirichlet", histogram01(pd, o.bins));
    const double pw = 260, ph = 180, mx = 60, my = 40;
    Svg svg(mx + panels.size() * (pw + mx), my + ph + 70);
    u64 ymax = 1;
    for (const auto& [name, h] : panels) ymax = std::max(ymax, *std::max_element(h.begin(), h.end()));
    for (std::size_t c = 0; c < panels.size(); ++c) {
        const auto& [name, h] = panels[c];
        auto f = svg.frame(mx + c * (pw + mx), my, pw, ph, 0, 1, 0, ymax * 1.05, name, "largest degree / n", "count");
        for (unsigned b = 0; b < o.bins; ++b) {
            const double lo = static_cast<double>(b) / o.bins, hi = static_cast<double>(b + 1) / o.bins;
            rows << name << ',' << fmt(lo) << ',' << fmt(hi) << ',' << h[b] << '\n';
            svg.bar(f, lo, hi, static_cast<double>(h[b]), c + 1 == panels.size() ? "#fdae6b" : "#9ecae1");
        }
    }
    out.csv = csv_preamble(out.hash, "fig4 normalized largest factor degree") + rows.str();
    out.svg = svg.str();
    out.summary = json{{"n", data.empty() ? 0u : data[0].n}, {"ks", json::object()}};
    for (const auto& d : data) out.summary["ks"][std::to_string(d.p)] = d.ks;
    return out;
}

inline FigureOutput make_figure(const std::string& which, const FigureOptions& o) {
    if (which == "fig1") return figure1(o);
    if (which == "fig2") return figure2(o);
    if (which == "fig3") return figure3(o);
    if (which == "fig4") return figure4(o);
    throw InvalidArgument("unknown figure '" + which + "' (fig1, fig2, fig3, fig4)");
}

/// Writes <name>.csv, <name>.svg and <name>.json into dir.
inline std::vector<fs::path> write_figure(const FigureOutput& f, const fs::path& dir, const FigureOptions& o) {
    json summary = f.summary;
    summary["schema"] = "polylab-figure/1";
    summary["config_hash"] = f.hash;
    summary["options"] = o.to_json(f.name);
    write_text(dir / (f.name + ".csv"), f.csv);
    write_text(dir / (f.name + ".svg"), f.svg);
    write_text(dir / (f.name + ".json"), summary.dump(2) + "\n");
    return {dir / (f.name + ".csv"), dir / (f.name + ".svg"), dir / (f.name + ".json")};
}

}  // namespace polylab::harness

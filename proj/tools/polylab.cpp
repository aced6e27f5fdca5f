// SPDX-License-Identifier: Apache-2.0
// polylab: factorization statistics of random polynomials over finite fields.
//
// Exit codes: 0 success, 2 invalid configuration, 3 resource cap,
// 4 verification failure, 1 anything else.

#include <CLI11.hpp>

#include <iostream>

#include "polylab/commands.hpp"
#include "polylab/figures.hpp"
#include "polylab/harness.hpp"

using namespace polylab;
using namespace polylab::harness;

namespace {

std::vector<unsigned> parse_uint_list(const std::string& s) {
    std::vector<unsigned> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto comma = s.find(',', start);
        if (comma == std::string::npos) comma = s.size();
        try {
            out.push_back(static_cast<unsigned>(std::stoul(s.substr(start, comma - start))));
        } catch (const std::exception&) {
            throw InvalidArgument("bad integer list '" + s + "'");
        }
        start = comma + 1;
    }
    return out;
}

/// Writes via `produce` into `out`, or with --verify regenerates and compares.
void emit(const std::string& out, const std::string& hash, bool verify, const std::function<void(const fs::path&)>& produce) {
    if (verify) {
        verify_outputs(out, hash, produce);
        std::cout << "verified " << out << " (config " << hash << ")\n";
    } else {
        produce(out);
        std::cout << "wrote " << out << " (config " << hash << ")\n";
    }
}

void print_record(const RunRecord& rec) {
    for (const auto& s : rec.stats) {
        std::cout << to_string(s.spec.kind) << ": trials " << s.dist.trials();
        for (std::size_t i = 0; i < s.means.size(); ++i) {
            std::cout << "  " << (s.spec.kind == Stat::largest ? "largest/n" : s.spec.columns[i]) << " mean "
                      << fmt_fixed(s.means[i], 4) << " +- " << fmt_fixed(s.std_errors[i], 4);
            if (i < s.reference_means.size()) std::cout << " (ref " << fmt_fixed(s.reference_means[i], 4) << ")";
        }
        std::cout << "\n  reference " << s.reference_kind;
        if (s.tv) std::cout << " tv " << fmt_fixed(*s.tv, 5);
        if (s.tv_ci) std::cout << " ci95 [" << fmt_fixed(s.tv_ci->lo, 5) << ", " << fmt_fixed(s.tv_ci->hi, 5) << "]";
        if (s.ks) std::cout << " ks " << fmt_fixed(*s.ks, 5);
        std::cout << '\n';
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Factorization statistics of random polynomials over finite fields"};
    app.require_subcommand(1);
    bool verify = false;
    std::string out = "out";

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte Carlo factor statistics against a uniform reference");
    std::string config_path;
    ExperimentConfig flags;
    std::vector<std::string> stats, phis;
    sim->add_option("--config", config_path, "JSON config file; flags override its values");
    auto* o_p = sim->add_option("--p", flags.p, "characteristic");
    auto* o_e = sim->add_option("--e", flags.e, "extension degree");
    auto* o_n = sim->add_option("--n", flags.n, "polynomial degree");
    auto* o_N = sim->add_option("--N", flags.N, "largest tracked factor degree");
    auto* o_mu = sim->add_option("--mu", flags.mu, "coefficient law, e.g. uniform, uniform:-1,0,1, 0:1/2,1:1/2");
    auto* o_model = sim->add_option("--model", flags.model, "mu | uniform-monic");
    auto* o_trials = sim->add_option("--trials", flags.trials, "number of trials");
    auto* o_seed = sim->add_option("--seed", flags.seed, "master seed");
    auto* o_workers = sim->add_option("--workers", flags.workers, "worker threads");
    auto* o_stat = sim->add_option("--stat", stats, "distinct, with-mult, largest, total, multiplicity (repeatable)");
    auto* o_phi = sim->add_option("--phi", phis, "monic irreducible 'p^e: c0,...,cd' for the multiplicity statistic");
    auto* o_ref = sim->add_option("--reference", flags.reference, "auto | exact | sampled | none");
    auto* o_boot = sim->add_option("--bootstrap", flags.bootstrap, "bootstrap resamples for the TV interval");
    auto* o_out = sim->add_option("--out", flags.out, "output directory");
    sim->add_flag("--verify", verify, "recompute and compare against existing outputs");

    // figures
    auto* figs = app.add_subcommand("figures", "Data and SVG for the simulation figures");
    std::vector<std::string> which;
    FigureOptions fo;
    std::string fig_primes, fig_large, fig_degrees;
    figs->add_option("which", which, "fig1 fig2 fig3 fig4 or all")->required();
    figs->add_option("--trials", fo.trials, "trials per cell");
    figs->add_option("--seed", fo.seed, "master seed");
    figs->add_option("--workers", fo.workers, "worker threads");
    figs->add_option("--primes", fig_primes, "comma separated primes overriding the default grid");
    figs->add_option("--large-primes", fig_large, "fig1 large primes");
    figs->add_option("--degrees", fig_degrees, "comma separated degrees n");
    figs->add_option("--bins", fo.bins, "fig4 histogram bins");
    figs->add_option("--out", out, "output directory");
    figs->add_flag("--verify", verify, "recompute and compare against existing outputs");

    // exact
    auto* ex = app.add_subcommand("exact", "Exact law of the derivative values at fixed roots");
    FourierRequest fr;
    bool with_law = false;
    ex->add_option("--p", fr.p, "characteristic");
    ex->add_option("--e", fr.e, "degree of the field holding roots written with t");
    ex->add_option("--mu", fr.mu, "coefficient law on F_p");
    ex->add_option("--n", fr.n, "polynomial degree");
    ex->add_option("--root", fr.roots, "alpha:k1,k2 (repeatable)");
    ex->add_flag("--law", with_law, "include the full law");
    ex->add_option("--out", out, "output directory");
    ex->add_flag("--verify", verify, "recompute and compare against existing outputs");

    // moments
    auto* mo = app.add_subcommand("moments", "Exact joint factorial-free moments for uniform monic polynomials");
    MomentsRequest mr;
    std::string h_text = "2,1";
    bool include_x = false;
    mo->add_option("--q", mr.q, "field size (prime power)");
    mo->add_option("--n", mr.n, "polynomial degree");
    mo->add_option("--exponents", h_text, "exponents h_1,...,h_N, comma separated");
    mo->add_option("--model", mr.model, "distinct | with_multiplicity");
    mo->add_flag("--include-x", include_x, "count the factor x in degree 1");
    mo->add_flag("--law", mr.law, "also emit the joint law");
    mo->add_option("--out", out, "output directory");
    mo->add_flag("--verify", verify, "recompute and compare against existing outputs");

    // bounds
    auto* bo = app.add_subcommand("bounds", "Fourier, divisibility, Halasz, union and moment-comparison bounds");
    std::string kind;
    bool grid = false;
    unsigned bN = 3, bH = 2;
    double C_hal = 2.0;
    OrderThresholdParams bpar;
    bo->add_option("kind", kind, "prop32 | divisibility | halasz | union | pointwise | poisson")->required();
    bo->add_flag("--grid", grid, "run the standard grid");
    bo->add_option("--p", fr.p, "characteristic");
    bo->add_option("--e", fr.e, "extension degree for roots written with t");
    bo->add_option("--mu", fr.mu, "coefficient law on F_p");
    bo->add_option("--n", fr.n, "polynomial degree");
    bo->add_option("--root", fr.roots, "alpha:k1,k2 (repeatable)");
    bo->add_option("--N", bN, "number of tracked degrees (union, pointwise, poisson)");
    bo->add_option("--H", bH, "moment order (pointwise, poisson); also the threshold H for union");
    bo->add_option("--K", bpar.K, "threshold K for union");
    bo->add_option("--C", bpar.C_order, "order threshold constant for union");
    bo->add_option("--chal", C_hal, "Halasz constant for union");
    bo->add_option("--model", mr.model, "distinct | with_multiplicity (pointwise)");
    bo->add_option("--out", out, "output directory");
    bo->add_flag("--verify", verify, "recompute and compare against existing outputs");

    // classify
    auto* cl = app.add_subcommand("classify", "High/low multiplicative order classification");
    ClassifyRequest cr;
    cl->add_option("--p", cr.p, "characteristic");
    cl->add_option("--e", cr.e, "extension degree");
    cl->add_option("--H", cr.params.H, "threshold parameter H");
    cl->add_option("--K", cr.params.K, "threshold parameter K");
    cl->add_option("--C", cr.params.C_order, "threshold constant");
    cl->add_flag("--polys", cr.polys, "classify monic irreducible polynomials of degree e");
    cl->add_option("--out", out, "output directory");
    cl->add_flag("--verify", verify, "recompute and compare against existing outputs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (sim->parsed()) {
        ExperimentConfig c = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
        if (*o_p) c.p = flags.p;
        if (*o_e) c.e = flags.e;
        if (*o_n) c.n = flags.n;
        if (*o_N) c.N = flags.N;
        if (*o_mu) c.mu = flags.mu;
        if (*o_model) c.model = flags.model;
        if (*o_trials) c.trials = flags.trials;
        if (*o_seed) c.seed = flags.seed;
        if (*o_workers) c.workers = flags.workers;
        if (*o_stat) c.stats = stats;
        if (*o_phi) c.phis = phis;
        if (*o_ref) c.reference = flags.reference;
        if (*o_boot) c.bootstrap = flags.bootstrap;
        if (*o_out) c.out = flags.out;
        c.validate();
        std::optional<RunRecord> last;
        emit(c.out, c.hash(), verify, [&](const fs::path& dir) {
            last = simulate(c);
            write_record(*last, dir, c.workers);
        });
        print_record(*last);
        return 0;
    }

    if (figs->parsed()) {
        if (!fig_primes.empty())
            for (unsigned v : parse_uint_list(fig_primes)) fo.primes.push_back(v);
        if (!fig_large.empty())
            for (unsigned v : parse_uint_list(fig_large)) fo.large_primes.push_back(v);
        if (!fig_degrees.empty()) fo.degrees = parse_uint_list(fig_degrees);
        if (which.size() == 1 && which[0] == "all") which = {"fig1", "fig2", "fig3", "fig4"};
        for (const auto& w : which) {
            std::optional<FigureOutput> f;
            emit(out, content_hash(fo.to_json(w)), verify, [&](const fs::path& dir) {
                f = make_figure(w, fo);
                write_figure(*f, dir, fo);
            });
            std::cout << w << ": " << f->summary.dump() << '\n';
        }
        return 0;
    }

    if (ex->parsed()) {
        json rep;
        emit(out, fr.hash(), verify, [&](const fs::path& dir) {
            rep = exact_report(fr, with_law);
            write_text(dir / "exact.json", rep.dump(2) + "\n");
        });
        std::cout << "P[all values 0] = " << rep["prob_zero"].get<std::string>() << "  prop32 "
                  << (rep["prop32"]["pass"].get<bool>() ? "pass" : "FAIL") << '\n';
        return 0;
    }

    if (mo->parsed()) {
        mr.h = parse_uint_list(h_text);
        mr.exclude_x = !include_x;
        json rep;
        emit(out, content_hash(mr.to_json()), verify, [&](const fs::path& dir) {
            rep = moments_report(mr);
            write_text(dir / "moments.json", rep.dump(2) + "\n");
        });
        std::cout << "E[prod N_i^h_i] = " << rep["moment"]["moment"].get<std::string>() << '\n';
        return 0;
    }

    if (bo->parsed()) {
        json request{{"kind", kind}, {"grid", grid}};
        if (!grid) request["instance"] = fr.to_json();
        request["N"] = bN;
        request["H"] = bH;
        request["K"] = bpar.K;
        request["C"] = bpar.C_order;
        request["chal"] = C_hal;
        request["model"] = mr.model;
        const std::string hash = content_hash(request);
        json rep{{"schema", "polylab-bounds/1"}, {"config_hash", hash}, {"request", request}};
        bool pass = true;
        auto compute = [&] {
            if (kind == "prop32" || kind == "divisibility") {
                if (grid) {
                    const auto g = run_fourier_grid(fourier_grid());
                    rep["entries"] = g.entries;
                    rep["prop32_all_pass"] = g.prop32_all;
                    rep["divisibility_all_pass"] = g.divisibility_all;
                    pass = kind == "prop32" ? g.prop32_all : g.divisibility_all;
                } else {
                    const auto inst = build_instance(fr);
                    if (kind == "prop32") {
                        rep["report"] = check_prop32(inst.mu, fr.n, inst.V).to_json(fr.to_json());
                    } else {
                        auto m = as_multiplicities(inst.constraints);
                        if (!m) throw InvalidArgument("divisibility needs derivative sets {0..m-1}");
                        rep["report"] = check_divisibility_chain(inst.mu, fr.n, *m).to_json(fr.to_json());
                    }
                    pass = rep["report"]["pass"].get<bool>();
                }
            } else if (kind == "halasz") {
                const auto inst = build_instance(fr);
                auto m = as_multiplicities(inst.constraints);
                if (!m) throw InvalidArgument("halasz needs derivative sets {0..m-1}");
                rep["report"] = halasz_report(inst.mu, fr.n, *m).to_json(fr.to_json());
            } else if (kind == "union") {
                const FieldCtx F = make_field(fr.p, 1);
                const auto mu = parse_mu(fr.mu, F);
                bpar.H = bH;
                rep["terms"] = json::array();
                for (const auto& t : low_order_union_terms(mu, fr.n, bN, bpar, C_hal))
                    rep["terms"].push_back({{"i", t.i}, {"m_i", t.m}, {"low_count", t.count}, {"exact_count", t.exact_count},
                                            {"per_root", t.per_root}});
                rep["bound"] = low_order_union_bound(mu, fr.n, bN, bpar, C_hal);
            } else if (kind == "pointwise") {
                std::vector<PointwiseCase> cases;
                if (grid) cases = pointwise_grid();
                else cases.push_back({fr.p, fr.mu, fr.n, bN, bH, mr.model});
                rep["entries"] = json::array();
                for (const auto& c : cases) {
                    const auto r = run_pointwise(c);
                    pass = pass && r.pass;
                    json e = r.to_json();
                    e["case"] = c.to_json();
                    rep["entries"].push_back(e);
                }
                rep["all_pass"] = pass;
            } else if (kind == "poisson") {
                rep["bound"] = poisson_moment_bound(bH, bN);
            } else {
                throw InvalidArgument("unknown bounds kind '" + kind + "'");
            }
        };
        emit(out, hash, verify, [&](const fs::path& dir) {
            compute();
            write_text(dir / ("bounds_" + kind + ".json"), rep.dump(2) + "\n");
        });
        std::cout << kind << ": " << (pass ? "pass" : "FAIL") << '\n';
        return pass ? 0 : 4;
    }

    if (cl->parsed()) {
        const std::string hash = content_hash(cr.to_json());
        json summary;
        emit(out, hash, verify, [&](const fs::path& dir) {
            const auto rows = classify_rows(cr);
            summary = classify_summary(cr, rows);
            write_text(dir / "classify.csv", classification_csv(hash, rows));
            write_text(dir / "classify.json", summary.dump(2) + "\n");
        });
        std::cout << "threshold " << summary["threshold"] << ": " << summary["high"] << " high, " << summary["low"]
                  << " low\n";
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return 2;
    } catch (const ResourceCapExceeded& e) {
        std::cerr << "resource cap: " << e.what() << '\n';
        return 3;
    } catch (const VerificationFailure& e) {
        std::cerr << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

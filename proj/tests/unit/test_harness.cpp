// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

#include "polylab/commands.hpp"
#include "polylab/figures.hpp"
#include "polylab/harness.hpp"

using namespace polylab;
using namespace polylab::harness;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("polylab-test-" + name);
    fs::remove_all(d);
    return d;
}

ExperimentConfig small_config(u64 p, unsigned n, const std::string& mu, std::vector<std::string> stats) {
    ExperimentConfig c;
    c.p = p;
    c.n = n;
    c.mu = mu;
    c.trials = 3000;
    c.seed = 7;
    c.stats = std::move(stats);
    c.bootstrap = 20;
    return c;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(POLYLAB_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Hashing, Sha256KnownVector) {
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_NE(derive_seed(1, "a"), derive_seed(1, "b"));
    EXPECT_NE(derive_seed(1, "a"), derive_seed(2, "a"));
    EXPECT_EQ(derive_seed(5, "ref"), derive_seed(5, "ref"));
}

TEST(Config, HashIgnoresWorkersAndOutput) {
    ExperimentConfig a, b;
    b.workers = 8;
    b.out = "elsewhere";
    EXPECT_EQ(a.hash(), b.hash());
    EXPECT_EQ(a.hash().size(), 16u);
    b.seed = 2;
    EXPECT_NE(a.hash(), b.hash());
}

TEST(Config, JsonRoundTripAndRejection) {
    ExperimentConfig c = small_config(13, 9, "0:1/2,1:1/2", {"distinct", "total"});
    const auto d = ExperimentConfig::from_json(c.to_json());
    EXPECT_EQ(d.to_json(), c.to_json());
    EXPECT_THROW(ExperimentConfig::from_json(json{{"p", 5}, {"colour", 1}}), InvalidArgument);
    EXPECT_THROW(ExperimentConfig::from_json(json{{"p", "five"}}), InvalidArgument);
    ExperimentConfig bad;
    bad.stats = {"multiplicity"};
    EXPECT_THROW(bad.validate(), InvalidArgument);
    bad.stats = {"median"};
    EXPECT_THROW(bad.validate(), InvalidArgument);

    const fs::path dir = scratch_dir("config");
    fs::create_directories(dir);
    write_text(dir / "c.json", c.to_json().dump());
    EXPECT_EQ(load_config((dir / "c.json").string()).hash(), c.hash());
    EXPECT_THROW(load_config((dir / "missing.json").string()), InvalidArgument);
    fs::remove_all(dir);
}

TEST(Simulate, DeterministicAcrossWorkerCounts) {
    std::vector<ExperimentConfig> configs{
        small_config(11, 10, "uniform:-1,0,1", {"with-mult", "largest", "total"}),
        small_config(3, 12, "0:1/3,1:2/3", {"distinct"}),
        small_config(101, 20, "uniform", {"with-mult"}),
    };
    configs[2].model = "uniform-monic";
    for (const auto& base : configs) {
        std::vector<std::string> files;
        for (unsigned w : {1u, 4u, 8u}) {
            ExperimentConfig c = base;
            c.workers = w;
            const auto rec = simulate(c);
            const fs::path dir = scratch_dir("det-" + std::to_string(w));
            write_record(rec, dir, w);
            std::string all;
            for (const auto& s : rec.stats) all += read_file(dir / (to_string(s.spec.kind) + ".csv"));
            all += read_file(dir / "record.json");
            files.push_back(all);
            fs::remove_all(dir);
        }
        EXPECT_EQ(files[0], files[1]);
        EXPECT_EQ(files[0], files[2]);
    }
}

TEST(Simulate, SingleTrialPointMass) {
    ExperimentConfig c = small_config(5, 6, "1:1", {"with-mult", "total"});
    c.trials = 1;
    c.bootstrap = 0;
    const auto rec = simulate(c);
    EXPECT_EQ(rec.zero_redraws, 0u);
    // 1 + x + ... + x^6 = (x^7 - 1)/(x - 1) splits over F_5 as an irreducible of degree 6 since 5 has order 6 mod 7.
    const auto& wm = rec.stat(Stat::with_mult);
    ASSERT_EQ(wm.dist.table().size(), 1u);
    EXPECT_EQ(wm.dist.table().begin()->first, (Key{0, 0, 0}));
    EXPECT_EQ(rec.stat(Stat::total).dist.table().begin()->first, (Key{1}));

    ExperimentConfig zero = c;
    zero.mu = "0:1";
    EXPECT_THROW(simulate(zero), InvalidArgument);
}

TEST(Simulate, MultiplicityStatistic) {
    ExperimentConfig c = small_config(3, 8, "uniform", {"multiplicity"});
    c.model = "uniform-monic";
    c.phis = {"3^1: 1,1", "3^1: 1,0,1"};
    const auto rec = simulate(c);
    const auto& r = rec.stat(Stat::multiplicity);
    EXPECT_EQ(r.spec.columns.size(), 2u);
    // x+1 divides a uniform monic polynomial with probability 1/3, so E[mult] = 1/3 + 1/9 + ... close to 1/2.
    EXPECT_NEAR(r.means[0], 0.5, 0.05);
}

TEST(Verify, DetectsTampering) {
    ExperimentConfig c = small_config(7, 8, "uniform:-1,0,1", {"with-mult"});
    const fs::path dir = scratch_dir("verify");
    auto produce = [&](const fs::path& d) { write_record(simulate(c), d, c.workers); };
    produce(dir);
    EXPECT_EQ(embedded_hash(dir / "with-mult.csv"), c.hash());
    EXPECT_NO_THROW(verify_outputs(dir, c.hash(), produce));

    ExperimentConfig other = c;
    other.seed = 99;
    EXPECT_THROW(verify_outputs(dir, other.hash(), [&](const fs::path& d) { write_record(simulate(other), d, 1); }),
                 VerificationFailure);

    std::string body = read_file(dir / "with-mult.csv");
    body.back() = body.back() == '0' ? '1' : '0';
    write_text(dir / "with-mult.csv", body);
    EXPECT_THROW(verify_outputs(dir, c.hash(), produce), VerificationFailure);
    fs::remove_all(dir);
    EXPECT_THROW(verify_outputs(dir, c.hash(), produce), VerificationFailure);
}

TEST(Figures, Fig1SmokeSchema) {
    FigureOptions o;
    o.trials = 50;
    o.primes = {11, 13};
    o.large_primes = {10000019};
    o.degrees = {5, 10};
    const auto f = make_figure("fig1", o);
    const fs::path dir = scratch_dir("fig1");
    write_figure(f, dir, o);
    std::ifstream in(dir / "fig1.csv");
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line.rfind("# polylab-csv/1 config_hash=" + f.hash, 0), 0u);
    std::getline(in, line);
    EXPECT_EQ(line, "p,n,i,mean,stderr,exact_uniform_mean");
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 3u * 2u * 3u);
    EXPECT_EQ(read_file(dir / "fig1.svg").rfind("<svg", 0), 0u);
    EXPECT_EQ(json::parse(read_file(dir / "fig1.json"))["config_hash"], f.hash);
    EXPECT_THROW(make_figure("fig9", o), InvalidArgument);
    fs::remove_all(dir);
}

TEST(Commands, MomentsMatchEnumeration) {
    // Enumerate all monic degree-8 polynomials over F_2.
    const FieldCtx F = make_field(2, 1);
    mpq_class sum = 0;
    for (u64 bits = 0; bits < 256; ++bits) {
        std::vector<long long> c(9, 0);
        for (unsigned k = 0; k < 8; ++k) c[k] = (bits >> k) & 1;
        c[8] = 1;
        const auto st = factor_stats(Polynomial::from_ints(F, c), 2);
        const long long n1 = st.distinct[0];  // x is already excluded
        sum += mpq_class(static_cast<long>(n1 * n1 * st.distinct[1]));
    }
    sum /= 256;
    MomentsRequest r;
    const auto rep = moments_report(r);
    EXPECT_EQ(mpq_class(rep["moment"]["moment"].get<std::string>()), sum);
}

TEST(Commands, Prop32GridPasses) {
    const auto g = run_fourier_grid(fourier_grid());
    EXPECT_TRUE(g.prop32_all);
    EXPECT_TRUE(g.divisibility_all);
    EXPECT_EQ(g.entries.size(), fourier_grid().size());
}

TEST(Commands, ClassifyCsv) {
    ClassifyRequest r;
    const auto rows = classify_rows(r);
    ASSERT_EQ(rows.size(), 100u);
    const auto csv = classification_csv("abc", rows);
    EXPECT_EQ(csv.rfind("# polylab-csv/1 config_hash=abc", 0), 0u);
    std::size_t low = 0;
    for (const auto& row : rows) low += row.high ? 0 : 1;
    // Orders dividing 100 below 7.06: 1, 2, 4, 5 with phi sum 1 + 1 + 2 + 4 = 8.
    EXPECT_EQ(low, 8u);
    const auto s = classify_summary(r, rows);
    EXPECT_EQ(s["low"], 8);
}

TEST(Cli, ExitCodes) {
    const fs::path dir = scratch_dir("cli");
    const std::string out = " --out " + dir.string();
    EXPECT_EQ(run_cli("simulate --p 7 --n 6 --trials 200" + out), 0);
    EXPECT_EQ(run_cli("simulate --p 7 --n 6 --trials 200 --workers 3 --verify" + out), 0);
    EXPECT_EQ(run_cli("simulate --p 7 --n 6 --trials 201 --verify" + out), 4);
    EXPECT_EQ(run_cli("simulate --p 8 --n 6" + out), 2);
    EXPECT_EQ(run_cli("simulate --no-such-flag"), 2);
    EXPECT_EQ(run_cli("classify --p 1000003" + out), 3);
    EXPECT_EQ(run_cli("classify --p 101" + out), 0);
    EXPECT_EQ(run_cli("figures fig7" + out), 2);
    fs::remove_all(dir);
}

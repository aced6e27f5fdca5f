// SPDX-License-Identifier: Apache-2.0
// Run a small experiment in-process and print the TV distance to the
// uniform monic model.

#include <iostream>

#include "polylab/harness.hpp"

using namespace polylab::harness;

int main() {
    ExperimentConfig c;
    c.p = 101;
    c.n = 30;
    c.mu = "uniform:-1,0,1";
    c.trials = 20000;
    c.workers = 2;
    c.stats = {"with-mult", "largest"};
    c.validate();

    const RunRecord rec = simulate(c);
    const auto& wm = rec.stat(Stat::with_mult);
    std::cout << "config " << rec.config_hash << ": TV to uniform " << fmt_fixed(*wm.tv, 4) << " ci95 ["
              << fmt_fixed(wm.tv_ci->lo, 4) << ", " << fmt_fixed(wm.tv_ci->hi, 4) << "]\n";
    std::cout << "KS of largest/n to Poisson-Dirichlet " << fmt_fixed(*rec.stat(Stat::largest).ks, 4) << "\n";
}

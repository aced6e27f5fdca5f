// SPDX-License-Identifier: Apache-2.0
// Factor a polynomial over F_{5^2}, read off its factor counts and compare
// with the exact uniform-model mean of N'_1.

#include <iostream>

#include "polylab/factor_stats.hpp"
#include "polylab/moment_engine.hpp"
#include "polylab/order_analysis.hpp"

using namespace polylab;

int main() {
    const FieldCtx F = make_field(5, 2);
    const Polynomial f = parse_polynomial("5^2: 1,0,t,3,1+t,0,0,1", F);
    const Factorization fac = factorize(f);
    std::cout << "f = " << f.to_string() << "\n";
    for (const auto& [phi, m] : fac.factors) std::cout << "  (" << phi.to_string() << ")^" << m << "\n";

    const FactorStats st = factor_stats(f, 3);
    std::cout << "N'_1..3 = " << st.with_mult[0] << ' ' << st.with_mult[1] << ' ' << st.with_mult[2] << "\n";
    std::cout << "uniform E[N'_1] at q=25, n=7: "
              << uniform_joint_moment(25, 7, {1}, FactorModel::with_multiplicity, true) << "\n";

    // Lehmer's polynomial has the smallest known Mahler measure above 1.
    const auto lehmer = IntPolynomial::from_ints({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1});
    std::cout << "M(Lehmer) = " << mahler_measure(lehmer) << "\n";
}

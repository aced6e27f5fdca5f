// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exact rational helpers on top of GMP: text parsing (fractions, integers and
// finite decimals are all exact), "num/den" output, and directed rounding.

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <string>
#include <string_view>

#include "polylab/errors.hpp"

namespace polylab {

/// Parses "a/b", "-7", "0.25" or "1.5e-3" into an exact rational.
inline mpq_class parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.empty()) throw InvalidArgument("empty rational");
    try {
        if (s.find('/') != std::string::npos) {
            mpq_class q(s, 10);
            if (q.get_den() == 0) throw InvalidArgument("zero denominator in '" + s + "'");
            q.canonicalize();
            return q;
        }
        std::string mantissa = s;
        long exponent = 0;
        if (const auto epos = s.find_first_of("eE"); epos != std::string::npos) {
            mantissa = s.substr(0, epos);
            exponent = std::stol(s.substr(epos + 1));
        }
        bool negative = false;
        if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
            negative = mantissa[0] == '-';
            mantissa.erase(mantissa.begin());
        }
        std::string digits;
        long frac_digits = 0;
        bool seen_dot = false;
        for (char c : mantissa) {
            if (c == '.') {
                if (seen_dot) throw InvalidArgument("bad rational '" + s + "'");
                seen_dot = true;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                digits += c;
                if (seen_dot) ++frac_digits;
            } else {
                throw InvalidArgument("bad rational '" + s + "'");
            }
        }
        if (digits.empty()) throw InvalidArgument("bad rational '" + s + "'");
        mpz_class num(digits, 10), den = 1;
        const long shift = exponent - frac_digits;
        mpz_class ten_pow;
        mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
        if (shift >= 0)
            num *= ten_pow;
        else
            den = ten_pow;
        mpq_class q(negative ? mpz_class(-num) : num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw InvalidArgument("bad rational '" + s + "'");
    }
}

inline std::string to_string(const mpq_class& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

/// Moves a libm result up by `ulps` units in the last place, covering the
/// (sub-ulp) error of exp/log/pow so bound values never round below truth.
inline double round_up(double x, int ulps = 4) {
    for (int i = 0; i < ulps; ++i) x = std::nextafter(x, INFINITY);
    return x;
}
inline double round_down(double x, int ulps = 4) {
    for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -INFINITY);
    return x;
}

}  // namespace polylab

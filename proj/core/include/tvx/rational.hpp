#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tvx {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat(long long num, long long den = 1) { return Rat(num) / Rat(den); }

inline Rat factorial(int n) {
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Rat(f);
}

inline Rat binomial(int n, int k) {
    if (k < 0 || k > n) return Rat(0);
    Int num = 1, den = 1;
    for (int i = 0; i < k; ++i) { num *= (n - i); den *= (i + 1); }
    return Rat(num) / Rat(den);
}

/* Exact parse of "p" or "p/q". */
inline Rat parse_rat(const std::string& s) {
    try {
        return Rat(s);
    } catch (const std::exception&) {
        throw std::runtime_error("bad rational literal: '" + s + "'");
    }
}

inline std::string to_string(const Rat& r) { return r.str(); }

}  // namespace tvx

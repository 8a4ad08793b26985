#pragma once

// Exact integer/rational scalar types used by the polynomial and counting code.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace ovl {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& n) { return n.convert_to<double>(); }

// Exact n choose k; zero outside 0 <= k <= n.
inline BigInt binomial(long n, long k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;  // exact at every step: r is binomial(n-k+i, i)
    }
    return r;
}

// m^e for integer m, e >= 0.
inline BigInt ipow(const BigInt& m, long e) {
    if (e < 0) throw std::invalid_argument("ipow: negative exponent");
    BigInt r = 1, base = m;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

}

#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <string>

namespace lemni {

using Int  = mpz_class;
using Rat  = mpq_class;
using Cplx = std::complex<double>;

// log |n| for nonzero arbitrary-precision n, via exact mantissa/exponent split.
inline double log_abs(const Int& n) {
    long e2 = 0;
    double d = mpz_get_d_2exp(&e2, n.get_mpz_t());
    return std::log(std::fabs(d)) + static_cast<double>(e2) * M_LN2;
}

// Nearest double to n; *exact set when the conversion is lossless.
double to_double_nearest(const Int& n, bool* exact = nullptr);

// Euler's totient by trial division.
long totient(long n);

// Decimal string with 15 significant digits (the report format for reals).
std::string real_str(double x);

// Exact rational from "p/q" or decimal text like "0.5" / "-1.25".
Rat parse_rational(const std::string& text);

// Decimal rendering of a rational: exact when the denominator is 2^a 5^b,
// otherwise 15 significant digits.
std::string rational_str(const Rat& r);

}  // namespace lemni

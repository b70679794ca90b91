#include "lemheights/numeric.hpp"

#include "lemheights/errors.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace lemni {

double to_double_nearest(const Int& n, bool* exact) {
    // mpz_get_d truncates toward zero; fix up to round-to-nearest.
    double d = mpz_get_d(n.get_mpz_t());
    Int back(d);
    if (back == n) {
        if (exact) *exact = true;
        return d;
    }
    Int rem = n - back;
    double up = std::nextafter(d, rem > 0 ? HUGE_VAL : -HUGE_VAL);
    Int back_up(up);
    Int err_d  = abs(Int(n - back));
    Int err_up = abs(Int(n - back_up));
    if (exact) *exact = false;
    return err_up < err_d ? up : d;
}

long totient(long n) {
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

std::string real_str(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", x);
    return buf;
}

Rat parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw InputError("empty rational literal");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (num.empty() || den.empty()) throw InputError("malformed rational: " + text);
        try {
            Int n(num, 10), d(den, 10);
            if (d == 0) throw InputError("zero denominator: " + text);
            Rat r{n, d};
            r.canonicalize();
            return r;
        } catch (const std::invalid_argument&) {
            throw InputError("malformed rational: " + text);
        }
    }

    bool neg = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') { neg = s[i] == '-'; ++i; }
    std::string digits;
    long frac_len = 0;
    bool seen_dot = false, seen_digit = false;
    for (; i < s.size(); ++i) {
        if (s[i] == '.') {
            if (seen_dot) throw InputError("malformed decimal: " + text);
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            digits += s[i];
            if (seen_dot) ++frac_len;
            seen_digit = true;
        } else {
            throw InputError("malformed decimal: " + text);
        }
    }
    if (!seen_digit) throw InputError("malformed decimal: " + text);
    Int num(digits.empty() ? std::string("0") : digits, 10);
    if (neg) num = -num;
    Int den = 1;
    for (long k = 0; k < frac_len; ++k) den *= 10;
    Rat r(num, den);
    r.canonicalize();
    return r;
}

std::string rational_str(const Rat& r) {
    Int den = r.get_den();
    // Strip factors of 2 and 5; exact decimal exists iff nothing remains.
    Int d = den;
    long twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d == 1) {
        long shift = std::max(twos, fives);
        Int scale = 1;
        for (long k = 0; k < shift; ++k) scale *= 10;
        Int scaled = r.get_num() * (scale / den);
        std::string digits = scaled.get_str();
        bool neg = !digits.empty() && digits[0] == '-';
        if (neg) digits = digits.substr(1);
        if (shift == 0) return (neg ? "-" : "") + digits;
        while (static_cast<long>(digits.size()) <= shift) digits.insert(digits.begin(), '0');
        digits.insert(digits.size() - shift, ".");
        while (digits.back() == '0') digits.pop_back();
        if (digits.back() == '.') digits.pop_back();
        return (neg ? "-" : "") + digits;
    }
    return real_str(r.get_d());
}

}  // namespace lemni

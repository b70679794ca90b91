#include "lemheights/exact.hpp"

#include <utility>

namespace lemni {

IntMatrix sylvester(const IntPolynomial& p, const IntPolynomial& v) {
    if (p.is_zero() || v.is_zero())
        throw InputError("sylvester requires nonzero polynomials");
    const int n = p.degree(), m = v.degree();
    if (n + m < 1)
        throw InputError("sylvester is degenerate for two constant polynomials");

    IntMatrix s(n + m, n + m);
    for (int i = 0; i < m; ++i)
        for (int t = 0; t <= n; ++t) s.at(i, i + t) = p.coeff(n - t);
    for (int i = 0; i < n; ++i)
        for (int t = 0; t <= m; ++t) s.at(m + i, i + t) = v.coeff(m - t);
    return s;
}

Int det_bareiss(IntMatrix m) {
    if (m.rows != m.cols) throw InputError("determinant of a non-square matrix");
    const long n = m.rows;
    if (n == 0) return Int(1);

    int sign = 1;
    Int prev = 1;
    for (long k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            long pivot = -1;
            for (long i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { pivot = i; break; }
            if (pivot < 0) return Int(0);
            for (long j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(pivot, j));
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i) {
            for (long j = k + 1; j < n; ++j) {
                Int t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m.at(i, k) = 0;
        }
        prev = m.at(k, k);
    }
    Int det = m.at(n - 1, n - 1);
    return sign < 0 ? Int(-det) : det;
}

Int resultant(const IntPolynomial& p, const IntPolynomial& v) {
    return det_bareiss(sylvester(p, v));
}

}  // namespace lemni

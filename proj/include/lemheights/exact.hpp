#pragma once

#include "lemheights/numeric.hpp"
#include "lemheights/polynomial.hpp"

#include <vector>

namespace lemni {

struct IntMatrix {
    long rows = 0, cols = 0;
    std::vector<Int> a;  // row-major

    IntMatrix() = default;
    IntMatrix(long r, long c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, Int(0)) {}

    Int& at(long i, long j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const Int& at(long i, long j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

// Sylvester matrix of p (degree n) and v (degree m), size (n+m) x (n+m), with
// det = Res(p, v) = lead(p)^m * prod_k v(z_k) over the roots z_k of p.
// Raises InputError when both arguments are constants (degenerate).
IntMatrix sylvester(const IntPolynomial& p, const IntPolynomial& v);

// Exact determinant by Bareiss fraction-free elimination with row pivoting.
Int det_bareiss(IntMatrix m);

// Exact resultant under the convention above; integer-valued for integer inputs.
Int resultant(const IntPolynomial& p, const IntPolynomial& v);

}  // namespace lemni

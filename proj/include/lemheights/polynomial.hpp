#pragma once

#include "lemheights/errors.hpp"
#include "lemheights/numeric.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lemni {

inline constexpr int  kFactorDegreeCap = 24;
inline constexpr long kCyclotomicCap   = 10000;

// Integer polynomial with arbitrary-precision coefficients stored ascending:
// c[0] + c[1] z + ... + c[n] z^n. The zero polynomial is canonically empty, so
// normalizing twice yields the identical coefficient sequence.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static IntPolynomial constant(Int v);
    static IntPolynomial monomial(int degree, Int coeff = Int(1));

    // Accepts either a comma-separated ascending coefficient list "c0,c1,...,cn"
    // or a sparse expression over z such as "z^2-2" or "-2z^3+z-4".
    static IntPolynomial parse(const std::string& text);

    int  degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const Int& lead() const;
    Int coeff(int k) const;
    const std::vector<Int>& coeffs() const { return c_; }

    Int eval(const Int& x) const;
    Rat eval(const Rat& x) const;

    IntPolynomial derivative() const;
    IntPolynomial pow(int k) const;

    Int content() const;  // gcd of coefficients carrying the sign of the lead; 0 for zero
    IntPolynomial primitive_part() const;
    bool is_monic() const { return !is_zero() && lead() == 1; }

    // Sparse printed form over z, highest degree first ("z^2-2", "2z-1", "0").
    std::string str() const;

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    IntPolynomial operator-() const;
    bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }
    bool operator!=(const IntPolynomial& o) const { return c_ != o.c_; }

    // Total order: by degree, then coefficients from the constant term up.
    static int compare(const IntPolynomial& a, const IntPolynomial& b);
    bool operator<(const IntPolynomial& o) const { return compare(*this, o) < 0; }

private:
    void normalize();
    std::vector<Int> c_;
};

// Exact coefficients of Q(V(z)). Both arguments must be nonzero.
IntPolynomial compose(const IntPolynomial& q, const IntPolynomial& v);

// Quotient when den divides num exactly over Z, otherwise nullopt.
std::optional<IntPolynomial> divide_exact(const IntPolynomial& num, const IntPolynomial& den);

// j-th cyclotomic polynomial, by exact division of w^j - 1 by the product of
// the lower-index cyclotomics over the divisors of j.
IntPolynomial cyclotomic(long j, long cap = kCyclotomicCap);

struct Factorization {
    Int content;  // signed; content * prod(factors^multiplicity) == input
    std::vector<std::pair<IntPolynomial, int>> factors;  // positive-lead irreducibles

    IntPolynomial reassemble() const;
};

// Exact factorization over Z by root-cluster reconstruction: floating roots,
// conjugation-closed subset enumeration, integer rounding, exact-division
// confirmation. Degrees above the cap raise ResourceError.
Factorization factor(const IntPolynomial& p, int degree_cap = kFactorDegreeCap);
bool is_irreducible(const IntPolynomial& p, int degree_cap = kFactorDegreeCap);

// Floating mirror of IntPolynomial, ascending complex coefficients.
class ComplexPolynomial {
public:
    ComplexPolynomial() = default;
    explicit ComplexPolynomial(std::vector<Cplx> coeffs, bool inexact = false)
        : c_(std::move(coeffs)), inexact_(inexact) { normalize(); }

    static ComplexPolynomial from(const IntPolynomial& p);

    int  degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Cplx lead() const;
    Cplx coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Cplx(0); }
    const std::vector<Cplx>& coeffs() const { return c_; }
    bool inexact_conversion() const { return inexact_; }

    Cplx eval(Cplx z) const;  // Horner
    ComplexPolynomial derivative() const;

    // sum_i |c_i| |z|^i — the backward-error scale for residuals at z.
    double coeff_scale_at(Cplx z) const;

private:
    void normalize();
    std::vector<Cplx> c_;
    bool inexact_ = false;
};

}  // namespace lemni

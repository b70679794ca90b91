#include "lemheights/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace lemni {

void IntPolynomial::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPolynomial IntPolynomial::constant(Int v) {
    std::vector<Int> c;
    if (v != 0) c.push_back(std::move(v));
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::monomial(int degree, Int coeff) {
    if (degree < 0) throw InputError("monomial degree must be nonnegative");
    std::vector<Int> c(degree + 1, Int(0));
    c[degree] = std::move(coeff);
    return IntPolynomial(std::move(c));
}

const Int& IntPolynomial::lead() const {
    if (is_zero()) throw InputError("zero polynomial has no leading coefficient");
    return c_.back();
}

Int IntPolynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Int(0);
    return c_[k];
}

Int IntPolynomial::eval(const Int& x) const {
    Int acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Rat IntPolynomial::eval(const Rat& x) const {
    Rat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rat(*it);
    return acc;
}

IntPolynomial IntPolynomial::derivative() const {
    if (degree() < 1) return IntPolynomial();
    std::vector<Int> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
    return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::pow(int k) const {
    if (k < 0) throw InputError("negative polynomial power");
    IntPolynomial out = IntPolynomial::constant(1);
    for (int i = 0; i < k; ++i) out = out * (*this);
    return out;
}

Int IntPolynomial::content() const {
    if (is_zero()) return Int(0);
    Int g = 0;
    for (const Int& c : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (lead() < 0) g = -g;
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
    if (is_zero()) return *this;
    Int g = content();
    std::vector<Int> c(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) c[k] = c_[k] / g;
    return IntPolynomial(std::move(c));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), Int(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), Int(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
    return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return IntPolynomial();
    std::vector<Int> c(a.c_.size() + b.c_.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::operator-() const {
    std::vector<Int> c(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) c[k] = -c_[k];
    return IntPolynomial(std::move(c));
}

int IntPolynomial::compare(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (std::size_t k = 0; k < a.c_.size(); ++k) {
        int c = cmp(a.c_[k], b.c_[k]);
        if (c != 0) return c;
    }
    return 0;
}

IntPolynomial compose(const IntPolynomial& q, const IntPolynomial& v) {
    if (q.is_zero() || v.is_zero()) throw InputError("compose requires nonzero polynomials");
    IntPolynomial acc;
    for (int k = q.degree(); k >= 0; --k)
        acc = acc * v + IntPolynomial::constant(q.coeff(k));
    return acc;
}

std::optional<IntPolynomial> divide_exact(const IntPolynomial& num, const IntPolynomial& den) {
    if (den.is_zero()) throw InputError("division by the zero polynomial");
    if (num.is_zero()) return IntPolynomial();
    if (num.degree() < den.degree()) return std::nullopt;

    std::vector<Int> rem(num.coeffs());
    std::vector<Int> quot(num.degree() - den.degree() + 1, Int(0));
    const Int& dl = den.lead();
    for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k) {
        Int& top = rem[k + den.degree()];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), dl.get_mpz_t())) return std::nullopt;
        Int q = top / dl;
        for (int j = 0; j <= den.degree(); ++j) rem[k + j] -= q * den.coeff(j);
        quot[k] = std::move(q);
    }
    for (const Int& r : rem)
        if (r != 0) return std::nullopt;
    return IntPolynomial(std::move(quot));
}

IntPolynomial cyclotomic(long j, long cap) {
    if (j < 1) throw InputError("cyclotomic index must be positive");
    if (j > cap) throw ResourceError("cyclotomic index exceeds cap",
                                     "j=" + std::to_string(j) + " cap=" + std::to_string(cap));
    std::vector<long> divisors;
    for (long d = 1; d * d <= j; ++d) {
        if (j % d == 0) {
            divisors.push_back(d);
            if (d != j / d) divisors.push_back(j / d);
        }
    }
    std::sort(divisors.begin(), divisors.end());

    std::map<long, IntPolynomial> phi;
    for (long e : divisors) {
        // w^e - 1, then divide off every lower cyclotomic over divisors of e.
        std::vector<Int> c(e + 1, Int(0));
        c[0] = -1;
        c[e] = 1;
        IntPolynomial num{std::move(c)};
        for (long d : divisors) {
            if (d >= e || e % d != 0) continue;
            auto q = divide_exact(num, phi.at(d));
            if (!q) throw Error(ErrorKind::Limit, "cyclotomic exact division failed (internal)");
            num = std::move(*q);
        }
        phi[e] = std::move(num);
    }
    return phi.at(j);
}

IntPolynomial Factorization::reassemble() const {
    IntPolynomial out = IntPolynomial::constant(content);
    for (const auto& [f, mult] : factors)
        for (int i = 0; i < mult; ++i) out = out * f;
    return out;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

IntPolynomial parse_coeff_list(const std::string& text) {
    std::vector<Int> coeffs;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ',')) {
        std::string t;
        for (char ch : item)
            if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
        if (t.empty()) throw InputError("empty coefficient in list", text);
        try {
            coeffs.emplace_back(t, 10);
        } catch (const std::invalid_argument&) {
            throw InputError("bad integer coefficient '" + t + "'", text);
        }
    }
    if (coeffs.empty()) throw InputError("empty coefficient list", text);
    return IntPolynomial(std::move(coeffs));
}

IntPolynomial parse_sparse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw InputError("empty polynomial expression");

    std::map<int, Int> terms;
    std::size_t i = 0;
    bool first = true;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw InputError("expected '+' or '-' at position " + std::to_string(i), text);
        }
        first = false;
        if (i >= s.size()) throw InputError("dangling sign", text);

        std::string digits;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
        Int coeff = digits.empty() ? Int(1) : Int(digits, 10);
        if (sign < 0) coeff = -coeff;

        int deg = 0;
        if (i < s.size() && s[i] == '*') ++i;
        if (i < s.size() && (s[i] == 'z' || s[i] == 'w')) {
            ++i;
            deg = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string ed;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ed += s[i++];
                if (ed.empty()) throw InputError("missing exponent after '^'", text);
                deg = std::stoi(ed);
            }
        } else if (digits.empty()) {
            throw InputError("expected coefficient or variable at position " + std::to_string(i), text);
        }
        terms[deg] += coeff;
    }
    int max_deg = terms.empty() ? 0 : terms.rbegin()->first;
    std::vector<Int> coeffs(max_deg + 1, Int(0));
    for (const auto& [d, c] : terms) coeffs[d] = c;
    return IntPolynomial(std::move(coeffs));
}

}  // namespace

IntPolynomial IntPolynomial::parse(const std::string& text) {
    if (text.find(',') != std::string::npos) return parse_coeff_list(text);
    return parse_sparse(text);
}

std::string IntPolynomial::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const Int c = coeff(k);
        if (c == 0) continue;
        Int a = abs(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? "-" : "+";
        }
        if (k == 0 || a != 1) out += a.get_str();
        if (k >= 1) {
            out += "z";
            if (k >= 2) out += "^" + std::to_string(k);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// ComplexPolynomial

void ComplexPolynomial::normalize() {
    while (!c_.empty() && c_.back() == Cplx(0)) c_.pop_back();
}

ComplexPolynomial ComplexPolynomial::from(const IntPolynomial& p) {
    std::vector<Cplx> c(p.coeffs().size());
    bool inexact = false;
    for (std::size_t k = 0; k < c.size(); ++k) {
        bool ok = true;
        c[k] = Cplx(to_double_nearest(p.coeffs()[k], &ok), 0.0);
        inexact = inexact || !ok;
    }
    return ComplexPolynomial(std::move(c), inexact);
}

Cplx ComplexPolynomial::lead() const {
    if (is_zero()) throw InputError("zero polynomial has no leading coefficient");
    return c_.back();
}

Cplx ComplexPolynomial::eval(Cplx z) const {
    Cplx acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

ComplexPolynomial ComplexPolynomial::derivative() const {
    if (degree() < 1) return ComplexPolynomial();
    std::vector<Cplx> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
    return ComplexPolynomial(std::move(d), inexact_);
}

double ComplexPolynomial::coeff_scale_at(Cplx z) const {
    double az = std::abs(z), p = 1.0, s = 0.0;
    for (const Cplx& c : c_) {
        s += std::abs(c) * p;
        p *= az;
    }
    return s;
}

}  // namespace lemni

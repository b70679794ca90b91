#include <doctest.h>

#include "lemheights/rootfinding.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace lemni;

namespace {

IntPolynomial P(const std::string& s) { return IntPolynomial::parse(s); }
ComplexPolynomial C(const std::string& s) { return ComplexPolynomial::from(P(s)); }

double nearest_dist(const std::vector<Cplx>& pts, Cplx target) {
    double best = 1e300;
    for (Cplx p : pts) best = std::min(best, std::abs(p - target));
    return best;
}

// Independent oracle: bisection for a real root on [lo, hi].
double bisect(const ComplexPolynomial& p, double lo, double hi) {
    auto f = [&](double x) { return p.eval(Cplx(x, 0)).real(); };
    for (int i = 0; i < 200; ++i) {
        double mid = (lo + hi) / 2;
        if ((f(lo) < 0) == (f(mid) < 0))
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2;
}

}  // namespace

TEST_CASE("roots: simple quadratics") {
    RootSet rs = roots(C("z^2-1"));
    REQUIRE(rs.size() == 2);
    CHECK(nearest_dist(rs.roots, {1, 0}) < 1e-12);
    CHECK(nearest_dist(rs.roots, {-1, 0}) < 1e-12);
    for (double r : rs.residuals) CHECK(r < 1e-14);
}

TEST_CASE("roots: product of linear factors") {
    // (z-1)(z-2)(z-3)(z-4)(z-5) expanded
    IntPolynomial prod = IntPolynomial::constant(1);
    for (long k = 1; k <= 5; ++k)
        prod = prod * (IntPolynomial::monomial(1) - IntPolynomial::constant(k));
    RootSet rs = roots(ComplexPolynomial::from(prod));
    REQUIRE(rs.size() == 5);
    for (long k = 1; k <= 5; ++k)
        CHECK(nearest_dist(rs.roots, {static_cast<double>(k), 0}) < 1e-10);
}

TEST_CASE("roots: sqrt(2) against bisection oracle") {
    double ref = bisect(C("z^2-2"), 1.0, 2.0);
    RootSet rs = roots(C("z^2-2"));
    CHECK(nearest_dist(rs.roots, {ref, 0}) < 1e-12);
    CHECK(nearest_dist(rs.roots, {-ref, 0}) < 1e-12);
}

TEST_CASE("roots: residuals are recomputed and bounded") {
    std::mt19937_64 rng(59);
    std::uniform_int_distribution<long> coef(-50, 50);
    int done = 0;
    while (done < 40) {
        int d = 1 + static_cast<int>(rng() % 10);
        std::vector<Int> c(d + 1);
        for (auto& x : c) x = coef(rng);
        IntPolynomial p{std::move(c)};
        if (p.degree() < 1) continue;
        ++done;
        ComplexPolynomial pc = ComplexPolynomial::from(p);
        RootSet rs = roots(pc);
        REQUIRE(static_cast<int>(rs.size()) == p.degree());
        for (std::size_t i = 0; i < rs.size(); ++i) {
            CHECK(std::isfinite(rs.radii[i]));
            CHECK(rs.radii[i] >= 0);
            double recomputed = std::abs(pc.eval(rs.roots[i]));
            CHECK(rs.residuals[i] == doctest::Approx(recomputed).epsilon(1e-9));
            CHECK(recomputed <= 1024 * 1e-16 * pc.coeff_scale_at(rs.roots[i]) + 1e-300);
        }
    }
}

TEST_CASE("roots: Vieta sum consistency") {
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<long> coef(-9, 9);
    int done = 0;
    while (done < 50) {
        int d = 2 + static_cast<int>(rng() % 11);
        std::vector<Int> c(d + 1);
        for (auto& x : c) x = coef(rng);
        IntPolynomial p{std::move(c)};
        if (p.degree() < 2) continue;
        ++done;
        RootSet rs = roots(ComplexPolynomial::from(p));
        Cplx sum = 0;
        for (Cplx z : rs.roots) sum += z;
        double cn = to_double_nearest(p.lead());
        double cn1 = to_double_nearest(p.coeff(p.degree() - 1));
        Cplx expect(-cn1 / cn, 0);
        double scale = std::max(1.0, std::abs(expect));
        CHECK(std::abs(sum - expect) <= 1e-9 * scale);
    }
}

TEST_CASE("roots: exact zero roots are split off exactly") {
    RootSet rs = roots(C("z^3"));
    REQUIRE(rs.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(rs.roots[i] == Cplx(0, 0));
        CHECK(rs.radii[i] == 0.0);
    }
}

TEST_CASE("roots: double roots settle into clusters") {
    RootSet rs = roots(C("z^4-4z^2+4"));  // (z^2-2)^2
    REQUIRE(rs.size() == 4);
    double s2 = std::sqrt(2.0);
    int near_pos = 0, near_neg = 0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (std::abs(rs.roots[i] - Cplx(s2, 0)) < 1e-5) ++near_pos;
        if (std::abs(rs.roots[i] - Cplx(-s2, 0)) < 1e-5) ++near_neg;
        CHECK(std::abs(rs.roots[i]) == doctest::Approx(s2).epsilon(1e-5));
        // cluster radius covers the distance to the true double root
        double d = std::min(std::abs(rs.roots[i] - Cplx(s2, 0)),
                            std::abs(rs.roots[i] - Cplx(-s2, 0)));
        CHECK(d <= std::max(rs.radii[i], 1e-12));
    }
    CHECK(near_pos == 2);
    CHECK(near_neg == 2);
}

TEST_CASE("roots: iteration cap raises NonConvergenceError") {
    IntPolynomial prod = IntPolynomial::constant(1);
    for (long k = 1; k <= 8; ++k)
        prod = prod * (IntPolynomial::monomial(1) - IntPolynomial::constant(k));
    CHECK_THROWS_AS(roots(ComplexPolynomial::from(prod), RootOptions{1e-13, 1}),
                    NonConvergenceError);
    CHECK_THROWS_AS(roots(ComplexPolynomial()), InputError);
    CHECK_THROWS_AS(roots(C("7")), InputError);
}

TEST_CASE("solve_level: examples") {
    RootSet a = solve_level(C("z"), {0, 1});
    REQUIRE(a.size() == 1);
    CHECK(std::abs(a.roots[0] - Cplx(0, 1)) < 1e-14);

    RootSet b = solve_level(C("z^2-1"), {1, 0});
    REQUIRE(b.size() == 2);
    double s2 = std::sqrt(2.0);
    CHECK(nearest_dist(b.roots, {s2, 0}) < 1e-12);
    CHECK(nearest_dist(b.roots, {-s2, 0}) < 1e-12);

    RootSet c = solve_level(C("z^2-1"), {-1, 0});  // double root at 0
    REQUIRE(c.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(c.roots[i]) <= c.radii[i] + 1e-12);
}

TEST_CASE("solve_level: warm start keeps branch order and displacement bound") {
    ComplexPolynomial v = C("z^2-1");
    ComplexPolynomial dv = v.derivative();
    RootSet base = solve_level(v, {2, 0});
    double delta = 1e-4;
    // a fixed fan of directions, away from the critical value 0
    for (int dir = 0; dir < 8; ++dir) {
        double ang = dir * 0.785398163397448;
        Cplx w2 = Cplx(2, 0) + delta * Cplx(std::cos(ang), std::sin(ang));
        RootSet moved = solve_level(v, w2, &base);
        REQUIRE(moved.size() == base.size());
        for (std::size_t j = 0; j < moved.size(); ++j) {
            double dvj = std::abs(dv.eval(base.roots[j]));
            CHECK(std::abs(moved.roots[j] - base.roots[j]) <= 10 * delta / dvj);
        }
    }
}

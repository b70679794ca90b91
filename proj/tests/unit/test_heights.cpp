#include <doctest.h>

#include "lemheights/heights.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace lemni;

namespace {

IntPolynomial P(const std::string& s) { return IntPolynomial::parse(s); }
Lemniscate L(const std::string& v, const std::string& r) {
    return Lemniscate(P(v), parse_rational(r));
}

IntPolynomial random_poly(std::mt19937_64& rng, int max_degree, long bound) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<long> coef(-bound, bound);
    for (;;) {
        int d = deg(rng);
        std::vector<Int> c(d + 1);
        for (auto& x : c) x = coef(rng);
        IntPolynomial p{std::move(c)};
        if (!p.is_zero()) return p;
    }
}

constexpr double kLehmerMeasure = 1.176280818;

}  // namespace

TEST_CASE("mahler_closed: powers of V evaluate to r^k") {
    Lemniscate lm = L("z^2-2", "1/2");
    CHECK(mahler_closed(P("z^2-2"), lm) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mahler_closed(P("z^2-2") * P("z^2-2"), lm) == doctest::Approx(0.25).epsilon(1e-12));
    IntPolynomial v3 = P("z^2-2").pow(3);
    CHECK(mahler_closed(v3, lm) == doctest::Approx(0.125).epsilon(1e-11));
}

TEST_CASE("mahler_closed: Lehmer polynomial on the unit circle") {
    double m = mahler_closed(P("z^10+z^9-z^7-z^6-z^5-z^4-z^3+z+1"), L("z", "1"));
    CHECK(m == doctest::Approx(kLehmerMeasure).epsilon(1e-6));
}

TEST_CASE("mahler_closed: P = z over |z^2-2| = 1/2") {
    CHECK(mahler_closed(P("z"), L("z^2-2", "1/2")) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("mahler_closed: constants and zero rejection") {
    CHECK(mahler_closed(P("-7"), L("z^2-2", "1/2")) == doctest::Approx(7.0).epsilon(1e-15));
    CHECK_THROWS_AS(mahler_closed(IntPolynomial(), L("z", "1")), InputError);
}

TEST_CASE("mahler_closed reduces to the classical Mahler measure on the circle") {
    std::mt19937_64 rng(79);
    Lemniscate circle = L("z", "1");
    int done = 0;
    while (done < 100) {
        IntPolynomial p = random_poly(rng, 6, 9);
        if (p.degree() < 1) continue;
        ++done;
        double viaL = mahler_closed(p, circle);
        RootSet rs = roots(ComplexPolynomial::from(p));
        double classical = std::fabs(to_double_nearest(p.lead()));
        // the oracle's own accuracy is capped by the certified root radii
        // (repeated factors land here as clusters)
        double oracle_rel = 1e-12;
        for (std::size_t i = 0; i < rs.size(); ++i) {
            classical *= std::max(1.0, std::abs(rs.roots[i]));
            oracle_rel += rs.radii[i] / std::max(1.0, std::abs(rs.roots[i]));
        }
        CHECK(std::fabs(viaL - classical) <= oracle_rel * classical);
    }
}

TEST_CASE("mahler_quadrature: examples and closed-form agreement") {
    CHECK(mahler_quadrature(P("1"), L("z^2-2", "1/2"), 64).value ==
          doctest::Approx(1.0).epsilon(1e-14));
    ValueWithError jensen = mahler_quadrature(P("z-2"), L("z", "1"), 1 << 10);
    CHECK(jensen.value == doctest::Approx(2.0).epsilon(1e-10));
    ValueWithError q = mahler_quadrature(P("z"), L("z^2-2", "1/2"), 1 << 10);
    CHECK(q.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
}

TEST_CASE("mahler_quadrature: refuses roots near the curve") {
    // P = z-1 has its root exactly on |z| = 1
    CHECK_THROWS_AS(mahler_quadrature(P("z-1"), L("z", "1"), 64), SingularIntegrandError);
    // root at 10000/10001, within the 1e-4 margin of the circle
    CHECK_THROWS_AS(mahler_quadrature(P("10001z-10000"), L("z", "1"), 16),
                    SingularIntegrandError);
}

TEST_CASE("lp_norm: examples") {
    Lemniscate circle = L("z", "1");
    for (double p : {0.5, 1.0, 2.0, 4.0})
        CHECK(lp_norm(P("z^3"), circle, p, 64).value == doctest::Approx(1.0).epsilon(1e-12));
    // || z+1 ||_2 = sqrt(2) on the circle
    CHECK(lp_norm(P("z+1"), circle, 2.0, 1 << 10).value ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    // || z+1 ||_1 = 4/pi
    CHECK(lp_norm(P("z+1"), circle, 1.0, 1 << 12).value ==
          doctest::Approx(4.0 / std::numbers::pi).epsilon(1e-6));
    // |V| is constant r on L
    CHECK(lp_norm(P("z^2-2"), L("z^2-2", "1/2"), 4.0, 64).value ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(lp_norm(P("z"), circle, 0.0, 64), InputError);
    CHECK_THROWS_AS(lp_norm(P("z"), circle, -1.0, 64), InputError);
}

TEST_CASE("sup_norm: examples") {
    CHECK(sup_norm(P("z+1"), L("z", "1"), 1 << 10) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(sup_norm(P("z^2-2").pow(2), L("z^2-2", "1/2"), 1 << 8) ==
          doctest::Approx(0.25).epsilon(1e-12));
    // farthest point of the Bernoulli lemniscate from the origin is sqrt(2)
    double bern = sup_norm(P("z"), L("z^2-1", "1"), 1 << 12);
    CHECK(bern == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    // dense-grid oracle: the refinement can only add to the grid maximum
    double coarse = sup_norm(P("z"), L("z^2-1", "1"), equilibrium_nodes(L("z^2-1", "1"), 1 << 14),
                             /*refine=*/false);
    CHECK(bern >= coarse - 1e-12);
}

TEST_CASE("resultant_bound: examples") {
    ResultantBound self = resultant_bound(P("z^2-2"), L("z^2-2", "1/2"));
    CHECK(self.res == 0);
    CHECK(self.bound == 0.0);
    CHECK(self.holds);

    ResultantBound eq = resultant_bound(P("z-2"), L("z", "1"));
    CHECK(eq.bound == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(eq.mahler == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(eq.holds);
    CHECK(std::fabs(eq.slack) <= 1e-9);

    ResultantBound bern = resultant_bound(P("z-2"), L("z^2-1", "1"));
    CHECK(bern.bound == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(bern.mahler == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(bern.holds);
}

TEST_CASE("subordination: z+1 over the circle with grid {1,2,4}") {
    SubordinationReport rep = subordination_check(P("z+1"), L("z", "1"), {1, 2, 4}, 1 << 12,
                                                  1 << 12);
    CHECK(rep.mahler == doctest::Approx(1.0).epsilon(1e-10));
    REQUIRE(rep.lp.size() == 3);
    CHECK(rep.lp[0].value == doctest::Approx(4.0 / std::numbers::pi).epsilon(1e-6));
    CHECK(rep.lp[1].value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
    CHECK(rep.sup == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(rep.chain_ok);
    CHECK(rep.monotone_ok);
}

TEST_CASE("subordination: degenerate equality chain for P = V") {
    SubordinationReport rep =
        subordination_check(P("z^2-2"), L("z^2-2", "1/2"), {0.5, 1, 2, 4, 8}, 256, 256);
    CHECK(rep.mahler == doctest::Approx(0.5).epsilon(1e-10));
    for (const auto& e : rep.lp) CHECK(e.value == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(rep.sup == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(rep.chain_ok);
    CHECK(rep.monotone_ok);
}

TEST_CASE("mahler_closed is multiplicative") {
    std::mt19937_64 rng(83);
    Lemniscate lm = L("z^2-3", "2/3");
    int done = 0;
    while (done < 200) {
        IntPolynomial a = random_poly(rng, 4, 9);
        IntPolynomial b = random_poly(rng, 4, 9);
        if (a.degree() < 1 || b.degree() < 1) continue;
        ++done;
        double lhs = mahler_closed(a * b, lm);
        double rhs = mahler_closed(a, lm) * mahler_closed(b, lm);
        CHECK(std::fabs(lhs - rhs) <= 1e-9 * rhs);
    }
}

TEST_CASE("closed form and quadrature agree away from the curve") {
    std::mt19937_64 rng(89);
    Lemniscate lm = L("z^2+z+1", "2/3");
    EquilibriumNodes nodes = equilibrium_nodes(lm, 1 << 12);
    int done = 0;
    while (done < 20) {
        IntPolynomial p = random_poly(rng, 5, 9);
        if (p.degree() < 1) continue;
        RootSet rs = roots(ComplexPolynomial::from(p));
        bool close = false;
        for (Cplx z : rs.roots)
            if (std::fabs(std::log(std::max(std::abs(lm.v().eval(z)), 1e-12) / lm.r())) < 0.1)
                close = true;
        if (close) continue;
        ++done;
        double closed = mahler_closed(p, lm);
        ValueWithError quad = mahler_quadrature(p, lm, nodes);
        CHECK(std::fabs(quad.value - closed) <= 1e-8 * closed);
    }
}

TEST_CASE("leading-coefficient lower bound holds") {
    std::mt19937_64 rng(97);
    Lemniscate lm = L("2z^2-1", "1/3");
    double ratio = lm.r() / lm.lead_abs();
    int done = 0;
    while (done < 100) {
        IntPolynomial p = random_poly(rng, 6, 9);
        if (p.degree() < 0) continue;
        ++done;
        double m = mahler_closed(p, lm);
        double lb = std::fabs(to_double_nearest(p.lead())) *
                    std::pow(ratio, static_cast<double>(p.degree()) / lm.m());
        CHECK(m >= lb * (1 - 1e-9));
    }
}

TEST_CASE("lp norms are nondecreasing in p") {
    std::mt19937_64 rng(101);
    Lemniscate lm = L("z^2-2", "1/2");
    EquilibriumNodes nodes = equilibrium_nodes(lm, 1 << 11);
    int done = 0;
    while (done < 25) {
        IntPolynomial p = random_poly(rng, 5, 9);
        if (p.degree() < 1) continue;
        ++done;
        double prev = 0;
        for (double pe : {0.5, 1.0, 2.0, 4.0, 8.0}) {
            ValueWithError v = lp_norm(p, lm, pe, nodes);
            CHECK(v.value >= prev - 1e-9 * std::max(1.0, prev) - v.error);
            prev = v.value;
        }
    }
}

TEST_CASE("measure report and JSON shape") {
    MeasureOptions opt;
    opt.n_nodes = 1 << 10;
    opt.n_theta = 1 << 10;
    HeightReport rep = measure(P("z"), L("z^2-2", "1/2"), opt);
    CHECK(rep.mahler == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    REQUIRE(rep.mahler_quad.has_value());
    CHECK(rep.mahler_quad->value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
    REQUIRE(rep.res_bound.has_value());
    CHECK(rep.res_bound->holds);
    std::string js = height_report_json(rep);
    CHECK(js.find("\"polynomial\": \"z\"") != std::string::npos);
    CHECK(js.find("\"r\": \"0.5\"") != std::string::npos);
    CHECK(js.find("\"mahler\"") != std::string::npos);
}

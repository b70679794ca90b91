#include <doctest.h>

#include "lemheights/numbertheory.hpp"

#include <cmath>
#include <random>

using namespace lemni;

namespace {

IntPolynomial P(const std::string& s) { return IntPolynomial::parse(s); }
Lemniscate L(const std::string& v, const std::string& r) {
    return Lemniscate(P(v), parse_rational(r));
}

IntPolynomial random_poly(std::mt19937_64& rng, int max_degree, long bound, int min_degree = 0) {
    std::uniform_int_distribution<int> deg(min_degree, max_degree);
    std::uniform_int_distribution<long> coef(-bound, bound);
    for (;;) {
        int d = deg(rng);
        std::vector<Int> c(d + 1);
        for (auto& x : c) x = coef(rng);
        IntPolynomial p{std::move(c)};
        if (!p.is_zero() && p.degree() >= min_degree) return p;
    }
}

constexpr double kLehmerMeasure = 1.176280818;

}  // namespace

TEST_CASE("companion polynomial: known values") {
    CHECK(companion_polynomial(P("z"), P("z^2-1")) == P("z+1"));       // w - V(0)
    CHECK(companion_polynomial(P("z^2-2"), P("z^2-1")) == P("z^2-2z+1"));  // (w-1)^2
    CHECK(companion_polynomial(P("z-3"), P("z^2-1")) == P("z-8"));     // w - V(3)
}

TEST_CASE("companion polynomial: integer coefficients match the root product") {
    std::mt19937_64 rng(103);
    int done = 0;
    while (done < 100) {
        IntPolynomial p = random_poly(rng, 4, 5, 1);
        IntPolynomial v = random_poly(rng, 3, 5, 1);
        ++done;
        IntPolynomial q = companion_polynomial(p, v);  // integrality asserted inside
        CHECK(q.degree() == p.degree());

        // floating oracle: lead(P)^deg(V) prod (w - V(alpha_k)) coefficient-wise
        RootSet rs = roots(ComplexPolynomial::from(p));
        ComplexPolynomial vc = ComplexPolynomial::from(v);
        std::vector<Cplx> c{Cplx(1, 0)};
        for (Cplx a : rs.roots) {
            c.push_back(Cplx(0));
            for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k)
                c[k] -= vc.eval(a) * c[k - 1];
        }
        double lead_pow = std::pow(std::fabs(to_double_nearest(p.lead())), v.degree());
        double sign = to_double_nearest(p.lead()) < 0 && v.degree() % 2 == 1 ? -1.0 : 1.0;
        double scale = 0;
        for (const Cplx& x : c) scale = std::max(scale, std::abs(x) * lead_pow);
        for (int k = 0; k <= q.degree(); ++k) {
            double expect = sign * lead_pow * c[q.degree() - k].real();
            CHECK(std::fabs(to_double_nearest(q.coeff(k)) - expect) <=
                  1e-6 * std::max(1.0, scale));
        }
    }
}

TEST_CASE("kronecker_classify: examples over the Bernoulli lemniscate") {
    Lemniscate lm = L("z^2-1", "1");

    KroneckerVerdict a = kronecker_classify(P("z"), lm);
    CHECK(a.kind == KroneckerKind::CyclotomicLift);
    CHECK(a.cyclotomic_index == 2);
    CHECK(*a.witness == P("z"));  // Phi_2 o V = z^2 = z * z

    KroneckerVerdict b = kronecker_classify(P("z^2-2"), lm);
    CHECK(b.kind == KroneckerKind::CyclotomicLift);
    CHECK(b.cyclotomic_index == 1);
    CHECK(*b.witness == P("1"));  // Phi_1 o V = z^2-2 = P

    KroneckerVerdict c = kronecker_classify(P("z-3"), lm);
    CHECK(c.kind == KroneckerKind::NotUnitHeight);
    CHECK(c.mahler == doctest::Approx(std::sqrt(8.0)).epsilon(1e-9));
}

TEST_CASE("kronecker_classify: DividesV case and hypothesis checks") {
    KroneckerVerdict v = kronecker_classify(P("z-1"), L("z^2-z", "1"));
    CHECK(v.kind == KroneckerKind::DividesV);
    CHECK(*v.witness == P("z"));

    CHECK_THROWS_AS(kronecker_classify(P("z^2-1"), L("z^2-1", "1")), HypothesisError);  // reducible
    CHECK_THROWS_AS(kronecker_classify(P("2z-1"), L("z^2-1", "1")), HypothesisError);   // not monic
    CHECK_THROWS_AS(kronecker_classify(P("z"), L("z^2-1", "1/2")), HypothesisError);    // r != 1
    CHECK_THROWS_AS(kronecker_classify(P("z"), L("2z^2-1", "1")), HypothesisError);     // |a_m| != 1
}

TEST_CASE("kronecker_classify: negated-lead V is normalized") {
    KroneckerVerdict v = kronecker_classify(P("z"), L("-z^2+1", "1"));
    CHECK(v.kind == KroneckerKind::CyclotomicLift);
    CHECK(v.cyclotomic_index == 2);
    CHECK(!v.notes.empty());
}

TEST_CASE("unit-height equivalence on a small box") {
    // over |z^2-1| = 1: measure 1 within 1e-9 iff the classification finds a divisor
    Lemniscate lm = L("z^2-1", "1");
    for (long c0 = -2; c0 <= 2; ++c0)
        for (long c1 = -2; c1 <= 2; ++c1)
            for (long c2 = -2; c2 <= 2; ++c2)
                for (long c3 = -2; c3 <= 2; ++c3) {
                    IntPolynomial p{std::vector<Int>{Int(c0), Int(c1), Int(c2), Int(c3), Int(1)}};
                    if (!is_irreducible(p)) continue;
                    double m = mahler_closed(p, lm);
                    KroneckerVerdict v = kronecker_classify(p, lm);
                    if (m <= 1 + 1e-9) {
                        CHECK(v.kind != KroneckerKind::NotUnitHeight);
                        REQUIRE(v.witness.has_value());
                        if (v.kind == KroneckerKind::CyclotomicLift)
                            CHECK(compose(cyclotomic(*v.cyclotomic_index), P("z^2-1")) ==
                                  *v.witness * p);
                        else
                            CHECK(*v.witness * p == P("z^2-1"));
                    } else {
                        CHECK(v.kind == KroneckerKind::NotUnitHeight);
                        CHECK(v.mahler > 1 + 1e-9);
                    }
                }
}

TEST_CASE("enumerate_conjugate_sets: Bernoulli lemniscate") {
    ConjugateSetReport rep = enumerate_conjugate_sets(L("z^2-1", "1"), 4, 8);
    bool saw_sqrt2 = false, saw_zero = false, saw_interior_zm1 = false;
    for (const auto& s : rep.sets) {
        if (s.minimal_polynomial == P("z^2-2")) {
            saw_sqrt2 = true;
            CHECK(s.cyclotomic_index == 1);
            CHECK(!s.interior);
        }
        if (s.minimal_polynomial == P("z")) {
            saw_zero = true;
            CHECK(s.cyclotomic_index == 2);
            CHECK(!s.interior);
            REQUIRE(s.roots.size() == 1);
            CHECK(std::abs(s.roots.roots[0]) < 1e-12);
        }
        if (s.minimal_polynomial == P("z-1")) {
            saw_interior_zm1 = true;
            CHECK(s.interior);
        }
        if (!s.interior)
            for (Cplx z : s.roots.roots)
                CHECK(classify(L("z^2-1", "1"), z, 1e-9) == Region::OnCurve);
    }
    CHECK(saw_sqrt2);
    CHECK(saw_zero);
    CHECK(saw_interior_zm1);
}

TEST_CASE("enumerate_conjugate_sets: circle reduces to roots of unity") {
    ConjugateSetReport rep = enumerate_conjugate_sets(L("z", "1"), 4, 8);
    bool saw[5] = {};
    for (const auto& s : rep.sets) {
        if (s.interior) {
            CHECK(s.minimal_polynomial == P("z"));
            saw[0] = true;
        } else {
            REQUIRE(s.cyclotomic_index >= 1);
            REQUIRE(s.cyclotomic_index <= 4);
            CHECK(s.minimal_polynomial == cyclotomic(s.cyclotomic_index));
            saw[s.cyclotomic_index] = true;
        }
    }
    for (bool b : saw) CHECK(b);
}

TEST_CASE("no_sets_below_one: exhaustive scans find nothing") {
    EmptinessReport a = no_sets_below_one(L("z^2-2", "1/2"), 4, 3);
    CHECK(a.hits == 0);
    CHECK(a.scanned == 9 + 81 + 729);
    CHECK(a.closest_near_miss > 1e-6 * 0.5);

    EmptinessReport b = no_sets_below_one(L("z", "1/2"), 3, 2);
    CHECK(b.hits == 0);
    CHECK(b.scanned == 7 + 49);

    EmptinessReport c = no_sets_below_one(L("z^2-2", "1/2"), 4, 0);
    CHECK(c.scanned == 0);
    CHECK(c.hits == 0);

    CHECK_THROWS_AS(no_sets_below_one(L("z^2-2", "1"), 4, 3), HypothesisError);
    CHECK_THROWS_AS(no_sets_below_one(L("z^2-2", "1/2"), 9, 8, 100), ResourceError);
}

TEST_CASE("lift_measure_identity: examples") {
    LiftReport a = lift_measure_identity(P("z-2"), L("z^2-1", "1"));
    CHECK(a.m_of_q == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(a.m_l_of_composition == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(a.relative_gap <= 1e-8);
    CHECK(a.composition == P("z^2-3"));

    LiftReport b = lift_measure_identity(P("z^10+z^9-z^7-z^6-z^5-z^4-z^3+z+1"), L("z^2-1", "1"));
    CHECK(b.m_of_q == doctest::Approx(kLehmerMeasure).epsilon(1e-6));
    CHECK(b.m_l_of_composition == doctest::Approx(kLehmerMeasure).epsilon(1e-6));
    CHECK(b.relative_gap <= 1e-8);

    LiftReport c = lift_measure_identity(P("z"), L("z^2-1", "1"));
    CHECK(c.m_of_q == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.m_l_of_composition == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("lift identity holds on random pairs") {
    std::mt19937_64 rng(107);
    int done = 0;
    while (done < 200) {
        IntPolynomial q = random_poly(rng, 5, 4, 1);
        // random monic V of degree 1..3
        int d = 1 + static_cast<int>(rng() % 3);
        std::vector<Int> vc(d + 1);
        std::uniform_int_distribution<long> coef(-3, 3);
        for (int i = 0; i < d; ++i) vc[i] = coef(rng);
        vc[d] = 1;
        Lemniscate lm(IntPolynomial{std::move(vc)}, Rat(1));
        ++done;
        LiftReport rep = lift_measure_identity(q, lm);
        CHECK(rep.relative_gap <= 1e-8);
    }
}

TEST_CASE("generalized measure of integer polynomials is at least 1 at r = 1") {
    Lemniscate lm = L("z^2-1", "1");
    for (long c0 = -1; c0 <= 1; ++c0)
        for (long c1 = -1; c1 <= 1; ++c1)
            for (long c2 = -1; c2 <= 1; ++c2)
                for (long c3 = -1; c3 <= 1; ++c3) {
                    IntPolynomial p{std::vector<Int>{Int(c0), Int(c1), Int(c2), Int(c3)}};
                    if (p.is_zero()) continue;
                    CHECK(mahler_closed(p, lm) >= 1 - 1e-9);
                }
}

TEST_CASE("lehmer_scan: threshold semantics with a large gap") {
    LehmerScanReport rep = lehmer_scan(L("z", "1"), 2, 1, 0.5);
    REQUIRE(rep.smallest_above_one.has_value());
    CHECK(*rep.smallest_above_one > 1.5);
    // the golden ratio is the smallest degree-2 measure above 1.5 in this box
    CHECK(*rep.smallest_above_one ==
          doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-9));
}

TEST_CASE("lehmer_scan: the degree-10 unit box attains the classical minimum") {
    LehmerScanReport rep = lehmer_scan(L("z", "1"), 10, 1, 1e-6, 100'000'000, 4);
    REQUIRE(rep.smallest_above_one.has_value());
    CHECK(*rep.smallest_above_one == doctest::Approx(kLehmerMeasure).epsilon(1e-6));
    // the witness is the lex-least of the two sign-equivalent minimizers,
    // P(z) and P(-z) sharing the same measure
    REQUIRE(rep.witness.has_value());
    IntPolynomial lehmer = P("z^10+z^9-z^7-z^6-z^5-z^4-z^3+z+1");
    IntPolynomial mirrored = P("z^10-z^9+z^7-z^6+z^5-z^4+z^3-z+1");
    CHECK((*rep.witness == lehmer || *rep.witness == mirrored));
    CHECK(rep.scanned == 88573);
}

TEST_CASE("lehmer_scan: sandwich consistency for V = z^2-1") {
    LehmerScanReport rep = lehmer_scan(L("z^2-1", "1"), 4, 1, 1e-6);
    REQUIRE(rep.smallest_above_one.has_value());
    REQUIRE(rep.circle_minimum.has_value());
    CHECK(rep.lower_ok);
    CHECK(rep.lift_ok);
    CHECK(rep.sandwich_low ==
          doctest::Approx(std::sqrt(*rep.circle_minimum)).epsilon(1e-12));
    CHECK(*rep.smallest_above_one >= rep.sandwich_low - 1e-9);
    CHECK_THROWS_AS(lehmer_scan(L("z^2-1", "1"), 20, 9, 1e-6, 1000), ResourceError);
}

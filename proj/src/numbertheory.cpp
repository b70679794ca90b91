#include "lemheights/numbertheory.hpp"

#include "lemheights/enumerate.hpp"
#include "lemheights/exact.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <map>

namespace lemni {

namespace {

// Unit-radius lemniscate with monic integer V; a lead of -1 is normalized to
// monic by negation (same curve, |{-V}| = |V|).
IntPolynomial monic_v(const Lemniscate& lm, std::vector<std::string>* notes = nullptr) {
    const IntPolynomial& v = lm.v_int();
    if (v.lead() == 1) return v;
    if (v.lead() == -1) {
        if (notes) notes->push_back("V had leading coefficient -1; negated to monic");
        return -v;
    }
    throw HypothesisError("V must be monic (leading coefficient 1 or -1)",
                          "lead=" + v.lead().get_str());
}

void require_unit_radius(const Lemniscate& lm) {
    if (lm.r_exact() != 1) throw HypothesisError("operation requires r = 1 exactly");
}

Lemniscate unit_circle() { return Lemniscate(IntPolynomial::monomial(1), Rat(1)); }

}  // namespace

IntPolynomial companion_polynomial(const IntPolynomial& p, const IntPolynomial& v) {
    if (p.is_zero() || v.is_zero()) throw InputError("companion requires nonzero polynomials");
    const int n = p.degree();
    if (n < 1) throw InputError("companion requires deg(P) >= 1");
    if (v.degree() < 1) throw InputError("companion requires deg(V) >= 1");

    // Values Q(t) = Res_z(P(z), t - V(z)) at t = 0..n are exact integers;
    // interpolate and the coefficients come out integral.
    std::vector<Rat> xs(n + 1), ys(n + 1);
    for (int t = 0; t <= n; ++t) {
        IntPolynomial shifted = IntPolynomial::constant(t) - v;
        xs[t] = t;
        ys[t] = Rat(resultant(p, shifted));
    }

    // Newton divided differences over exact rationals.
    std::vector<Rat> dd = ys;
    for (int level = 1; level <= n; ++level)
        for (int i = n; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);

    std::vector<Rat> coeffs(n + 1, Rat(0));
    std::vector<Rat> basis(n + 1, Rat(0));  // prod_{i<k}(w - x_i), expanded
    basis[0] = 1;
    int basis_deg = 0;
    for (int k = 0; k <= n; ++k) {
        for (int i = 0; i <= basis_deg; ++i) coeffs[i] += dd[k] * basis[i];
        if (k < n) {
            for (int i = basis_deg + 1; i > 0; --i)
                basis[i] = basis[i - 1] - xs[k] * basis[i];
            basis[0] = -xs[k] * basis[0];
            ++basis_deg;
        }
    }

    std::vector<Int> out(n + 1);
    for (int i = 0; i <= n; ++i) {
        Rat c = coeffs[i];
        c.canonicalize();
        if (c.get_den() != 1)
            throw Error(ErrorKind::Limit,
                        "companion interpolation produced a non-integer coefficient (internal)");
        out[i] = c.get_num();
    }
    return IntPolynomial(std::move(out));
}

KroneckerVerdict kronecker_classify(const IntPolynomial& p, const Lemniscate& lm,
                                    long max_index) {
    KroneckerVerdict verdict;
    require_unit_radius(lm);
    IntPolynomial v = monic_v(lm, &verdict.notes);
    if (p.is_zero() || !p.is_monic()) throw HypothesisError("P must be monic");
    if (p.degree() < 1) throw HypothesisError("P must be nonconstant");
    if (!is_irreducible(p)) throw HypothesisError("P must be irreducible over Z");

    verdict.mahler = mahler_closed(p, lm);
    if (verdict.mahler > 1 + 1e-9) {
        verdict.kind = KroneckerKind::NotUnitHeight;
        return verdict;
    }

    verdict.companion = companion_polynomial(p, v);
    if (verdict.companion.coeff(0) == 0) {
        auto quotient = divide_exact(v, p);
        if (!quotient)
            throw Error(ErrorKind::Limit,
                        "companion has root 0 but P does not divide V (numerical contradiction)");
        verdict.kind = KroneckerKind::DividesV;
        verdict.witness = std::move(*quotient);
        return verdict;
    }

    const int n = verdict.companion.degree();
    for (long j = 1; j <= max_index; ++j) {
        if (totient(j) > n) continue;
        IntPolynomial phi = cyclotomic(j);
        if (!divide_exact(verdict.companion, phi)) continue;
        auto witness = divide_exact(compose(phi, v), p);
        if (!witness)
            throw Error(ErrorKind::Limit,
                        "Phi_j divides the companion but P does not divide Phi_j o V "
                        "(numerical contradiction)");
        verdict.kind = KroneckerKind::CyclotomicLift;
        verdict.cyclotomic_index = j;
        verdict.witness = std::move(*witness);
        return verdict;
    }
    throw ResourceError(
        "no cyclotomic divisor of the companion found up to max_index; either raise "
        "max_index or the unit-height determination is numerically marginal",
        "max_index=" + std::to_string(max_index));
}

ConjugateSetReport enumerate_conjugate_sets(const Lemniscate& lm, long max_index,
                                            int max_degree) {
    ConjugateSetReport report;
    report.max_index = max_index;
    require_unit_radius(lm);
    IntPolynomial v = monic_v(lm, &report.warnings);

    std::map<IntPolynomial, bool> seen;

    // Interior sets: complete conjugate sets strictly inside E are the roots
    // of the irreducible divisors of V.
    for (const auto& [f, mult] : factor(v).factors) {
        (void)mult;
        if (f.degree() > max_degree || f.degree() < 1) continue;
        if (seen.count(f)) continue;
        seen[f] = true;
        ConjugateSet set;
        set.minimal_polynomial = f;
        set.roots = roots(ComplexPolynomial::from(f));
        set.cyclotomic_index = 0;
        set.interior = true;
        report.sets.push_back(std::move(set));
    }

    for (long j = 1; j <= max_index; ++j) {
        IntPolynomial comp = compose(cyclotomic(j), v);
        Factorization fac = factor(comp);
        for (const auto& [f, mult] : fac.factors) {
            (void)mult;
            if (f.degree() > max_degree || f.degree() < 1) continue;
            if (seen.count(f)) continue;
            seen[f] = true;
            ConjugateSet set;
            set.minimal_polynomial = f;
            set.roots = roots(ComplexPolynomial::from(f));
            bool all_on_curve = true;
            for (Cplx z : set.roots.roots)
                if (classify(lm, z, 1e-9) != Region::OnCurve) all_on_curve = false;
            if (!all_on_curve) {
                report.warnings.push_back("factor " + f.str() + " of Phi_" + std::to_string(j) +
                                          " o V has a root off-curve beyond 1e-9; skipped");
                continue;
            }
            set.cyclotomic_index = j;
            set.interior = false;
            report.sets.push_back(std::move(set));
        }
    }
    return report;
}

EmptinessReport no_sets_below_one(const Lemniscate& lm, long coeff_bound, int max_degree,
                                  long long cap, int threads, const ScanProgress& progress) {
    if (!(lm.r_exact() > 0) || lm.r_exact() >= 1)
        throw HypothesisError("emptiness scan requires 0 < r < 1 exactly");
    monic_v(lm);  // validates monicity

    EmptinessReport report;
    report.closest_near_miss = std::numeric_limits<double>::infinity();
    if (max_degree < 1 || coeff_bound < 0) return report;  // no candidates

    CoeffBox box(1, max_degree, coeff_bound, /*monic=*/true);
    long long total = box.count();
    if (total < 0 || total > cap)
        throw ResourceError("candidate box exceeds the scan cap",
                            "count=" + std::to_string(total) + " cap=" + std::to_string(cap));

    const double r = lm.r();
    const double tol = 1e-6;
    const int n_shards = std::max(1, threads);

    auto run_shard = [&](int shard) {
        EmptinessReport local;
        local.closest_near_miss = std::numeric_limits<double>::infinity();
        box.for_each_shard(shard, n_shards, [&](const IntPolynomial& p) {
            ++local.scanned;
            RootSet rs = roots(ComplexPolynomial::from(p));
            double metric = 0;
            for (Cplx z : rs.roots)
                metric = std::max(metric, std::fabs(std::abs(lm.v().eval(z)) - r));
            if (metric <= tol * r) {
                ++local.hits;
                local.hit_witnesses.push_back(p);
            }
            if (metric < local.closest_near_miss ||
                (metric == local.closest_near_miss && local.near_miss_witness &&
                 p < *local.near_miss_witness)) {
                local.closest_near_miss = metric;
                local.near_miss_witness = p;
            }
            if (progress && local.scanned % 1024 == 0)
                progress(shard, local.scanned, local.closest_near_miss);
        });
        return local;
    };

    std::vector<EmptinessReport> locals;
    if (n_shards == 1) {
        locals.push_back(run_shard(0));
    } else {
        std::vector<std::future<EmptinessReport>> futs;
        for (int s = 0; s < n_shards; ++s)
            futs.push_back(std::async(std::launch::async, run_shard, s));
        for (auto& f : futs) locals.push_back(f.get());
    }
    for (const auto& local : locals) {
        report.scanned += local.scanned;
        report.hits += local.hits;
        for (const auto& w : local.hit_witnesses) report.hit_witnesses.push_back(w);
        bool better = local.closest_near_miss < report.closest_near_miss;
        bool tie = local.closest_near_miss == report.closest_near_miss &&
                   local.near_miss_witness && report.near_miss_witness &&
                   *local.near_miss_witness < *report.near_miss_witness;
        if (better || tie) {
            report.closest_near_miss = local.closest_near_miss;
            report.near_miss_witness = local.near_miss_witness;
        }
    }
    std::sort(report.hit_witnesses.begin(), report.hit_witnesses.end());
    return report;
}

LiftReport lift_measure_identity(const IntPolynomial& q, const Lemniscate& lm) {
    if (q.is_zero()) throw InputError("lift identity rejects the zero polynomial");
    require_unit_radius(lm);
    IntPolynomial v = monic_v(lm);

    LiftReport report;
    report.m_of_q = mahler_closed(q, unit_circle());
    report.composition = compose(q, v);
    report.m_l_of_composition = mahler_closed(report.composition, lm);
    report.relative_gap =
        std::fabs(report.m_l_of_composition - report.m_of_q) / std::max(report.m_of_q, 1e-300);
    return report;
}

namespace {

struct ScanOutcome {
    std::optional<double> min;
    std::optional<IntPolynomial> witness;
    long long scanned = 0;
};

ScanOutcome scan_min_above(const Lemniscate& lm, int max_degree, long coeff_bound, double gap,
                           long long cap, int threads, const ScanProgress& progress) {
    CoeffBox box(0, max_degree, coeff_bound, /*monic=*/false);
    long long total = box.count();
    if (total < 0 || total > cap)
        throw ResourceError("candidate box exceeds the scan cap",
                            "count=" + std::to_string(total) + " cap=" + std::to_string(cap));
    const int n_shards = std::max(1, threads);

    auto run_shard = [&](int shard) {
        ScanOutcome out;
        box.for_each_shard(shard, n_shards, [&](const IntPolynomial& p) {
            ++out.scanned;
            if (progress && out.scanned % 1024 == 0) progress(shard, out.scanned, out.min);
            // A lead of absolute value >= 2 forces M_L >= 2 over a monic unit
            // lemniscate; skip root finding when it cannot improve the minimum.
            if (out.min && p.lead() >= 2 && *out.min <= mpz_get_d(p.lead().get_mpz_t())) return;
            double m = mahler_closed(p, lm);
            if (m <= 1 + gap) return;
            if (!out.min || m < *out.min - 1e-15 ||
                (m < *out.min + 1e-15 && out.witness && p < *out.witness)) {
                out.min = m;
                out.witness = p;
            }
        });
        return out;
    };

    std::vector<ScanOutcome> locals;
    if (n_shards == 1) {
        locals.push_back(run_shard(0));
    } else {
        std::vector<std::future<ScanOutcome>> futs;
        for (int s = 0; s < n_shards; ++s)
            futs.push_back(std::async(std::launch::async, run_shard, s));
        for (auto& f : futs) locals.push_back(f.get());
    }
    ScanOutcome merged;
    for (const auto& local : locals) {
        merged.scanned += local.scanned;
        if (!local.min) continue;
        bool better = !merged.min || *local.min < *merged.min - 1e-15;
        bool tie = merged.min && std::fabs(*local.min - *merged.min) <= 1e-15 &&
                   local.witness && merged.witness && *local.witness < *merged.witness;
        if (better || tie) {
            merged.min = local.min;
            merged.witness = local.witness;
        }
    }
    return merged;
}

}  // namespace

LehmerScanReport lehmer_scan(const Lemniscate& lm, int max_degree, long coeff_bound,
                             double gap, long long cap, int threads,
                             const ScanProgress& progress) {
    require_unit_radius(lm);
    IntPolynomial v = monic_v(lm);

    LehmerScanReport report;
    ScanOutcome main = scan_min_above(lm, max_degree, coeff_bound, gap, cap, threads, progress);
    report.scanned = main.scanned;
    report.smallest_above_one = main.min;
    report.witness = main.witness;

    const bool is_circle = (v == IntPolynomial::monomial(1));
    ScanOutcome circle = is_circle ? main
                                   : scan_min_above(unit_circle(), max_degree, coeff_bound, gap,
                                                    cap, threads, {});
    report.circle_minimum = circle.min;
    report.circle_witness = circle.witness;

    if (circle.min) {
        report.sandwich_high = *circle.min;
        report.sandwich_low = std::pow(*circle.min, 1.0 / lm.m());
        if (circle.witness) {
            LiftReport lift = lift_measure_identity(*circle.witness, lm);
            report.lift_value = lift.m_l_of_composition;
            report.lift_ok = *report.lift_value <= *circle.min + 1e-9;
        }
        if (main.min) report.lower_ok = *main.min >= report.sandwich_low - 1e-9;
    }
    return report;
}

}  // namespace lemni

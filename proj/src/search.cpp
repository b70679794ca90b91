#include "lemheights/search.hpp"

#include "lemheights/enumerate.hpp"
#include "lemheights/exact.hpp"
#include "lemheights/numbertheory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <set>

namespace lemni {

HeightSelector HeightSelector::parse(const std::string& text) {
    if (text == "0") return geometric();
    if (text == "inf" || text == "infinity" || text == "oo") return sup();
    try {
        double p = std::stod(text);
        if (!(p > 0) || !std::isfinite(p)) throw InputError("height selector must satisfy 0 <= p <= inf");
        return lp(p);
    } catch (const std::invalid_argument&) {
        throw InputError("unrecognized height selector '" + text + "'");
    }
}

std::string HeightSelector::str() const {
    switch (kind) {
        case Kind::GeometricMean: return "0";
        case Kind::Sup: return "inf";
        case Kind::Lp: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%g", p);
            return buf;
        }
    }
    return "?";
}

std::string theorem_case_str(TheoremCase c) {
    switch (c) {
        case TheoremCase::MinHi: return "min-height(i)";
        case TheoremCase::MinHii: return "min-height(ii)";
        case TheoremCase::MinHiii: return "min-height(iii)";
        case TheoremCase::Llarge: return "large-radius";
        case TheoremCase::None: return "exploratory";
    }
    return "?";
}

namespace {

IntPolynomial canon(const IntPolynomial& p) {
    if (p.is_zero() || p.lead() > 0) return p;
    return -p;
}

struct Candidate {
    double value;
    IntPolynomial poly;
};

struct ShardResult {
    std::vector<Candidate> near_min;  // within the tie window of the shard minimum
    double min_value = std::numeric_limits<double>::infinity();
    long long scanned = 0;
    long long pruned = 0;
    long long reslem_checked = 0;
};

double tie_window(double v) { return 1e-9 * std::max(1.0, std::fabs(v)) + 1e-15; }

// Sup scans keep a wider near-minimum set: the coarse grid undershoots, and
// near-floor candidates are re-verified on the fine grid before argmins are
// declared.
double keep_window(double v, bool sup_scan) {
    return tie_window(v) + (sup_scan ? 1e-6 * std::max(1.0, std::fabs(v)) : 0.0);
}

TheoremCase determine_case(const Lemniscate& lm, std::vector<std::string>& notes) {
    if (!lm.has_int_v()) {
        // complex V: only the analytic large-radius case applies
        if (lm.r() >= lm.lead_abs()) return TheoremCase::Llarge;
        notes.push_back("complex-coefficient V outside the large-radius regime; exploratory scan");
        return TheoremCase::None;
    }
    const IntPolynomial& v = lm.v_int();
    Int a = abs(v.lead());
    Rat ra = lm.r_exact() * Rat(a);
    if (ra <= 1) {
        if (is_irreducible(v)) {
            if (ra < 1) return TheoremCase::MinHi;
            return lm.r_exact() < 1 ? TheoremCase::MinHii : TheoremCase::MinHiii;
        }
        notes.push_back("V reducible: minimal-height hypotheses do not apply");
    }
    if (lm.r_exact() >= Rat(a)) return TheoremCase::Llarge;
    notes.push_back("parameters fall in the open region (r|a_m| > 1 > r/|a_m|); exploratory scan");
    return TheoremCase::None;
}

}  // namespace

SearchResult min_height_search(const SearchSpec& spec) {
    const Lemniscate& lm = spec.lemniscate;
    SearchResult result;
    result.the_case = determine_case(lm, result.notes);

    const int m = lm.m();
    const int max_degree = spec.k * m;
    if (spec.k < 1) throw InputError("k must be >= 1");
    if (spec.coeff_bound < 1) throw InputError("coeff_bound must be >= 1");

    switch (result.the_case) {
        case TheoremCase::MinHi:
        case TheoremCase::MinHii:
        case TheoremCase::MinHiii: {
            Rat floor = 1;
            for (int i = 0; i < spec.k; ++i) floor *= lm.r_exact();
            result.floor_value = floor.get_d();
            break;
        }
        case TheoremCase::Llarge:
            result.floor_value = 1.0;
            break;
        case TheoremCase::None:
            break;
    }

    CoeffBox box(0, max_degree, spec.coeff_bound, /*monic=*/false);
    long long total = box.count();
    if (total < 0 || total > spec.cap)
        throw ResourceError("candidate box exceeds the scan cap",
                            "count=" + std::to_string(total) + " cap=" + std::to_string(spec.cap));

    const bool finite_p = spec.height.kind == HeightSelector::Kind::Lp;
    const bool sup_p = spec.height.kind == HeightSelector::Kind::Sup;
    EquilibriumNodes nodes;
    if (finite_p) nodes = equilibrium_nodes(lm, spec.n_nodes);
    if (sup_p) nodes = equilibrium_nodes(lm, spec.n_theta);

    const double cap_ratio = lm.r() / lm.lead_abs();
    const bool int_v = lm.has_int_v();
    const double log_lead = std::log(lm.lead_abs());

    auto run_shard = [&](long long shard, long long n_shards) {
        ShardResult sr;
        box.for_each_shard(shard, n_shards, [&](const IntPolynomial& p) {
            ++sr.scanned;
            const int n = p.degree();
            double lead_abs = std::fabs(to_double_nearest(p.lead()));

            // Cheap bound: M_L(P) >= |c_n| (r/|a_m|)^{n/m} <= every height.
            double gm_lb = lead_abs * std::pow(cap_ratio, static_cast<double>(n) / m);
            if (gm_lb > sr.min_value + keep_window(sr.min_value, sup_p)) {
                ++sr.pruned;
                return;
            }

            // Exact resultant bound: nonzero Res forces
            // M_L(P) >= |a_m|^{-n/m} |Res|^{1/m}.
            bool have_res = false;
            bool res_zero = false;
            double res_log_bound = 0;
            if (spec.prune && int_v && n >= 1) {
                Int res = resultant(p, lm.v_int());
                have_res = true;
                res_zero = res == 0;
                if (!res_zero) {
                    res_log_bound = log_abs(res);
                    double rb = std::exp((res_log_bound - n * log_lead) / m);
                    if (rb > sr.min_value + keep_window(sr.min_value, sup_p)) {
                        ++sr.pruned;
                        return;
                    }
                }
            }

            double value = 0;
            switch (spec.height.kind) {
                case HeightSelector::Kind::GeometricMean:
                    value = mahler_closed(p, lm);
                    break;
                case HeightSelector::Kind::Lp:
                    value = lp_norm(p, lm, spec.height.p, nodes).value;
                    break;
                case HeightSelector::Kind::Sup:
                    value = sup_norm(p, lm, nodes, /*refine=*/false);
                    break;
            }

            if (spec.height.kind == HeightSelector::Kind::GeometricMean && have_res && n >= 1 &&
                !res_zero) {
                // Resultant cutoff soundness: nonzero Res forces
                // M_L >= |a_m|^{-n/m} |Res|^{1/m} >= |a_m|^{-n/m}, up to the
                // root-cluster error in the computed measure.
                ++sr.reslem_checked;
                double rb = std::exp((res_log_bound - n * log_lead) / m);
                if (value < rb * (1 - 1e-6) - 1e-12)
                    throw Error(ErrorKind::Limit,
                                "resultant cutoff violated: computed measure below the exact "
                                "resultant bound (numerical inconsistency)",
                                p.str());
            }

            if (value < sr.min_value) {
                sr.min_value = value;
                double keep = sr.min_value + keep_window(sr.min_value, sup_p);
                std::erase_if(sr.near_min, [&](const Candidate& c) { return c.value > keep; });
            }
            if (value <= sr.min_value + keep_window(sr.min_value, sup_p))
                sr.near_min.push_back({value, p});
        });
        return sr;
    };

    std::vector<ShardResult> shards;
    int n_shards = std::max(1, spec.threads);
    if (n_shards == 1) {
        shards.push_back(run_shard(0, 1));
    } else {
        std::vector<std::future<ShardResult>> futs;
        for (int s = 0; s < n_shards; ++s)
            futs.push_back(std::async(std::launch::async, run_shard, s, n_shards));
        for (auto& f : futs) shards.push_back(f.get());
    }

    double min_value = std::numeric_limits<double>::infinity();
    for (const auto& sr : shards) {
        min_value = std::min(min_value, sr.min_value);
        result.scanned += sr.scanned;
        result.pruned += sr.pruned;
        result.reslem_checked += sr.reslem_checked;
    }
    std::vector<Candidate> finalists;
    for (const auto& sr : shards)
        for (const auto& c : sr.near_min)
            if (c.value <= min_value + keep_window(min_value, sup_p)) finalists.push_back(c);

    // Two-tier sup verification: every retained near-floor candidate is
    // re-evaluated on the fine grid with golden-section refinement before
    // argmins are declared.
    if (sup_p && !finalists.empty()) {
        EquilibriumNodes fine = equilibrium_nodes(lm, 1 << 14);
        min_value = std::numeric_limits<double>::infinity();
        for (auto& c : finalists) {
            c.value = sup_norm(c.poly, lm, fine, /*refine=*/true);
            min_value = std::min(min_value, c.value);
        }
    }

    result.min_value = min_value;
    std::set<IntPolynomial> argset;
    for (const auto& c : finalists)
        if (c.value <= min_value + tie_window(min_value)) argset.insert(canon(c.poly));
    result.argmins.assign(argset.begin(), argset.end());

    if (result.floor_value) {
        double floor = *result.floor_value;
        if (min_value < floor - 1e-9 * std::max(1.0, floor))
            throw Error(ErrorKind::Limit,
                        "scan found a height below the theoretical floor (numerical "
                        "inconsistency)",
                        "min=" + real_str(min_value) + " floor=" + real_str(floor));
        result.matches_theorem = min_value <= floor + 1e-9 * std::max(1.0, floor);
    }
    return result;
}

UniquenessReport verify_uniqueness(const SearchSpec& spec) {
    UniquenessReport rep;
    rep.result = min_height_search(spec);
    const Lemniscate& lm = spec.lemniscate;
    const bool p_zero = spec.height.kind == HeightSelector::Kind::GeometricMean;

    switch (rep.result.the_case) {
        case TheoremCase::None:
            throw HypothesisError(
                "uniqueness verification requires the minimal-height or large-radius "
                "hypotheses",
                lm.str());
        case TheoremCase::MinHi:
            rep.predicted = {canon(lm.v_int().pow(spec.k))};
            break;
        case TheoremCase::MinHii:
            rep.predicted = {canon(lm.v_int().pow(spec.k))};
            if (p_zero)
                rep.notes.push_back(
                    "p = 0 at r = 1/|a_m| < 1: uniqueness asserted only for p > 0; extra "
                    "geometric-mean minimizers are reported, not failures");
            break;
        case TheoremCase::MinHiii:
            rep.predicted = {canon(lm.v_int().pow(spec.k)), IntPolynomial::constant(1)};
            if (p_zero)
                rep.notes.push_back(
                    "p = 0 at r = |a_m| = 1: minimizers are checked against the "
                    "Kronecker-type characterization (divisors of V and of cyclotomic "
                    "compositions)");
            break;
        case TheoremCase::Llarge:
            rep.predicted = {IntPolynomial::constant(1)};
            break;
    }

    // r/|a_m| = 1 attains the value 1 without a uniqueness claim.
    const bool llarge_boundary =
        rep.result.the_case == TheoremCase::Llarge &&
        !(lm.has_int_v() ? lm.r_exact() > Rat(abs(lm.v_int().lead()))
                         : lm.r() > lm.lead_abs());
    if (llarge_boundary)
        rep.notes.push_back("r/|a_m| = 1: the value 1 is attained but uniqueness is not claimed");

    std::set<IntPolynomial> attained(rep.result.argmins.begin(), rep.result.argmins.end());
    std::set<IntPolynomial> predicted(rep.predicted.begin(), rep.predicted.end());
    for (const auto& p : attained)
        if (!predicted.count(p)) rep.extra.push_back(p);
    for (const auto& p : predicted)
        if (!attained.count(p)) rep.missing.push_back(p);

    if (rep.result.the_case == TheoremCase::MinHiii && p_zero) {
        // Every attained minimizer must decompose into unit-height irreducibles.
        rep.matches = rep.missing.empty();
        for (const auto& p : attained) {
            if (p.degree() == 0) continue;  // constant 1
            bool ok = true;
            try {
                Factorization f = factor(p);
                if (f.content != 1 && f.content != -1) ok = false;
                for (const auto& [g, mult] : f.factors) {
                    (void)mult;
                    KroneckerVerdict v = kronecker_classify(g, lm);
                    if (v.kind == KroneckerKind::NotUnitHeight) ok = false;
                }
            } catch (const Error&) {
                ok = false;
            }
            if (!ok) {
                rep.matches = false;
                rep.notes.push_back("minimizer " + p.str() +
                                    " failed the unit-height characterization");
            }
        }
    } else if ((rep.result.the_case == TheoremCase::MinHii && p_zero) || llarge_boundary) {
        // Only containment of the predicted minimizers is claimed.
        rep.matches = rep.missing.empty();
    } else {
        rep.matches = rep.missing.empty() && rep.extra.empty();
    }
    return rep;
}

}  // namespace lemni

#pragma once

#include "lemheights/heights.hpp"
#include "lemheights/lemniscate.hpp"
#include "lemheights/polynomial.hpp"
#include "lemheights/rootfinding.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lemni {

// Scan progress hook: shard id, candidates consumed by that shard, and the
// shard's best value so far. May be invoked from worker threads.
using ScanProgress =
    std::function<void(int shard, long long scanned, std::optional<double> best)>;

// The monic integer companion of P over V: prod_k (w - V(alpha_k)) scaled by
// lead(P)^deg(V), computed exactly as Res_z(P(z), w - V(z)) by resultant
// evaluation at integer nodes and rational interpolation.
IntPolynomial companion_polynomial(const IntPolynomial& p, const IntPolynomial& v);

enum class KroneckerKind { DividesV, CyclotomicLift, NotUnitHeight };

struct KroneckerVerdict {
    KroneckerKind kind = KroneckerKind::NotUnitHeight;
    std::optional<long> cyclotomic_index;   // set for CyclotomicLift
    std::optional<IntPolynomial> witness;   // V/P, or (Phi_j o V)/P
    double mahler = 0;
    IntPolynomial companion;
    std::vector<std::string> notes;
};

// Kronecker-type classification of a monic irreducible P over a unit-radius
// lemniscate of a monic integer V: unit height forces P | V or P | Phi_j o V.
KroneckerVerdict kronecker_classify(const IntPolynomial& p, const Lemniscate& lm,
                                    long max_index = 300);

struct ConjugateSet {
    IntPolynomial minimal_polynomial;
    RootSet roots;
    long cyclotomic_index = 0;  // 0 for interior sets (divisors of V)
    bool interior = false;
};

struct ConjugateSetReport {
    std::vector<ConjugateSet> sets;
    long max_index = 0;
    std::vector<std::string> warnings;
};

// All complete conjugate sets of algebraic integers on L (r = 1): the
// irreducible factors of Phi_j o V for j <= max_index, plus the factors of V
// itself flagged as interior.
ConjugateSetReport enumerate_conjugate_sets(const Lemniscate& lm, long max_index,
                                            int max_degree);

struct EmptinessReport {
    long long scanned = 0;
    long long hits = 0;
    std::vector<IntPolynomial> hit_witnesses;
    double closest_near_miss = 0;  // min over candidates of max_k ||V(z_k)| - r|
    std::optional<IntPolynomial> near_miss_witness;
};

// Exhaustive check that no monic integer polynomial in the box has all roots
// on L when 0 < r < 1 (there are provably none).
EmptinessReport no_sets_below_one(const Lemniscate& lm, long coeff_bound, int max_degree,
                                  long long cap = 10'000'000, int threads = 1,
                                  const ScanProgress& progress = {});

struct LiftReport {
    double m_of_q = 0;
    double m_l_of_composition = 0;
    double relative_gap = 0;
    IntPolynomial composition;
};

// M(Q) on the unit circle versus M_L(Q o V) on the unit-radius lemniscate of a
// monic V; the two heights agree identically.
LiftReport lift_measure_identity(const IntPolynomial& q, const Lemniscate& lm);

struct LehmerScanReport {
    std::optional<double> smallest_above_one;
    std::optional<IntPolynomial> witness;
    long long scanned = 0;
    std::optional<double> circle_minimum;  // same box, V = z
    std::optional<IntPolynomial> circle_witness;
    double sandwich_low = 0;   // circle_minimum^{1/m}
    double sandwich_high = 0;  // circle_minimum
    std::optional<double> lift_value;  // M_L(circle_witness o V)
    bool lower_ok = false;  // smallest_above_one >= sandwich_low - 1e-9
    bool lift_ok = false;   // lift_value <= circle_minimum + 1e-9
};

// Smallest M_L strictly above 1 + gap over a coefficient box, with the
// two-sided consistency check against the unit-circle scan of the same box.
// Shards merge deterministically (lexicographically least witness on ties).
LehmerScanReport lehmer_scan(const Lemniscate& lm, int max_degree, long coeff_bound,
                             double gap, long long cap = 100'000'000, int threads = 1,
                             const ScanProgress& progress = {});

}  // namespace lemni

#pragma once

#include "lemheights/heights.hpp"
#include "lemheights/lemniscate.hpp"
#include "lemheights/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lemni {

// Which member of the height family a search minimizes: the geometric mean
// (p = 0), a finite L_p norm, or the sup norm (p = infinity).
struct HeightSelector {
    enum class Kind { GeometricMean, Lp, Sup };
    Kind kind = Kind::GeometricMean;
    double p = 2.0;

    static HeightSelector geometric() { return {Kind::GeometricMean, 0.0}; }
    static HeightSelector lp(double p) { return {Kind::Lp, p}; }
    static HeightSelector sup() { return {Kind::Sup, 0.0}; }
    static HeightSelector parse(const std::string& text);
    std::string str() const;
};

struct SearchSpec {
    Lemniscate lemniscate;
    int k = 1;                  // degree cap is k * deg(V)
    HeightSelector height;
    long coeff_bound = 1;
    bool prune = true;          // resultant-based cutoff
    long long cap = 100'000'000;
    int n_nodes = 1 << 10;      // finite-p quadrature grid
    int n_theta = 1 << 10;      // sup-norm coarse grid (fine tier is 1 << 14)
    int threads = 1;
};

enum class TheoremCase { MinHi, MinHii, MinHiii, Llarge, None };
std::string theorem_case_str(TheoremCase c);

struct SearchResult {
    double min_value = 0;
    std::vector<IntPolynomial> argmins;  // positive-lead canonical, sorted
    long long scanned = 0;
    long long pruned = 0;
    long long reslem_checked = 0;
    TheoremCase the_case = TheoremCase::None;
    std::optional<double> floor_value;  // r^k (MinH) or 1 (Llarge)
    bool matches_theorem = false;
    std::vector<std::string> notes;
};

// Exhaustive minimum of the selected height over the coefficient box, with
// cheap lower bounds and the exact-resultant cutoff pruning the scan.
SearchResult min_height_search(const SearchSpec& spec);

struct UniquenessReport {
    SearchResult result;
    std::vector<IntPolynomial> predicted;
    std::vector<IntPolynomial> extra;    // argmins beyond the predicted set
    std::vector<IntPolynomial> missing;  // predicted but not attained
    bool matches = false;
    std::vector<std::string> notes;
};

// Compares the attained argmin set against the predicted extremal polynomials
// for the applicable theorem case.
UniquenessReport verify_uniqueness(const SearchSpec& spec);

}  // namespace lemni

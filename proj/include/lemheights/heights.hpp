#pragma once

#include "lemheights/exact.hpp"
#include "lemheights/lemniscate.hpp"
#include "lemheights/polynomial.hpp"
#include "lemheights/rootfinding.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lemni {

struct ValueWithError {
    double value = 0;
    double error = 0;
};

// Closed-form geometric mean of |P| over the equilibrium measure of L:
//   |c_n| |a_m|^{-n/m} (prod_k max(r, |V(z_k)|))^{1/m}.
// Constants return |c|. The zero polynomial is rejected.
double mahler_closed(const IntPolynomial& p, const Lemniscate& lm);
double mahler_closed(const ComplexPolynomial& p, const Lemniscate& lm);

// exp of the quadrature mean of log|P|; refuses when a root of P lies within
// the singularity margin of L (use the closed form there).
ValueWithError mahler_quadrature(const IntPolynomial& p, const Lemniscate& lm, int n_nodes);
ValueWithError mahler_quadrature(const IntPolynomial& p, const Lemniscate& lm,
                                 const EquilibriumNodes& nodes);

// (mean of |P|^p)^{1/p} for finite p > 0; continuous integrand, no refusal.
ValueWithError lp_norm(const IntPolynomial& p, const Lemniscate& lm, double pexp, int n_nodes);
ValueWithError lp_norm(const IntPolynomial& p, const Lemniscate& lm, double pexp,
                       const EquilibriumNodes& nodes);

// Maximum of |P| over L from the traced grid, golden-section refined in theta
// around the best node. A sampled maximum, so certified only as a lower bound.
double sup_norm(const IntPolynomial& p, const Lemniscate& lm, int n_theta);
double sup_norm(const IntPolynomial& p, const Lemniscate& lm, const EquilibriumNodes& nodes,
                bool refine = true);

struct ResultantBound {
    double bound = 0;       // |a_m|^{-n/m} |Res(P,V)|^{1/m}
    double mahler = 0;      // closed-form measure
    double slack = 0;       // (mahler - bound) / max(1, bound)
    bool holds = false;     // slack >= -1e-9
    Int res;                // exact resultant
};
ResultantBound resultant_bound(const IntPolynomial& p, const Lemniscate& lm);

struct SubordinationEntry {
    double p = 0;
    double value = 0;
    double error = 0;
};
struct SubordinationReport {
    double mahler = 0;
    std::vector<SubordinationEntry> lp;  // ascending p
    double sup = 0;
    bool chain_ok = false;     // mahler <= each lp <= sup, within error margins
    bool monotone_ok = false;  // lp nondecreasing in p, within error margins
};
SubordinationReport subordination_check(const IntPolynomial& p, const Lemniscate& lm,
                                        std::vector<double> p_grid, int n_nodes,
                                        int n_theta);

struct HeightReport {
    IntPolynomial polynomial;
    std::string lemniscate_v;
    Rat lemniscate_r;
    double mahler = 0;
    std::optional<ValueWithError> mahler_quad;
    std::map<double, ValueWithError> lp_values;
    std::optional<double> sup;
    std::optional<ResultantBound> res_bound;
    std::vector<std::string> method_notes;
};

struct MeasureOptions {
    std::vector<double> p_grid = {1.0, 2.0};
    int n_nodes = 1 << 12;
    int n_theta = 1 << 12;
    bool with_quadrature = true;
    bool with_sup = true;
};

HeightReport measure(const IntPolynomial& p, const Lemniscate& lm,
                     const MeasureOptions& opt = {});

std::string height_report_json(const HeightReport& report);

}  // namespace lemni

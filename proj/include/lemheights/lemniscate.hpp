#pragma once

#include "lemheights/errors.hpp"
#include "lemheights/numeric.hpp"
#include "lemheights/polynomial.hpp"
#include "lemheights/rootfinding.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lemni {

enum class Region { Interior, OnCurve, Exterior };

// The level curve L = { z : |V(z)| = r } together with its derived geometry.
// V normally has integer coefficients; a complex-coefficient variant is
// accepted, in which case operations needing exact arithmetic refuse.
class Lemniscate {
public:
    Lemniscate(IntPolynomial v, Rat r);
    Lemniscate(ComplexPolynomial v, double r);

    const ComplexPolynomial& v() const { return v_; }
    const IntPolynomial& v_int() const;
    bool has_int_v() const { return v_int_.has_value(); }

    int m() const { return v_.degree(); }
    double r() const { return r_; }
    const Rat& r_exact() const { return r_exact_; }
    double lead_abs() const { return std::abs(v_.lead()); }

    // (r/|a_m|)^{1/m}, the logarithmic capacity of L.
    double capacity() const;

    // Quadrature refuses log-singular integrands with a root closer than this
    // to L in the |V| metric (compared against margin * r).
    double singularity_margin() const { return 1e-4 * capacity(); }

    std::string str() const;

private:
    std::optional<IntPolynomial> v_int_;
    ComplexPolynomial v_;
    Rat r_exact_;
    double r_;
};

Region classify(const Lemniscate& lm, Cplx z, double tol = 1e-9);

// Green function with pole at infinity: (1/m) log(|V(z)|/r) outside E, else 0.
double green(const Lemniscate& lm, Cplx z);

// Equilibrium potential: (1/m) log(max(r, |V(z)|) / |a_m|), continuous across L.
double equilibrium_potential(const Lemniscate& lm, Cplx z);

// Solutions of V(z) = r e^{i theta} on a uniform theta grid, one row per grid
// node, warm-started so row ordering follows the analytic branches.
struct EquilibriumNodes {
    std::vector<double> thetas;
    std::vector<std::vector<Cplx>> points;  // [theta][branch]
    int n() const { return static_cast<int>(thetas.size()); }
    int branches() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
};
EquilibriumNodes equilibrium_nodes(const Lemniscate& lm, int n_nodes,
                                   const RootOptions& opt = {});

struct Average {
    double value = 0;
    double error = 0;  // |A(n) - A(n/2)| halving estimate
};

// Mean of f over the equilibrium measure by the periodic trapezoidal rule on
// the pushforward parametrization; n_nodes must be a power of two >= 16.
Average equilibrium_average(const Lemniscate& lm, const std::function<double(Cplx)>& f,
                            int n_nodes);
Average equilibrium_average(const EquilibriumNodes& nodes,
                            const std::function<double(Cplx)>& f);

struct CurveTrace {
    std::vector<std::vector<Cplx>> components;        // closed point loops
    std::vector<std::vector<double>> component_thetas;  // unrolled, increasing per loop
    std::vector<double> theta_nodes;
    std::vector<int> monodromy;  // branch permutation after one 2*pi loop
    bool near_critical = false;
    std::vector<std::string> warnings;
    double max_closure_defect = 0;
};

// Trace L as the m-branch solution set of V(z) = r e^{i theta}; components are
// the cycles of the branch monodromy.
CurveTrace trace(const Lemniscate& lm, int n_theta, double tol = 1e-9);

// CSV with header component_id,theta,re,im; points in increasing theta.
void write_trace_csv(const CurveTrace& tr, std::ostream& os);

}  // namespace lemni

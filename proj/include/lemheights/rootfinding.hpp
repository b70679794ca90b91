#pragma once

#include "lemheights/numeric.hpp"
#include "lemheights/polynomial.hpp"

#include <vector>

namespace lemni {

// Roots with per-root certified error radii. Roots are listed with
// multiplicity; members of a numerically unresolved cluster share an
// enlarged radius. Residuals are recomputed post hoc, never inferred.
struct RootSet {
    std::vector<Cplx> roots;
    std::vector<double> radii;
    std::vector<double> residuals;

    std::size_t size() const { return roots.size(); }
};

struct RootOptions {
    double tol = 1e-13;       // relative correction stopping threshold
    int max_iterations = 200;
};

// Simultaneous root finding by Aberth-Ehrlich iteration from a scaled circular
// initialization, Newton-polished. On non-convergence one retry runs at
// extended (long double) precision before NonConvergenceError is raised.
RootSet roots(const ComplexPolynomial& p, const RootOptions& opt);
RootSet roots(const ComplexPolynomial& p, double tol = 1e-13);

// The deg(v) solutions of v(z) = w. A warm start (the previous step of a path)
// seeds the iteration and fixes the output ordering by nearest matching, so
// branch indexing is continuous along a continuation path.
RootSet solve_level(const ComplexPolynomial& v, Cplx w, const RootSet* warm = nullptr,
                    const RootOptions& opt = {});

}  // namespace lemni

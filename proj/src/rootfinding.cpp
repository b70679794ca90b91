#include "lemheights/rootfinding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lemni {

namespace {

template <typename T>
using C = std::complex<T>;

template <typename T>
struct EvalPair {
    C<T> value;
    C<T> deriv;
    T scale;  // sum |c_i| |z|^i
};

template <typename T>
EvalPair<T> eval_with_derivative(const std::vector<C<T>>& c, C<T> z) {
    C<T> p(0), d(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        d = d * z + p;
        p = p * z + *it;
    }
    T az = std::abs(z), powz = 1, s = 0;
    for (const auto& ck : c) {
        s += std::abs(ck) * powz;
        powz *= az;
    }
    return {p, d, s};
}

template <typename T>
bool aberth(const std::vector<C<T>>& c, std::vector<C<T>>& z, T tol, int cap) {
    const int d = static_cast<int>(c.size()) - 1;
    const T eps = std::numeric_limits<T>::epsilon();
    std::vector<bool> settled(d, false);

    for (int it = 0; it < cap; ++it) {
        T max_rel = 0;
        int n_settled = 0;
        for (int k = 0; k < d; ++k) {
            auto [p, dp, scale] = eval_with_derivative(c, z[k]);
            // Backward-stable residual test; this is what terminates clusters.
            if (std::abs(p) <= 8 * eps * scale * (d + 1)) {
                settled[k] = true;
                ++n_settled;
                continue;
            }
            settled[k] = false;
            if (dp == C<T>(0)) {
                z[k] += C<T>(eps * (std::abs(z[k]) + 1), eps);
                max_rel = 1;
                continue;
            }
            C<T> newton = p / dp;
            C<T> sum(0);
            for (int j = 0; j < d; ++j) {
                if (j == k) continue;
                C<T> diff = z[k] - z[j];
                if (diff == C<T>(0)) diff = C<T>(eps * (std::abs(z[k]) + 1), 0);
                sum += C<T>(1) / diff;
            }
            C<T> denom = C<T>(1) - newton * sum;
            C<T> corr = denom == C<T>(0) ? newton : newton / denom;
            if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) corr = newton;
            z[k] -= corr;
            max_rel = std::max(max_rel, std::abs(corr) / std::max(T(1), std::abs(z[k])));
        }
        if (n_settled == d || max_rel < tol) return true;
    }
    return false;
}

template <typename T>
void newton_polish(const std::vector<C<T>>& c, std::vector<C<T>>& z) {
    for (auto& zk : z) {
        for (int step = 0; step < 3; ++step) {
            auto [p, dp, scale] = eval_with_derivative(c, zk);
            (void)scale;
            if (dp == C<T>(0)) break;
            C<T> cand = zk - p / dp;
            auto [p2, dp2, s2] = eval_with_derivative(c, cand);
            (void)dp2;
            (void)s2;
            if (std::abs(p2) < std::abs(p))
                zk = cand;
            else
                break;
        }
    }
}

template <typename T>
std::vector<C<T>> initial_guesses(const std::vector<C<T>>& c) {
    const int d = static_cast<int>(c.size()) - 1;
    C<T> lead = c.back();
    C<T> centroid = d > 0 ? -c[d - 1] / (lead * T(d)) : C<T>(0);
    T cauchy = 0;
    for (int k = 0; k < d; ++k) cauchy = std::max(cauchy, std::abs(c[k] / lead));
    cauchy += 1;
    T rho = c[0] == C<T>(0) ? cauchy / 2 : std::pow(std::abs(c[0] / lead), T(1) / d);
    rho = std::clamp(rho, T(1e-3), cauchy);
    std::vector<C<T>> z(d);
    for (int k = 0; k < d; ++k) {
        T angle = T(2) * std::numbers::pi_v<T> * k / d + T(0.3967);
        z[k] = centroid + rho * C<T>(std::cos(angle), std::sin(angle));
    }
    return z;
}

// Perturb coincident warm-start points so the Aberth denominators stay finite.
template <typename T>
void separate_duplicates(std::vector<C<T>>& z) {
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j)
            if (z[i] == z[j])
                z[j] += C<T>(T(1e-8) * (std::abs(z[j]) + 1), T(1e-8));
}

struct Solved {
    std::vector<Cplx> roots;
    bool converged = false;
};

// Extended-precision refinement: a short Aberth tail plus Newton polishing at
// long double, started from a converged double solution. Shrinks cluster
// radii of multiple roots from ~1e-7 to ~1e-10.
std::vector<Cplx> refine_extended(const std::vector<Cplx>& coeffs, std::vector<C<double>> z,
                                  double tol) {
    std::vector<C<long double>> cl(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        cl[k] = C<long double>(coeffs[k].real(), coeffs[k].imag());
    std::vector<C<long double>> zl(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) zl[k] = C<long double>(z[k].real(), z[k].imag());
    separate_duplicates(zl);
    aberth<long double>(cl, zl, static_cast<long double>(tol) / 64, 48);
    newton_polish(cl, zl);
    std::vector<Cplx> out(zl.size());
    for (std::size_t k = 0; k < zl.size(); ++k)
        out[k] = Cplx(static_cast<double>(zl[k].real()), static_cast<double>(zl[k].imag()));
    return out;
}

Solved solve_core(const std::vector<Cplx>& coeffs, const std::vector<Cplx>* warm,
                  const RootOptions& opt) {
    // double pass
    {
        std::vector<C<double>> z;
        if (warm && warm->size() == coeffs.size() - 1) {
            z.assign(warm->begin(), warm->end());
            separate_duplicates(z);
        } else {
            z = initial_guesses(coeffs);
        }
        if (aberth<double>(coeffs, z, opt.tol, opt.max_iterations)) {
            return {refine_extended(coeffs, std::move(z), opt.tol), true};
        }
    }
    // one retry at extended precision
    {
        std::vector<C<long double>> cl(coeffs.size());
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            cl[k] = C<long double>(coeffs[k].real(), coeffs[k].imag());
        std::vector<C<long double>> z;
        if (warm && warm->size() == coeffs.size() - 1) {
            z.resize(warm->size());
            for (std::size_t k = 0; k < warm->size(); ++k)
                z[k] = C<long double>((*warm)[k].real(), (*warm)[k].imag());
            separate_duplicates(z);
        } else {
            z = initial_guesses(cl);
        }
        if (aberth<long double>(cl, z, static_cast<long double>(opt.tol) / 64,
                                opt.max_iterations)) {
            newton_polish(cl, z);
            std::vector<Cplx> out(z.size());
            for (std::size_t k = 0; k < z.size(); ++k)
                out[k] = Cplx(static_cast<double>(z[k].real()), static_cast<double>(z[k].imag()));
            return {std::move(out), true};
        }
    }
    return {};
}

// Residuals, first-order radii, then cluster-merged radii.
RootSet certify(const ComplexPolynomial& p, std::vector<Cplx> roots_in,
                const std::vector<int>& exact_zero) {
    const int n = static_cast<int>(roots_in.size());
    RootSet rs;
    rs.roots = std::move(roots_in);
    rs.radii.assign(n, 0.0);
    rs.residuals.assign(n, 0.0);

    ComplexPolynomial dp = p.derivative();
    std::vector<bool> needs_cluster(n, false);
    for (int k = 0; k < n; ++k) {
        if (exact_zero[k]) continue;  // stripped zero roots are exact
        Cplx z = rs.roots[k];
        double resid = std::abs(p.eval(z));
        double dabs = std::abs(dp.eval(z));
        double scale = p.coeff_scale_at(z);
        rs.residuals[k] = resid;
        if (dabs > 1e-8 * std::max(1.0, scale / std::max(1.0, std::abs(z)))) {
            rs.radii[k] = n * resid / dabs;
        } else {
            needs_cluster[k] = true;
            rs.radii[k] = std::numeric_limits<double>::infinity();
        }
    }

    // Merge roots whose first-order disks overlap (factor 10) into clusters
    // sharing an enlarged radius.
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (exact_zero[i] || exact_zero[j]) continue;  // exact roots stay radius 0
            double d = std::abs(rs.roots[i] - rs.roots[j]);
            double ri = std::isfinite(rs.radii[i]) ? rs.radii[i] : 0.0;
            double rj = std::isfinite(rs.radii[j]) ? rs.radii[j] : 0.0;
            bool overlap = d <= 10 * (ri + rj);
            if (needs_cluster[i] || needs_cluster[j])
                overlap = overlap || d <= 1e-6 * std::max(1.0, std::abs(rs.roots[i]));
            if (overlap) parent[find(i)] = find(j);
        }
    }
    for (int rep = 0; rep < n; ++rep) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (!exact_zero[i] && find(i) == rep) members.push_back(i);
        if (members.size() < 2) {
            if (members.size() == 1 && !std::isfinite(rs.radii[members[0]])) {
                // isolated root with vanishing derivative: fall back to a
                // residual-scaled bound
                int i = members[0];
                rs.radii[i] = std::max(std::cbrt(rs.residuals[i]), 1e-12);
            }
            continue;
        }
        Cplx mean(0);
        for (int i : members) mean += rs.roots[i];
        mean /= static_cast<double>(members.size());
        double spread = 0, base = 0;
        for (int i : members) {
            spread = std::max(spread, std::abs(rs.roots[i] - mean));
            if (std::isfinite(rs.radii[i])) base = std::max(base, rs.radii[i]);
        }
        double radius = 2 * spread + base + 1e-15;
        for (int i : members) rs.radii[i] = radius;
    }
    return rs;
}

RootSet find_all(const ComplexPolynomial& p, const RootSet* warm, const RootOptions& opt) {
    if (p.is_zero() || p.degree() < 1)
        throw InputError("root finding requires degree >= 1");

    // Exact zero roots split off before iterating.
    std::vector<Cplx> c = p.coeffs();
    int zeros = 0;
    while (zeros < static_cast<int>(c.size()) - 1 && c[zeros] == Cplx(0)) ++zeros;
    std::vector<Cplx> reduced(c.begin() + zeros, c.end());

    std::vector<Cplx> warm_pts;
    const std::vector<Cplx>* warm_ptr = nullptr;
    if (warm && static_cast<int>(warm->size()) == p.degree() && reduced.size() >= 2) {
        // Drop the warm points nearest zero to warm the reduced polynomial.
        warm_pts.assign(warm->roots.begin(), warm->roots.end());
        std::sort(warm_pts.begin(), warm_pts.end(),
                  [](Cplx a, Cplx b) { return std::abs(a) > std::abs(b); });
        warm_pts.resize(reduced.size() - 1);
        warm_ptr = &warm_pts;
    }

    std::vector<Cplx> found;
    if (reduced.size() >= 2) {
        Solved s = solve_core(reduced, warm_ptr, opt);
        if (!s.converged)
            throw NonConvergenceError("root iteration did not converge",
                                      "degree=" + std::to_string(p.degree()));
        found = std::move(s.roots);
    }
    std::vector<int> exact_zero(p.degree(), 0);
    for (int k = 0; k < zeros; ++k) {
        found.push_back(Cplx(0));
        exact_zero[found.size() - 1] = 1;
    }
    return certify(p, std::move(found), exact_zero);
}

}  // namespace

RootSet roots(const ComplexPolynomial& p, const RootOptions& opt) {
    return find_all(p, nullptr, opt);
}

RootSet roots(const ComplexPolynomial& p, double tol) {
    RootOptions opt;
    opt.tol = tol;
    return find_all(p, nullptr, opt);
}

RootSet solve_level(const ComplexPolynomial& v, Cplx w, const RootSet* warm,
                    const RootOptions& opt) {
    if (v.is_zero() || v.degree() < 1)
        throw InputError("solve_level requires degree >= 1");
    std::vector<Cplx> c = v.coeffs();
    c[0] -= w;
    ComplexPolynomial shifted(std::move(c));
    RootSet rs = find_all(shifted, warm, opt);
    if (warm && warm->size() == rs.size()) {
        // Greedy nearest matching to the warm ordering keeps branch indices
        // continuous along a path.
        const std::size_t m = rs.size();
        std::vector<bool> used(m, false);
        std::vector<std::size_t> pick(m, 0);
        for (std::size_t i = 0; i < m; ++i) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t arg = 0;
            for (std::size_t j = 0; j < m; ++j) {
                if (used[j]) continue;
                double d = std::abs(rs.roots[j] - warm->roots[i]);
                if (d < best) {
                    best = d;
                    arg = j;
                }
            }
            used[arg] = true;
            pick[i] = arg;
        }
        RootSet out;
        out.roots.resize(m);
        out.radii.resize(m);
        out.residuals.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            out.roots[i] = rs.roots[pick[i]];
            out.radii[i] = rs.radii[pick[i]];
            out.residuals[i] = rs.residuals[pick[i]];
        }
        return out;
    }
    return rs;
}

}  // namespace lemni

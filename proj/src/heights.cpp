#include "lemheights/heights.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace lemni {

namespace {

void require_nonzero(const IntPolynomial& p) {
    if (p.is_zero()) throw InputError("height operations reject the zero polynomial");
}

double mahler_from_roots(double log_lead_abs, const RootSet& rs, const Lemniscate& lm) {
    const int m = lm.m();
    double acc = log_lead_abs - static_cast<double>(rs.size()) / m * std::log(lm.lead_abs());
    for (Cplx z : rs.roots)
        acc += std::log(std::max(lm.r(), std::abs(lm.v().eval(z)))) / m;
    return std::exp(acc);
}

}  // namespace

double mahler_closed(const IntPolynomial& p, const Lemniscate& lm) {
    require_nonzero(p);
    if (p.degree() == 0) return std::fabs(to_double_nearest(p.coeff(0)));
    ComplexPolynomial pc = ComplexPolynomial::from(p);
    RootSet rs = roots(pc);

    // Repeated roots settle as clusters whose radii cap the attainable
    // accuracy. The measure is multiplicative, so split off the exact
    // multiplicity structure and evaluate on square-free factors instead.
    bool clustered = false;
    for (std::size_t k = 0; k < rs.size(); ++k)
        if (rs.radii[k] > 1e-10 * (1 + std::abs(rs.roots[k]))) clustered = true;
    if (clustered && p.degree() <= kFactorDegreeCap) {
        Factorization f = factor(p);
        bool nontrivial = f.factors.size() > 1;
        for (const auto& [g, mult] : f.factors)
            if (mult > 1) nontrivial = true;
        if (nontrivial) {
            double acc = log_abs(f.content);
            for (const auto& [g, mult] : f.factors)
                acc += mult * std::log(mahler_closed(g, lm));
            return std::exp(acc);
        }
    }
    return mahler_from_roots(log_abs(p.lead()), rs, lm);
}

double mahler_closed(const ComplexPolynomial& p, const Lemniscate& lm) {
    if (p.is_zero()) throw InputError("height operations reject the zero polynomial");
    if (p.degree() == 0) return std::abs(p.coeff(0));
    return mahler_from_roots(std::log(std::abs(p.lead())), roots(p), lm);
}

ValueWithError mahler_quadrature(const IntPolynomial& p, const Lemniscate& lm,
                                 const EquilibriumNodes& nodes) {
    require_nonzero(p);
    ComplexPolynomial pc = ComplexPolynomial::from(p);
    if (p.degree() >= 1) {
        RootSet rs = roots(pc);
        double margin = lm.singularity_margin() * lm.r();
        for (Cplx z : rs.roots) {
            double dist = std::fabs(std::abs(lm.v().eval(z)) - lm.r());
            if (dist < margin)
                throw SingularIntegrandError(
                    "a root of P lies within the singularity margin of L; "
                    "use the closed form",
                    "root=" + real_str(z.real()) + (z.imag() < 0 ? "-" : "+") +
                        real_str(std::fabs(z.imag())) + "i distance=" + real_str(dist));
        }
    }
    Average a = equilibrium_average(nodes, [&](Cplx z) { return std::log(std::abs(pc.eval(z))); });
    double value = std::exp(a.value);
    return {value, value * a.error};
}

ValueWithError mahler_quadrature(const IntPolynomial& p, const Lemniscate& lm, int n_nodes) {
    if (n_nodes < 16 || (n_nodes & (n_nodes - 1)) != 0)
        throw InputError("n_nodes must be a power of two >= 16");
    return mahler_quadrature(p, lm, equilibrium_nodes(lm, n_nodes));
}

ValueWithError lp_norm(const IntPolynomial& p, [[maybe_unused]] const Lemniscate& lm,
                       double pexp, const EquilibriumNodes& nodes) {
    require_nonzero(p);
    if (!(pexp > 0) || !std::isfinite(pexp))
        throw InputError("lp_norm requires finite p > 0 (p = 0 and infinity have their own routes)");
    ComplexPolynomial pc = ComplexPolynomial::from(p);
    Average a = equilibrium_average(
        nodes, [&](Cplx z) { return std::pow(std::abs(pc.eval(z)), pexp); });
    double value = std::pow(a.value, 1.0 / pexp);
    double err = a.value > 0 ? value * a.error / (pexp * a.value) : a.error;
    return {value, err};
}

ValueWithError lp_norm(const IntPolynomial& p, const Lemniscate& lm, double pexp, int n_nodes) {
    if (n_nodes < 16 || (n_nodes & (n_nodes - 1)) != 0)
        throw InputError("n_nodes must be a power of two >= 16");
    return lp_norm(p, lm, pexp, equilibrium_nodes(lm, n_nodes));
}

double sup_norm(const IntPolynomial& p, const Lemniscate& lm, const EquilibriumNodes& nodes,
                bool refine) {
    require_nonzero(p);
    ComplexPolynomial pc = ComplexPolynomial::from(p);
    const int n = nodes.n(), m = nodes.branches();
    double best = 0;
    int bi = 0, bj = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            double a = std::abs(pc.eval(nodes.points[i][j]));
            if (a > best) {
                best = a;
                bi = i;
                bj = j;
            }
        }
    if (!refine || p.degree() == 0) return best;

    // |P| restricted to one branch is smooth in theta; refine around the best
    // grid node by golden-section search on [theta-, theta+].
    const double step = 2 * std::numbers::pi / n;
    double lo = nodes.thetas[bi] - step, hi = nodes.thetas[bi] + step;
    Cplx tracked = nodes.points[bi][bj];
    auto branch_value = [&](double theta) {
        Cplx w = lm.r() * Cplx(std::cos(theta), std::sin(theta));
        // seed from the grid row nearest theta, then follow the tracked branch
        RootSet warm;
        int row = static_cast<int>(std::llround(theta / step)) % n;
        if (row < 0) row += n;
        warm.roots = nodes.points[row];
        RootSet rs = solve_level(lm.v(), w, &warm);
        double bd = std::numeric_limits<double>::infinity();
        std::size_t arg = 0;
        for (std::size_t t = 0; t < rs.roots.size(); ++t) {
            double d = std::abs(rs.roots[t] - tracked);
            if (d < bd) {
                bd = d;
                arg = t;
            }
        }
        return std::abs(pc.eval(rs.roots[arg]));
    };
    const double invphi = (std::sqrt(5.0) - 1) / 2;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = branch_value(x1), f2 = branch_value(x2);
    for (int it = 0; it < 48 && (b - a) > 1e-12; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = branch_value(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = branch_value(x1);
        }
        best = std::max({best, f1, f2});
    }
    return best;
}

double sup_norm(const IntPolynomial& p, const Lemniscate& lm, int n_theta) {
    if (n_theta < 16) throw InputError("n_theta must be >= 16");
    return sup_norm(p, lm, equilibrium_nodes(lm, n_theta), true);
}

ResultantBound resultant_bound(const IntPolynomial& p, const Lemniscate& lm) {
    require_nonzero(p);
    const IntPolynomial& v = lm.v_int();
    ResultantBound rb;
    rb.res = resultant(p, v);
    if (rb.res == 0) {
        rb.bound = 0;
    } else {
        double logb = (log_abs(rb.res) - p.degree() * std::log(lm.lead_abs())) / lm.m();
        rb.bound = std::exp(logb);
    }
    rb.mahler = mahler_closed(p, lm);
    rb.slack = (rb.mahler - rb.bound) / std::max(1.0, rb.bound);
    rb.holds = rb.slack >= -1e-9;
    return rb;
}

SubordinationReport subordination_check(const IntPolynomial& p, const Lemniscate& lm,
                                        std::vector<double> p_grid, int n_nodes, int n_theta) {
    require_nonzero(p);
    std::sort(p_grid.begin(), p_grid.end());
    SubordinationReport rep;
    rep.mahler = mahler_closed(p, lm);
    EquilibriumNodes nodes = equilibrium_nodes(lm, n_nodes);
    EquilibriumNodes sup_nodes =
        n_theta == n_nodes ? nodes : equilibrium_nodes(lm, n_theta);
    for (double pe : p_grid) {
        if (!(pe > 0) || !std::isfinite(pe))
            throw InputError("subordination grid entries must be finite and positive");
        ValueWithError v = lp_norm(p, lm, pe, nodes);
        rep.lp.push_back({pe, v.value, v.error});
    }
    rep.sup = sup_norm(p, lm, sup_nodes, true);

    rep.chain_ok = true;
    rep.monotone_ok = true;
    auto margin = [](double err, double scale) { return err + 1e-9 * std::max(1.0, scale); };
    for (const auto& e : rep.lp) {
        if (rep.mahler > e.value + margin(e.error, e.value)) rep.chain_ok = false;
        if (e.value > rep.sup + margin(e.error, rep.sup)) rep.chain_ok = false;
    }
    for (std::size_t i = 0; i + 1 < rep.lp.size(); ++i)
        if (rep.lp[i].value >
            rep.lp[i + 1].value + margin(rep.lp[i].error + rep.lp[i + 1].error, rep.lp[i].value))
            rep.monotone_ok = false;
    return rep;
}

HeightReport measure(const IntPolynomial& p, const Lemniscate& lm, const MeasureOptions& opt) {
    require_nonzero(p);
    HeightReport rep;
    rep.polynomial = p;
    rep.lemniscate_v = lm.has_int_v() ? lm.v_int().str() : std::string("<complex>");
    rep.lemniscate_r = lm.r_exact();
    rep.mahler = mahler_closed(p, lm);
    rep.method_notes.push_back("mahler: closed form from certified roots");

    EquilibriumNodes nodes = equilibrium_nodes(lm, opt.n_nodes);
    if (opt.with_quadrature) {
        try {
            rep.mahler_quad = mahler_quadrature(p, lm, nodes);
            rep.method_notes.push_back("mahler_quadrature: n_nodes=" + std::to_string(opt.n_nodes));
        } catch (const SingularIntegrandError&) {
            rep.method_notes.push_back(
                "mahler_quadrature: skipped, root within singularity margin of L");
        }
    }
    for (double pe : opt.p_grid) rep.lp_values[pe] = lp_norm(p, lm, pe, nodes);
    if (opt.with_sup) {
        EquilibriumNodes sup_nodes =
            opt.n_theta == opt.n_nodes ? nodes : equilibrium_nodes(lm, opt.n_theta);
        rep.sup = sup_norm(p, lm, sup_nodes, true);
        rep.method_notes.push_back("sup: n_theta=" + std::to_string(opt.n_theta) +
                                   " grid + golden-section refinement (lower bound)");
    }
    if (lm.has_int_v()) rep.res_bound = resultant_bound(p, lm);
    return rep;
}

std::string height_report_json(const HeightReport& rep) {
    nlohmann::ordered_json j;
    j["polynomial"] = rep.polynomial.str();
    j["lemniscate"] = {{"V", rep.lemniscate_v}, {"r", rational_str(rep.lemniscate_r)}};
    nlohmann::ordered_json heights;
    heights["mahler"] = real_str(rep.mahler);
    if (rep.mahler_quad) heights["mahler_quadrature"] = real_str(rep.mahler_quad->value);
    nlohmann::ordered_json lp = nlohmann::ordered_json::object();
    for (const auto& [pe, v] : rep.lp_values) {
        char key[32];
        std::snprintf(key, sizeof(key), "%g", pe);
        lp[key] = real_str(v.value);
    }
    heights["lp"] = lp;
    if (rep.sup) heights["sup"] = real_str(*rep.sup);
    j["heights"] = heights;
    nlohmann::ordered_json bounds = nlohmann::ordered_json::object();
    if (rep.res_bound) {
        bounds["resultant"] = real_str(rep.res_bound->bound);
        bounds["resultant_exact"] = rep.res_bound->res.get_str();
        bounds["holds"] = rep.res_bound->holds;
    }
    j["bounds"] = bounds;
    nlohmann::ordered_json errors = nlohmann::ordered_json::object();
    if (rep.mahler_quad) errors["quadrature"] = real_str(rep.mahler_quad->error);
    j["errors"] = errors;
    j["method_notes"] = rep.method_notes;
    return j.dump(2);
}

}  // namespace lemni

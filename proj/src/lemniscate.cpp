#include "lemheights/lemniscate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

namespace lemni {

namespace {
constexpr double kTwoPi = 2 * std::numbers::pi;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Lemniscate::Lemniscate(IntPolynomial v, Rat r)
    : v_int_(std::move(v)), v_(ComplexPolynomial::from(*v_int_)), r_exact_(std::move(r)) {
    r_exact_.canonicalize();
    r_ = r_exact_.get_d();
    if (r_exact_ <= 0) throw InputError("lemniscate radius must be positive");
    if (v_int_->degree() < 1) throw InputError("lemniscate polynomial must have degree >= 1");
}

Lemniscate::Lemniscate(ComplexPolynomial v, double r) : v_(std::move(v)), r_exact_(r), r_(r) {
    r_exact_.canonicalize();
    if (!(r > 0)) throw InputError("lemniscate radius must be positive");
    if (v_.degree() < 1) throw InputError("lemniscate polynomial must have degree >= 1");
}

const IntPolynomial& Lemniscate::v_int() const {
    if (!v_int_)
        throw HypothesisError("operation requires a lemniscate with integer coefficients");
    return *v_int_;
}

double Lemniscate::capacity() const {
    return std::pow(r_ / lead_abs(), 1.0 / m());
}

std::string Lemniscate::str() const {
    std::string vtxt = v_int_ ? v_int_->str() : std::string("<complex polynomial>");
    return "{|" + vtxt + "| = " + rational_str(r_exact_) + "}";
}

Region classify(const Lemniscate& lm, Cplx z, double tol) {
    double a = std::abs(lm.v().eval(z));
    double r = lm.r();
    if (std::fabs(a - r) <= tol * r) return Region::OnCurve;
    return a < r ? Region::Interior : Region::Exterior;
}

double green(const Lemniscate& lm, Cplx z) {
    double a = std::abs(lm.v().eval(z));
    if (a <= lm.r()) return 0.0;
    return std::log(a / lm.r()) / lm.m();
}

double equilibrium_potential(const Lemniscate& lm, Cplx z) {
    double a = std::abs(lm.v().eval(z));
    return std::log(std::max(lm.r(), a) / lm.lead_abs()) / lm.m();
}

EquilibriumNodes equilibrium_nodes(const Lemniscate& lm, int n_nodes, const RootOptions& opt) {
    if (n_nodes < 1) throw InputError("n_nodes must be positive");
    EquilibriumNodes nodes;
    nodes.thetas.resize(n_nodes);
    nodes.points.resize(n_nodes);
    RootSet prev;
    for (int i = 0; i < n_nodes; ++i) {
        double theta = kTwoPi * i / n_nodes;
        nodes.thetas[i] = theta;
        Cplx w = lm.r() * Cplx(std::cos(theta), std::sin(theta));
        RootSet rs = solve_level(lm.v(), w, i == 0 ? nullptr : &prev, opt);
        nodes.points[i] = rs.roots;
        prev = std::move(rs);
    }
    return nodes;
}

Average equilibrium_average(const EquilibriumNodes& nodes, const std::function<double(Cplx)>& f) {
    const int n = nodes.n();
    const int m = nodes.branches();
    if (n < 2 || m < 1) throw InputError("equilibrium average needs a populated node set");
    // Fixed indexed reduction: per-node branch means, then the periodic
    // trapezoid (= uniform mean) over theta; A(n/2) reuses the even nodes.
    double full = 0, half = 0;
    for (int i = 0; i < n; ++i) {
        double s = 0;
        for (int j = 0; j < m; ++j) s += f(nodes.points[i][j]);
        s /= m;
        full += s;
        if (i % 2 == 0) half += s;
    }
    Average a;
    a.value = full / n;
    a.error = std::fabs(a.value - half / (n / 2));
    return a;
}

Average equilibrium_average(const Lemniscate& lm, const std::function<double(Cplx)>& f,
                            int n_nodes) {
    if (n_nodes < 16 || !is_power_of_two(n_nodes))
        throw InputError("n_nodes must be a power of two >= 16",
                         "n_nodes=" + std::to_string(n_nodes));
    return equilibrium_average(equilibrium_nodes(lm, n_nodes), f);
}

CurveTrace trace(const Lemniscate& lm, int n_theta, double tol) {
    if (n_theta < 16)
        throw InputError("n_theta must be >= 16", "n_theta=" + std::to_string(n_theta));
    const int m = lm.m();
    const double r = lm.r();
    CurveTrace tr;

    // Radius within 1e-9 (relative) of a critical value: the component count
    // is not guaranteed; warn, continue, and do not fail on coarse matching.
    bool critical_radius = false;
    if (m >= 2) {
        ComplexPolynomial dv = lm.v().derivative();
        if (dv.degree() >= 1) {
            RootSet crit = roots(dv);
            for (Cplx c : crit.roots) {
                double cv = std::abs(lm.v().eval(c));
                if (std::fabs(cv - r) <= 1e-9 * r) {
                    critical_radius = true;
                    tr.near_critical = true;
                    tr.warnings.push_back("radius within 1e-9 of critical value " + real_str(cv));
                }
            }
        }
    }

    std::vector<std::vector<Cplx>> path(n_theta);
    tr.theta_nodes.resize(n_theta);
    RootSet prev;
    double collision_threshold = 1e-6 * lm.capacity();
    for (int i = 0; i <= n_theta; ++i) {
        double theta = kTwoPi * i / n_theta;
        Cplx w = r * Cplx(std::cos(theta), std::sin(theta));
        if (i == n_theta) w = Cplx(r, 0.0);  // exact closing target
        RootSet rs = solve_level(lm.v(), w, i == 0 ? nullptr : &prev, {tol * 1e-3, 200});

        if (i > 0 && m >= 2) {
            double disp = 0;
            for (int j = 0; j < m; ++j)
                disp = std::max(disp, std::abs(rs.roots[j] - prev.roots[j]));
            double gap = std::numeric_limits<double>::infinity();
            for (int a = 0; a < m; ++a)
                for (int b = a + 1; b < m; ++b)
                    gap = std::min(gap, std::abs(rs.roots[a] - rs.roots[b]));
            if (gap < collision_threshold && !tr.near_critical) {
                tr.near_critical = true;
                tr.warnings.push_back("branch values collide near theta=" +
                                      real_str(kTwoPi * i / n_theta));
            }
            if (disp >= gap / 2 && !critical_radius)
                throw StepTooCoarseError(
                    "theta step too coarse for reliable branch matching; increase n_theta",
                    "n_theta=" + std::to_string(n_theta) + " displacement=" + real_str(disp) +
                        " min_gap=" + real_str(gap));
        }

        if (i < n_theta) {
            tr.theta_nodes[i] = theta;
            path[i] = rs.roots;
            prev = std::move(rs);
        } else {
            // Monodromy: match the continued branches back to theta = 0.
            tr.monodromy.assign(m, 0);
            std::vector<bool> used(m, false);
            for (int j = 0; j < m; ++j) {
                double best = std::numeric_limits<double>::infinity();
                int arg = -1;
                for (int t = 0; t < m; ++t) {
                    if (used[t]) continue;
                    double d = std::abs(rs.roots[j] - path[0][t]);
                    if (d < best) {
                        best = d;
                        arg = t;
                    }
                }
                used[arg] = true;
                tr.monodromy[j] = arg;
                tr.max_closure_defect = std::max(tr.max_closure_defect, best);
            }
        }
    }

    // Concatenate monodromy cycles into closed components.
    std::vector<bool> seen(m, false);
    for (int start = 0; start < m; ++start) {
        if (seen[start]) continue;
        std::vector<Cplx> pts;
        std::vector<double> thetas;
        int leg = 0;
        for (int b = start;; b = tr.monodromy[b], ++leg) {
            seen[b] = true;
            for (int i = 0; i < n_theta; ++i) {
                pts.push_back(path[i][b]);
                thetas.push_back(kTwoPi * leg + tr.theta_nodes[i]);
            }
            if (tr.monodromy[b] == start) break;
        }
        tr.components.push_back(std::move(pts));
        tr.component_thetas.push_back(std::move(thetas));
    }
    return tr;
}

void write_trace_csv(const CurveTrace& tr, std::ostream& os) {
    os << "component_id,theta,re,im\n";
    for (std::size_t c = 0; c < tr.components.size(); ++c)
        for (std::size_t i = 0; i < tr.components[c].size(); ++i)
            os << c << ',' << real_str(tr.component_thetas[c][i]) << ','
               << real_str(tr.components[c][i].real()) << ','
               << real_str(tr.components[c][i].imag()) << '\n';
}

}  // namespace lemni

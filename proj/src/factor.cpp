#include "lemheights/polynomial.hpp"
#include "lemheights/rootfinding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

namespace lemni {

namespace {

// Conjugate-closure units over the computed roots: a (numerically) real root
// stands alone, a conjugate pair moves together. Integer factors never split
// a conjugate pair, so subsets of units cover all candidate factors.
struct Units {
    std::vector<std::vector<int>> groups;
    std::vector<int> degree;  // group sizes
};

Units conjugate_units(const std::vector<Cplx>& r) {
    Units u;
    std::vector<bool> used(r.size(), false);
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (used[i]) continue;
        double scale = 1 + std::abs(r[i]);
        if (std::fabs(r[i].imag()) <= 1e-6 * scale) {
            used[i] = true;
            u.groups.push_back({static_cast<int>(i)});
            u.degree.push_back(1);
            continue;
        }
        int mate = -1;
        double best = 1e-4 * scale;
        for (std::size_t j = i + 1; j < r.size(); ++j) {
            if (used[j]) continue;
            double d = std::abs(r[j] - std::conj(r[i]));
            if (d < best) {
                best = d;
                mate = static_cast<int>(j);
            }
        }
        used[i] = true;
        if (mate >= 0) {
            used[mate] = true;
            u.groups.push_back({static_cast<int>(i), mate});
            u.degree.push_back(2);
        } else {
            u.groups.push_back({static_cast<int>(i)});
            u.degree.push_back(1);
        }
    }
    return u;
}

// Round lc * prod (z - r_k) over the chosen roots to an integer polynomial;
// nullopt when any coefficient is not close to an integer.
std::optional<IntPolynomial> rounded_candidate(const Cplx lead, const std::vector<Cplx>& roots_in,
                                               const std::vector<int>& chosen) {
    std::vector<Cplx> c{lead};  // descending
    for (int idx : chosen) {
        c.push_back(Cplx(0));
        for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k)
            c[k] -= roots_in[idx] * c[k - 1];
    }
    std::reverse(c.begin(), c.end());  // ascending
    std::vector<Int> out(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
        double re = c[k].real(), im = c[k].imag();
        double nearest = std::round(re);
        if (std::fabs(im) > 0.45 || std::fabs(re - nearest) > 0.45) return std::nullopt;
        mpz_set_d(out[k].get_mpz_t(), nearest);
    }
    return IntPolynomial(std::move(out));
}

// One irreducible factor of the primitive polynomial q (positive lead), found
// by ascending-degree subset search with exact-division confirmation; nullopt
// means q is itself irreducible.
std::optional<IntPolynomial> find_factor(const IntPolynomial& q) {
    const int d = q.degree();
    if (d <= 1) return std::nullopt;
    RootSet rs = roots(ComplexPolynomial::from(q), RootOptions{1e-12, 400});
    Units units = conjugate_units(rs.roots);
    const int u = static_cast<int>(units.groups.size());
    const Cplx lead(to_double_nearest(q.lead()), 0.0);

    // Subset degrees, incrementally: deg[mask] = deg[mask without low bit] + that unit.
    std::vector<unsigned char> deg(1u << u, 0);
    for (unsigned mask = 1; mask < (1u << u); ++mask) {
        unsigned low = mask & (~mask + 1);
        int bit = __builtin_ctz(mask);
        deg[mask] = static_cast<unsigned char>(deg[mask ^ low] + units.degree[bit]);
    }

    std::vector<int> chosen;
    for (int s = 1; s <= d / 2; ++s) {
        for (unsigned mask = 1; mask < (1u << u); ++mask) {
            if (deg[mask] != s) continue;
            chosen.clear();
            for (int b = 0; b < u; ++b)
                if (mask & (1u << b))
                    for (int idx : units.groups[b]) chosen.push_back(idx);
            auto cand = rounded_candidate(lead, rs.roots, chosen);
            if (!cand || cand->degree() != s || cand->is_zero()) continue;
            IntPolynomial g = cand->primitive_part();
            if (g.degree() != s) continue;
            if (divide_exact(q, g)) return g;
        }
    }
    return std::nullopt;
}

}  // namespace

Factorization factor(const IntPolynomial& p, int degree_cap) {
    if (p.is_zero()) throw InputError("factor requires a nonzero polynomial");
    if (p.degree() > degree_cap)
        throw ResourceError("factorization degree cap exceeded",
                            "degree=" + std::to_string(p.degree()) +
                                " cap=" + std::to_string(degree_cap));

    Factorization out;
    out.content = p.content();
    if (p.degree() == 0) return out;

    IntPolynomial q = p.primitive_part();
    std::map<IntPolynomial, int> found;

    // z^t factors split off exactly.
    const IntPolynomial z = IntPolynomial::monomial(1);
    while (q.degree() >= 1 && q.coeff(0) == 0) {
        q = *divide_exact(q, z);
        ++found[z];
    }

    while (q.degree() >= 1) {
        IntPolynomial g = find_factor(q).value_or(q);
        int mult = 0;
        while (auto rest = divide_exact(q, g)) {
            q = std::move(*rest);
            ++mult;
        }
        found[g] += mult;
    }
    // primitive with positive lead, so the residue is exactly 1
    for (auto& [f, mult] : found) out.factors.emplace_back(f, mult);
    return out;
}

bool is_irreducible(const IntPolynomial& p, int degree_cap) {
    if (p.is_zero() || p.degree() < 1) return false;
    Factorization f = factor(p, degree_cap);
    return (f.content == 1 || f.content == -1) && f.factors.size() == 1 &&
           f.factors[0].second == 1;
}

}  // namespace lemni

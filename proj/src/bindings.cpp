#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lemheights/heights.hpp"
#include "lemheights/lemniscate.hpp"
#include "lemheights/numbertheory.hpp"
#include "lemheights/polynomial.hpp"
#include "lemheights/search.hpp"

namespace py = pybind11;
using namespace lemni;

namespace {

IntPolynomial poly_from_object(const py::object& obj) {
    if (py::isinstance<IntPolynomial>(obj)) return obj.cast<IntPolynomial>();
    if (py::isinstance<py::str>(obj)) return IntPolynomial::parse(obj.cast<std::string>());
    if (py::isinstance<py::sequence>(obj)) {
        std::vector<Int> coeffs;
        for (const auto& item : obj.cast<py::sequence>())
            coeffs.emplace_back(py::str(item).cast<std::string>(), 10);
        return IntPolynomial(std::move(coeffs));
    }
    throw InputError("expected a polynomial string, coefficient list, or IntPolynomial");
}

Rat rat_from_object(const py::object& obj) {
    if (py::isinstance<py::float_>(obj)) {
        Rat r(obj.cast<double>());
        r.canonicalize();
        return r;
    }
    if (py::isinstance<py::int_>(obj)) return Rat(Int(py::str(obj).cast<std::string>(), 10));
    return parse_rational(py::str(obj).cast<std::string>());
}

Lemniscate lemniscate_from(const py::object& v, const py::object& r) {
    return Lemniscate(poly_from_object(v), rat_from_object(r));
}

py::list coeffs_as_pyints(const IntPolynomial& p) {
    py::list out;
    for (const Int& c : p.coeffs()) out.append(py::int_(py::str(c.get_str())));
    return out;
}

py::dict rootset_dict(const RootSet& rs) {
    py::dict d;
    d["roots"] = rs.roots;
    d["radii"] = rs.radii;
    d["residuals"] = rs.residuals;
    return d;
}

}  // namespace

PYBIND11_MODULE(lemheights, m) {
    m.doc() = "Polynomial heights over lemniscates: generalized Mahler measure, L_p norms, "
              "equilibrium-measure quadrature, and extremal-polynomial searches";

    py::register_exception<Error>(m, "LemniscateError");

    py::class_<IntPolynomial>(m, "IntPolynomial")
        .def(py::init([](const py::object& obj) { return poly_from_object(obj); }))
        .def_static("parse", &IntPolynomial::parse)
        .def_property_readonly("degree", &IntPolynomial::degree)
        .def("coeffs", &coeffs_as_pyints)
        .def("derivative", &IntPolynomial::derivative)
        .def("__str__", &IntPolynomial::str)
        .def("__repr__", [](const IntPolynomial& p) { return "IntPolynomial('" + p.str() + "')"; })
        .def("__eq__", [](const IntPolynomial& a, const IntPolynomial& b) { return a == b; })
        .def("__hash__", [](const IntPolynomial& p) { return py::hash(py::str(p.str())); })
        .def("__add__", [](const IntPolynomial& a, const IntPolynomial& b) { return a + b; })
        .def("__sub__", [](const IntPolynomial& a, const IntPolynomial& b) { return a - b; })
        .def("__mul__", [](const IntPolynomial& a, const IntPolynomial& b) { return a * b; })
        .def("__neg__", [](const IntPolynomial& a) { return -a; })
        .def("__pow__", &IntPolynomial::pow);

    py::class_<Lemniscate>(m, "Lemniscate")
        .def(py::init(&lemniscate_from), py::arg("V"), py::arg("r"))
        .def_property_readonly("m", &Lemniscate::m)
        .def_property_readonly("r", &Lemniscate::r)
        .def("capacity", &Lemniscate::capacity)
        .def("green", [](const Lemniscate& lm, Cplx z) { return green(lm, z); })
        .def("equilibrium_potential",
             [](const Lemniscate& lm, Cplx z) { return equilibrium_potential(lm, z); })
        .def(
            "classify",
            [](const Lemniscate& lm, Cplx z, double tol) {
                switch (classify(lm, z, tol)) {
                    case Region::Interior: return "interior";
                    case Region::OnCurve: return "on-curve";
                    default: return "exterior";
                }
            },
            py::arg("z"), py::arg("tol") = 1e-9)
        .def("__repr__", [](const Lemniscate& lm) { return "Lemniscate" + lm.str(); });

    m.def("cyclotomic", [](long j) { return cyclotomic(j); });
    m.def("compose", &compose);
    m.def("factor", [](const py::object& p) {
        Factorization f = factor(poly_from_object(p));
        py::list factors;
        for (const auto& [g, mult] : f.factors) factors.append(py::make_tuple(g, mult));
        py::dict d;
        d["content"] = py::int_(py::str(f.content.get_str()));
        d["factors"] = factors;
        return d;
    });
    m.def("resultant", [](const py::object& p, const py::object& v) {
        return py::int_(py::str(resultant(poly_from_object(p), poly_from_object(v)).get_str()));
    });
    m.def(
        "roots",
        [](const py::object& p, double tol) {
            return rootset_dict(roots(ComplexPolynomial::from(poly_from_object(p)), tol));
        },
        py::arg("p"), py::arg("tol") = 1e-13);

    m.def(
        "mahler",
        [](const py::object& p, const Lemniscate& lm) {
            return mahler_closed(poly_from_object(p), lm);
        },
        py::arg("p"), py::arg("lemniscate"));
    m.def(
        "mahler_quadrature",
        [](const py::object& p, const Lemniscate& lm, int n_nodes) {
            ValueWithError v = mahler_quadrature(poly_from_object(p), lm, n_nodes);
            return py::make_tuple(v.value, v.error);
        },
        py::arg("p"), py::arg("lemniscate"), py::arg("n_nodes") = 1 << 12);
    m.def(
        "lp_norm",
        [](const py::object& p, const Lemniscate& lm, double pexp, int n_nodes) {
            ValueWithError v = lp_norm(poly_from_object(p), lm, pexp, n_nodes);
            return py::make_tuple(v.value, v.error);
        },
        py::arg("p"), py::arg("lemniscate"), py::arg("p_exponent"), py::arg("n_nodes") = 1 << 12);
    m.def(
        "sup_norm",
        [](const py::object& p, const Lemniscate& lm, int n_theta) {
            return sup_norm(poly_from_object(p), lm, n_theta);
        },
        py::arg("p"), py::arg("lemniscate"), py::arg("n_theta") = 1 << 12);
    m.def(
        "resultant_bound",
        [](const py::object& p, const Lemniscate& lm) {
            ResultantBound rb = resultant_bound(poly_from_object(p), lm);
            py::dict d;
            d["bound"] = rb.bound;
            d["mahler"] = rb.mahler;
            d["slack"] = rb.slack;
            d["holds"] = rb.holds;
            d["resultant"] = py::int_(py::str(rb.res.get_str()));
            return d;
        },
        py::arg("p"), py::arg("lemniscate"));

    m.def(
        "trace",
        [](const Lemniscate& lm, int n_theta, double tol) {
            CurveTrace tr = trace(lm, n_theta, tol);
            py::dict d;
            d["components"] = tr.components;
            d["monodromy"] = tr.monodromy;
            d["near_critical"] = tr.near_critical;
            d["warnings"] = tr.warnings;
            return d;
        },
        py::arg("lemniscate"), py::arg("n_theta") = 256, py::arg("tol") = 1e-9);

    m.def(
        "kronecker_classify",
        [](const py::object& p, const Lemniscate& lm, long max_index) {
            KroneckerVerdict v = kronecker_classify(poly_from_object(p), lm, max_index);
            py::dict d;
            switch (v.kind) {
                case KroneckerKind::DividesV: d["kind"] = "DividesV"; break;
                case KroneckerKind::CyclotomicLift: d["kind"] = "CyclotomicLift"; break;
                case KroneckerKind::NotUnitHeight: d["kind"] = "NotUnitHeight"; break;
            }
            d["mahler"] = v.mahler;
            if (v.cyclotomic_index) d["cyclotomic_index"] = *v.cyclotomic_index;
            if (v.witness) d["witness"] = v.witness->str();
            return d;
        },
        py::arg("p"), py::arg("lemniscate"), py::arg("max_index") = 300);

    m.def(
        "lift_measure_identity",
        [](const py::object& q, const Lemniscate& lm) {
            LiftReport rep = lift_measure_identity(poly_from_object(q), lm);
            py::dict d;
            d["m_of_q"] = rep.m_of_q;
            d["m_l_of_composition"] = rep.m_l_of_composition;
            d["relative_gap"] = rep.relative_gap;
            d["composition"] = rep.composition.str();
            return d;
        },
        py::arg("q"), py::arg("lemniscate"));

    m.def(
        "subordination_check",
        [](const py::object& p, const Lemniscate& lm, std::vector<double> grid, int n_nodes,
           int n_theta) {
            SubordinationReport rep =
                subordination_check(poly_from_object(p), lm, std::move(grid), n_nodes, n_theta);
            py::dict d;
            d["mahler"] = rep.mahler;
            py::list lp;
            for (const auto& e : rep.lp) lp.append(py::make_tuple(e.p, e.value, e.error));
            d["lp"] = lp;
            d["sup"] = rep.sup;
            d["chain_ok"] = rep.chain_ok;
            d["monotone_ok"] = rep.monotone_ok;
            return d;
        },
        py::arg("p"), py::arg("lemniscate"),
        py::arg("p_grid") = std::vector<double>{0.5, 1, 2, 4, 8}, py::arg("n_nodes") = 1 << 12,
        py::arg("n_theta") = 1 << 12);

    m.def(
        "enumerate_conjugate_sets",
        [](const Lemniscate& lm, long max_index, int max_degree) {
            ConjugateSetReport rep = enumerate_conjugate_sets(lm, max_index, max_degree);
            py::list sets;
            for (const auto& s : rep.sets) {
                py::dict d;
                d["minimal_polynomial"] = s.minimal_polynomial.str();
                d["cyclotomic_index"] = s.cyclotomic_index;
                d["interior"] = s.interior;
                d["roots"] = s.roots.roots;
                sets.append(d);
            }
            return sets;
        },
        py::arg("lemniscate"), py::arg("max_index") = 12, py::arg("max_degree") = 8);

    m.def(
        "no_sets_below_one",
        [](const Lemniscate& lm, long coeff_bound, int max_degree) {
            EmptinessReport rep = no_sets_below_one(lm, coeff_bound, max_degree);
            py::dict d;
            d["scanned"] = rep.scanned;
            d["hits"] = rep.hits;
            d["closest_near_miss"] = rep.closest_near_miss;
            if (rep.near_miss_witness) d["near_miss_witness"] = rep.near_miss_witness->str();
            return d;
        },
        py::arg("lemniscate"), py::arg("coeff_bound") = 3, py::arg("max_degree") = 3);

    m.def(
        "lehmer_scan",
        [](const Lemniscate& lm, int max_degree, long coeff_bound, double gap) {
            LehmerScanReport rep = lehmer_scan(lm, max_degree, coeff_bound, gap);
            py::dict d;
            if (rep.smallest_above_one) d["smallest_above_one"] = *rep.smallest_above_one;
            if (rep.witness) d["witness"] = rep.witness->str();
            d["scanned"] = rep.scanned;
            if (rep.circle_minimum) d["circle_minimum"] = *rep.circle_minimum;
            d["lower_ok"] = rep.lower_ok;
            d["lift_ok"] = rep.lift_ok;
            return d;
        },
        py::arg("lemniscate"), py::arg("max_degree") = 4, py::arg("coeff_bound") = 1,
        py::arg("gap") = 1e-6);

    m.def(
        "min_height_search",
        [](const py::object& v, const py::object& r, int k, const std::string& p, long coeff_bound,
           bool prune) {
            SearchSpec spec{lemniscate_from(v, r), k, HeightSelector::parse(p), coeff_bound,
                            prune};
            SearchResult res = min_height_search(spec);
            py::dict d;
            d["min_value"] = res.min_value;
            py::list argmins;
            for (const auto& a : res.argmins) argmins.append(a.str());
            d["argmins"] = argmins;
            d["scanned"] = res.scanned;
            d["pruned"] = res.pruned;
            d["case"] = theorem_case_str(res.the_case);
            d["matches_theorem"] = res.matches_theorem;
            return d;
        },
        py::arg("V"), py::arg("r"), py::arg("k") = 1, py::arg("p") = "0",
        py::arg("coeff_bound") = 1, py::arg("prune") = true);
}

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tfq/io.hpp"
#include "tfq/quantum.hpp"
#include "tfq/verify.hpp"

namespace py = pybind11;
using namespace tfq;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

std::vector<cplx> vec_of(const CArray& a) {
    const cplx* p = a.data();
    return std::vector<cplx>(p, p + a.size());
}

// Both go through the ShapeContainer overload explicitly: brace-initializing
// array_t with a single extent picks its (count, ptr) constructor, which
// builds a stride-0 array in the pybind11 shipped here.
py::array_t<cplx> array_1d(const std::vector<cplx>& v) {
    return py::array_t<cplx>(
        py::array::ShapeContainer{static_cast<py::ssize_t>(v.size())}, v.data());
}

py::array_t<cplx> array_2d(const std::vector<cplx>& v, int64_t rows, int64_t cols) {
    return py::array_t<cplx>(
        py::array::ShapeContainer{static_cast<py::ssize_t>(rows),
                                  static_cast<py::ssize_t>(cols)},
        v.data());
}

Signal signal_of(const FiniteAbelianGroup& g, const CArray& a) {
    if (a.size() != g.order())
        fail(ErrorCode::shape_error, "expected " + std::to_string(g.order()) +
                                         " values for " + g.spec_string());
    return Signal{g, vec_of(a)};
}

std::vector<Coords> coords_list(const FiniteAbelianGroup& g,
                                const std::vector<int64_t>& flats) {
    std::vector<Coords> out;
    out.reserve(flats.size());
    for (int64_t f : flats) out.push_back(g.coords_of(f));
    return out;
}

}  // namespace

PYBIND11_MODULE(_tfq, m) {
    m.doc() = "Zak and Weyl-Heisenberg transforms over finite abelian groups";

    py::register_exception<Error>(m, "TfqError");

    py::class_<FiniteAbelianGroup>(m, "Group")
        .def(py::init([](const std::string& spec) { return parse_group_spec(spec); }),
             py::arg("spec"))
        .def_property_readonly("spec", &FiniteAbelianGroup::spec_string)
        .def_property_readonly("order", &FiniteAbelianGroup::order)
        .def_property_readonly("moduli",
                               [](const FiniteAbelianGroup& g) { return g.moduli(); })
        .def("__eq__", [](const FiniteAbelianGroup& a,
                          const FiniteAbelianGroup& b) { return a == b; })
        .def("__repr__", [](const FiniteAbelianGroup& g) {
            return "Group('" + g.spec_string() + "')";
        });

    py::class_<Subgroup>(m, "Subgroup")
        .def_property_readonly("spec", &Subgroup::spec_string)
        .def_property_readonly("order", &Subgroup::order)
        .def_property_readonly("aligned", &Subgroup::aligned)
        .def_property_readonly("group", &Subgroup::parent)
        .def_property_readonly("elements",
                               [](const Subgroup& s) {
                                   return coords_list(s.parent(), s.elements());
                               })
        .def("__repr__", [](const Subgroup& s) {
            return "Subgroup('" + s.spec_string() + "' of " + s.parent().spec_string() + ")";
        });

    m.def(
        "subgroup",
        [](const FiniteAbelianGroup& g, const std::string& spec) {
            return parse_subgroup_spec(g, spec);
        },
        py::arg("group"), py::arg("spec"),
        "Parse a 'div:...' or 'gen:(...)' subgroup of the group.");

    m.def(
        "annihilator", [](const Subgroup& s) { return annihilator(s); },
        py::arg("subgroup"));

    py::class_<Window>(m, "Window")
        .def_property_readonly("values",
                               [](const Window& w) { return array_1d(w.g.values); })
        .def_property_readonly("valid", &Window::validated)
        .def_property_readonly("max_deviation",
                               [](const Window& w) { return w.max_deviation; })
        .def_property_readonly("tol", [](const Window& w) { return w.tol; })
        .def_property_readonly("subgroup",
                               [](const Window& w) { return w.lattice.subgroup; })
        .def("__repr__", [](const Window& w) {
            return std::string("Window(") + (w.validated() ? "valid" : "invalid") +
                   ", max_deviation=" + std::to_string(w.max_deviation) + ")";
        });

    m.def(
        "check_window",
        [](const Subgroup& sub, const CArray& values, double tol) {
            return check_window(signal_of(sub.parent(), values), sub, tol);
        },
        py::arg("subgroup"), py::arg("values"), py::arg("tol") = 1e-8,
        "Test a unit-norm signal against the constant-modulus criterion.");

    m.def(
        "window_from_phases",
        [](const Subgroup& sub, const std::vector<double>& phases, double tol) {
            return window_from_phases(phases, sub, tol);
        },
        py::arg("subgroup"), py::arg("phases"), py::arg("tol") = 1e-8,
        "Build the valid window with the given Zak phases on the transversal grid.");

    m.def(
        "lattice_pairs",
        [](const Subgroup& sub) {
            Lattice lat = make_lattice(sub);
            std::vector<std::pair<Coords, Coords>> out;
            out.reserve(lat.delta.size());
            for (const auto& [b, bs] : lat.delta)
                out.emplace_back(sub.parent().coords_of(b), sub.parent().coords_of(bs));
            return out;
        },
        py::arg("subgroup"),
        "Coefficient order of the lattice Delta = B x B_*: (b, b_*) coordinate pairs.");

    m.def(
        "fourier",
        [](const FiniteAbelianGroup& g, const CArray& values, bool fast) {
            Signal f = signal_of(g, values);
            return array_1d((fast ? fourier_fast(f) : fourier(f)).values);
        },
        py::arg("group"), py::arg("values"), py::arg("fast") = true);

    m.def(
        "inverse_fourier",
        [](const FiniteAbelianGroup& g, const CArray& values) {
            return array_1d(inverse_fourier(signal_of(g, values)).values);
        },
        py::arg("group"), py::arg("values"));

    m.def(
        "zak",
        [](const Subgroup& sub, const CArray& values, bool full) {
            Signal f = signal_of(sub.parent(), values);
            if (full) {
                ZakArray z = zak_direct(f, sub);
                const int64_t n = sub.parent().order();
                return array_2d(z.values, n, n);
            }
            ZakArray z = zak_fast(f, sub);
            CosetTables t = coset_tables(sub);
            return array_2d(z.values, t.t1_size(), t.t2_size());
        },
        py::arg("subgroup"), py::arg("values"), py::arg("full") = false,
        "Zak table: rows are T1 representatives (or all of A when full), "
        "columns T2 characters (or all of A*).");

    m.def(
        "inverse_zak",
        [](const Subgroup& sub, const CArray& table) {
            if (table.ndim() != 2)
                fail(ErrorCode::shape_error, "Zak table must be a 2-d array");
            const int64_t n = sub.parent().order();
            CosetTables t = coset_tables(sub);
            ZakDomain domain;
            if (table.shape(0) == n && table.shape(1) == n)
                domain = ZakDomain::full;
            else if (table.shape(0) == t.t1_size() && table.shape(1) == t.t2_size())
                domain = ZakDomain::restricted_t;
            else
                fail(ErrorCode::shape_error, "Zak table shape matches neither domain");
            ZakArray z{sub, domain, vec_of(table)};
            return array_1d(inverse_zak(z, t).values);
        },
        py::arg("subgroup"), py::arg("table"),
        "Invert a Zak table given in either domain, recognized by shape.");

    m.def(
        "analyze",
        [](const Window& w, const CArray& values) {
            return array_1d(wh_analyze(signal_of(w.g.group, values), w).values);
        },
        py::arg("window"), py::arg("values"),
        "Coefficients <g_(b, b_*), f> in lattice order.");

    m.def(
        "synthesize",
        [](const Window& w, const CArray& alpha) {
            if (alpha.size() != static_cast<int64_t>(w.lattice.delta.size()))
                fail(ErrorCode::shape_error, "coefficient count must match the lattice");
            WHCoefficients c{w.lattice.subgroup, vec_of(alpha)};
            return array_1d(wh_synthesize(c, w).values);
        },
        py::arg("window"), py::arg("alpha"));

    m.def(
        "qzt_matrix",
        [](const Subgroup& sub, bool direct) {
            CosetTables t = coset_tables(sub);
            CMatrix m2 = direct ? direct_qzt_matrix(t) : qzt_pipeline(t).compose_matrix();
            return array_2d(m2.a, m2.dim, m2.dim);
        },
        py::arg("subgroup"), py::arg("direct") = false,
        "Composed pipeline matrix (or the direct definition) of the quantum "
        "Zak transform.");

    m.def(
        "qzt_apply",
        [](const Subgroup& sub, const CArray& state) {
            Signal f = signal_of(sub.parent(), state);
            return array_1d(qzt_pipeline(coset_tables(sub)).apply(f.values));
        },
        py::arg("subgroup"), py::arg("state"));

    m.def(
        "qwht_matrix",
        [](const Window& w, bool direct) {
            if (direct) {
                CMatrix m2 = direct_qwht_matrix(w);
                return array_2d(m2.a, m2.dim, m2.dim);
            }
            IsomorphismPhi phi = make_phi(w.g.group, w.lattice.subgroup);
            CMatrix m2 = qwht_pipeline(w, phi).compose_matrix();
            return array_2d(m2.a, m2.dim, m2.dim);
        },
        py::arg("window"), py::arg("direct") = false,
        "Composed pipeline matrix (or the direct translate-analysis "
        "definition) of the quantum Weyl-Heisenberg transform.");

    m.def(
        "qwht_apply",
        [](const Window& w, const CArray& state) {
            Signal f = signal_of(w.g.group, state);
            IsomorphismPhi phi = make_phi(w.g.group, w.lattice.subgroup);
            return array_1d(qwht_pipeline(w, phi).apply(f.values));
        },
        py::arg("window"), py::arg("state"));

    m.def(
        "verify",
        [](const std::string& suite, double tol) {
            VerifyConfig cfg;
            cfg.tol_override = tol;
            SuiteReport rep = run_suites(suite, cfg);
            return py::make_tuple(rep.all_pass, report_to_json(rep));
        },
        py::arg("suite") = "all", py::arg("tol") = 0.0,
        "Run a named verification suite ('zak', 'window', 'fgp', 'qzt', "
        "'qwht' or 'all'); returns (passed, report_json).");
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "isospec/ball_spectra.hpp"
#include "isospec/catalog.hpp"
#include "isospec/grid_eig.hpp"
#include "isospec/runner.hpp"
#include "isospec/shape.hpp"
#include "isospec/specfun.hpp"
#include "isospec/spectrum.hpp"
#include "isospec/two_ball.hpp"

namespace py = pybind11;
using namespace isospec;

namespace {

py::dict report_dict(const InequalityReport& r) {
    py::dict d;
    d["id"] = r.id;
    d["status"] = std::string(to_string(r.status));
    d["family"] = std::string(to_string(r.family));
    d["domain"] = r.domain_label;
    d["m"] = r.m;
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["slack"] = r.slack;
    d["holds"] = r.holds;
    d["tolerance"] = r.tolerance_used;
    d["lower"] = r.lower ? py::object(py::float_(*r.lower)) : py::object(py::none());
    d["citation"] = r.citation;
    return d;
}

py::dict chain_dict(const ChainReport& c) {
    py::dict d;
    d["m"] = c.m;
    d["lambda_next"] = c.lambda_next;
    d["yang1_bound"] = c.yang1_bound;
    d["yang2_bound"] = c.yang2_bound;
    d["ppw_bound"] = c.ppw_bound;
    d["hp_slack"] = c.hp_slack;
    d["bounds_ordered"] = c.bounds_ordered;
    d["implications"] = c.implications;
    d["ok"] = c.ok();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Eigenvalue inequality toolkit: ball spectra, grid eigensolvers, two-ball constants, catalog checks";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<CatalogInputError>(m, "CatalogInputError", PyExc_ValueError);

    py::enum_<ProblemKind>(m, "ProblemKind")
        .value("dirichlet", ProblemKind::dirichlet)
        .value("neumann", ProblemKind::neumann)
        .value("clamped", ProblemKind::clamped)
        .value("buckling", ProblemKind::buckling);

    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("kind", &Spectrum::kind)
        .def_readonly("dimension", &Spectrum::dimension)
        .def_readonly("values", &Spectrum::values)
        .def_readonly("uncertainty", &Spectrum::uncertainty)
        .def_readonly("domain_label", &Spectrum::domain_label)
        .def_readonly("mesh_width", &Spectrum::mesh_width)
        .def_property_readonly("provenance", [](const Spectrum& s) { return std::string(to_string(s.provenance)); })
        .def("__len__", &Spectrum::size)
        .def("__repr__", [](const Spectrum& s) {
            return "<Spectrum " + std::string(to_string(s.kind)) + " " + s.domain_label + " (" +
                   std::to_string(s.size()) + " values, " + std::string(to_string(s.provenance)) + ")>";
        });

    py::class_<Shape>(m, "Shape")
        .def_static("parse", &Shape::parse, py::arg("text"))
        .def_static("disk", &Shape::disk, py::arg("radius"))
        .def_static("ellipse", &Shape::ellipse, py::arg("semi_x"), py::arg("semi_y"))
        .def_static("rectangle", &Shape::rectangle, py::arg("a"), py::arg("b"))
        .def_static("lshape", &Shape::lshape, py::arg("side"), py::arg("arm"))
        .def_static("annulus", &Shape::annulus, py::arg("r_in"), py::arg("r_out"))
        .def_property_readonly("area", &Shape::area)
        .def("describe", &Shape::describe)
        .def("__repr__", [](const Shape& s) { return "<Shape " + s.describe() + ">"; });

    m.def("bessel_zero", [](double nu, int k) { return bessel_zero(nu, k).value; }, py::arg("nu"), py::arg("k"),
          "k-th positive zero of J_nu");

    auto ball = [](int n, double radius) {
        BallSpec b{n, radius};
        b.validate();
        return b;
    };
    m.def("dirichlet_ball", [ball](int n, double r, int count) { return dirichlet_ball(ball(n, r), count); },
          py::arg("n"), py::arg("radius"), py::arg("count"));
    m.def("neumann_ball", [ball](int n, double r, int count) { return neumann_ball(ball(n, r), count); },
          py::arg("n"), py::arg("radius"), py::arg("count"));
    m.def("clamped_ball", [ball](int n, double r, int count) { return clamped_ball(ball(n, r), count); },
          py::arg("n"), py::arg("radius"), py::arg("count") = 2);
    m.def("buckling_ball", [ball](int n, double r, int count) { return buckling_ball(ball(n, r), count); },
          py::arg("n"), py::arg("radius"), py::arg("count") = 2);
    m.def("rectangle_spectrum", &rectangle_spectrum, py::arg("a"), py::arg("b"), py::arg("kind"), py::arg("count"));

    m.def("c_constant", &c_constant, py::arg("n"));
    m.def("d_constant", &d_constant, py::arg("n"));
    m.def(
        "d_constant_result",
        [](int n) {
            const TwoBallResult r = d_constant_result(n);
            py::dict d;
            d["n"] = r.n;
            d["a"] = r.minimizer_a;
            d["t"] = std::pow(r.minimizer_a, n);
            d["J"] = r.J;
            d["d_n"] = r.d_n;
            return d;
        },
        py::arg("n"));
    m.def(
        "j_curve",
        [](int n, const std::vector<double>& t) {
            py::list out;
            for (const auto& p : j_curve(n, t)) out.append(py::make_tuple(p.t, p.ratio, p.ok));
            return out;
        },
        py::arg("n"), py::arg("t"), "[(t, J(t)/Gamma_1(B_1), ok), ...]");

    m.def(
        "grid_spectrum",
        [](const Shape& shape, ProblemKind kind, double h, int count) {
            py::gil_scoped_release nogil;
            return smallest_eigs(assemble(rasterize(shape, h, shape.describe()), kind), count);
        },
        py::arg("shape"), py::arg("kind"), py::arg("h"), py::arg("count"), "Eigenvalues on one mesh level");
    m.def(
        "convergence_study",
        [](const Shape& shape, ProblemKind kind, double h, int levels, int count) {
            ConvergenceStudy st;
            {
                py::gil_scoped_release nogil;
                st = convergence_study(shape, shape.describe(), kind, h, levels, count);
            }
            return py::make_tuple(st.levels, st.extrapolated);
        },
        py::arg("shape"), py::arg("kind"), py::arg("h"), py::arg("levels") = 2, py::arg("count") = 6,
        "Returns (levels, extrapolated)");

    m.def("catalog", [] {
        py::list out;
        for (const auto& d : inequality_catalog()) {
            py::dict e;
            e["id"] = d.id;
            e["status"] = std::string(to_string(d.status));
            e["family"] = std::string(to_string(d.family));
            e["statement"] = d.statement;
            e["citation"] = d.citation;
            e["requires"] = d.requirement.text;
            out.append(e);
        }
        return out;
    });
    m.def(
        "evaluate_suite",
        [](std::optional<Spectrum> dirichlet, std::optional<Spectrum> neumann, std::optional<Spectrum> clamped,
           std::optional<Spectrum> buckling, int n, double volume, int m_max, int k_max,
           const std::vector<std::string>& only, double tolerance_scale) {
            SpectraBundle b{dirichlet, neumann, clamped, buckling};
            py::list out;
            for (const auto& r : evaluate_suite(b, n, volume, m_max, k_max, only, EvalOptions{tolerance_scale}))
                out.append(report_dict(r));
            return out;
        },
        py::kw_only(), py::arg("dirichlet") = py::none(), py::arg("neumann") = py::none(),
        py::arg("clamped") = py::none(), py::arg("buckling") = py::none(), py::arg("n") = 2, py::arg("volume"),
        py::arg("m_max") = 8, py::arg("k_max") = 10, py::arg("only") = std::vector<std::string>{},
        py::arg("tolerance_scale") = 1.0);
    m.def(
        "chain_check", [](const Spectrum& d, int n, int m_) { return chain_dict(chain_check(d, n, m_)); },
        py::arg("dirichlet"), py::arg("n"), py::arg("m"));

    m.def(
        "verify",
        [](const std::string& config_text, bool write) {
            const RunConfig cfg = parse_config(config_text);
            VerifyResult res;
            {
                py::gil_scoped_release nogil;
                res = run_verify(cfg, write);
            }
            py::dict d;
            d["exit_code"] = res.exit_code();
            d["proven_held"] = res.tally.proven_held;
            d["proven_failed"] = res.tally.proven_failed;
            d["conjecture_held"] = res.tally.conjecture_held;
            d["conjecture_failed"] = res.tally.conjecture_failed;
            d["informational"] = res.tally.informational;
            d["chain_failures"] = res.chain_failures;
            py::list reports, errors;
            for (const auto& dr : res.domains)
                for (const auto& r : dr.reports) reports.append(report_dict(r));
            for (const auto& e : res.errors) errors.append(py::make_tuple(e.domain, e.problem, e.message));
            d["reports"] = reports;
            d["errors"] = errors;
            return d;
        },
        py::arg("config_json"), py::arg("write") = false, "Runs a verify configuration given as JSON text");
}

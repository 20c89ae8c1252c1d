#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "argvar/cli.hpp"
#include "argvar/errors.hpp"

namespace py = pybind11;
using namespace argvar;

namespace {

geom::Region disk(Cx center, double radius) {
    return geom::Region{geom::Disk{center, radius}};
}

geom::Curve circle(Cx center, double radius) {
    return geom::Curve{{geom::ArcSeg{center, radius, 0.0, kTwoPi}}};
}

}  // namespace

PYBIND11_MODULE(_argvar, m) {
    m.doc() = "Numerical checks for argument-variation and Bernstein-index "
              "inequalities of holomorphic functions";
    m.attr("__version__") = cli::kToolVersion;

    // translators run most-recently-registered first, so the base class goes
    // first and the derived classes shadow it
    py::register_exception<Error>(m, "ArgvarError");
    py::register_exception<ParseError>(m, "ParseError");
    py::register_exception<ValidationError>(m, "ValidationError");
    py::register_exception<HypothesisError>(m, "HypothesisError");

    m.def("known_checks", [] { return cli::known_checks(); },
          "Names of the supported inequality checks.");

    m.def(
        "run_scenario",
        [](const std::string& text) {
            return cli::report_json(cli::run_scenario(
                cli::parse_scenario_text(text, "<python>")));
        },
        py::arg("scenario_json"),
        "Parse a scenario from its JSON text, run every requested check, and "
        "return the report as JSON text.");

    m.def(
        "run_scenario_file",
        [](const std::string& path) {
            return cli::report_json(cli::run_scenario(cli::parse_scenario(path)));
        },
        py::arg("path"), "Run a scenario file and return the report JSON.");

    m.def(
        "generate_suite",
        [](uint64_t seed, int n, const std::string& kind) {
            std::vector<std::string> out;
            for (const auto& s : cli::generate_suite(seed, n, kind))
                out.push_back(cli::serialize_scenario(s));
            return out;
        },
        py::arg("seed"), py::arg("n"), py::arg("kind"),
        "Deterministic random scenarios of the given kind, as JSON texts.");

    m.def(
        "count_zeros",
        [](const std::vector<Cx>& roots, Cx center, double radius) {
            return bounds::count_zeros(holo::from_roots(roots), disk(center, radius));
        },
        py::arg("roots"), py::arg("center") = Cx(0.0), py::arg("radius") = 1.0,
        "Zeros (with multiplicity) of the monic polynomial with the given roots "
        "inside the disk, via the argument principle.");

    m.def(
        "variation_of_argument",
        [](const std::vector<Cx>& roots, Cx center, double radius) {
            return double(bounds::variation_of_argument(holo::from_roots(roots),
                                                        circle(center, radius)));
        },
        py::arg("roots"), py::arg("center") = Cx(0.0), py::arg("radius") = 1.0,
        "Total variation of arg(p) along the circle, p the monic polynomial "
        "with the given roots.");

    m.def(
        "bernstein_index",
        [](const std::vector<Cx>& roots, double r, double R) {
            auto b = bounds::bernstein_index(holo::from_roots(roots), disk(0.0, r),
                                             disk(0.0, R));
            return py::make_tuple(b.M, b.m, b.B);
        },
        py::arg("roots"), py::arg("r"), py::arg("R"),
        "(M, m, B) of the monic polynomial between concentric disks of radii "
        "r and R.");
}

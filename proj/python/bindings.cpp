#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "goldilocks/corpus.hpp"
#include "goldilocks/runner.hpp"

namespace py = pybind11;
using namespace gold;

namespace {

CVec point(const std::vector<Complex>& z) { return CVec(z); }

std::vector<Complex> coords(const CVec& v) {
    std::vector<Complex> out(v.dim());
    for (std::size_t j = 0; j < v.dim(); ++j) out[j] = v[j];
    return out;
}

std::pair<double, double> pair(const MetricEstimate& e) { return {e.lower, e.upper}; }

// Structured results cross the boundary as JSON text; the Python side parses them.
std::string dump(const Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Kobayashi-geometry estimates on bounded domains in C^d";
    m.attr("__version__") = GOLDILOCKS_VERSION;

    // translators run most-recent first, so derived types are registered after their bases
    auto& base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    auto& invalid = py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
    py::register_exception<SchemaError>(m, "SchemaError", invalid.ptr());
    py::register_exception<OutsideDomain>(m, "OutsideDomain", base.ptr());
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());

    py::class_<DomainSpec>(m, "Domain")
        .def_static("unit_disk", &DomainSpec::unit_disk)
        .def_static("unit_ball", &DomainSpec::unit_ball, py::arg("dim"))
        .def_static("polydisk", &DomainSpec::polydisk, py::arg("radii"))
        .def_static("egg", &DomainSpec::egg, py::arg("exponents"))
        .def_static("corpus", [](const std::string& name) { return corpus_domain(name).domain; }, py::arg("name"))
        .def_static("from_json", [](const std::string& s) { return domain_from_json(Json::parse(s)); })
        .def("to_json", [](const DomainSpec& d) { return dump(to_json(d)); })
        .def_property_readonly("dim", &DomainSpec::dim)
        .def_property_readonly("kind", [](const DomainSpec& d) { return to_string(d.kind()); })
        .def("contains", [](const DomainSpec& d, const std::vector<Complex>& z) { return membership(d, point(z)); })
        .def("boundary_distance", [](const DomainSpec& d, const std::vector<Complex>& z) { return boundary_distance(d, point(z)); })
        .def("sample_interior",
             [](const DomainSpec& d, std::size_t n, std::uint64_t seed) {
                 Rng rng(seed);
                 std::vector<std::vector<Complex>> out;
                 for (const auto& p : sample_interior(d, n, rng)) out.push_back(coords(p));
                 return out;
             },
             py::arg("n"), py::arg("seed") = 1)
        .def("__repr__", [](const DomainSpec& d) { return "<Domain " + to_string(d.kind()) + " dim=" + std::to_string(d.dim()) + ">"; });

    m.def("infinitesimal_metric",
          [](const DomainSpec& d, const std::vector<Complex>& z, const std::vector<Complex>& v) {
              return pair(infinitesimal_metric(d, point(z), point(v)));
          },
          py::arg("domain"), py::arg("z"), py::arg("v"), "(lower, upper) bounds on k(z; v)");
    m.def("distance",
          [](const DomainSpec& d, const std::vector<Complex>& x, const std::vector<Complex>& y, bool optimize) {
              DistanceOptions o;
              o.optimize_path = optimize;
              py::gil_scoped_release release;
              return pair(distance(d, point(x), point(y), o));
          },
          py::arg("domain"), py::arg("x"), py::arg("y"), py::arg("optimize_path") = false);
    m.def("estimate_M", [](const DomainSpec& d, double r) { return dump(to_json(estimate_M(d, r))); }, py::arg("domain"), py::arg("r"));
    m.def("condition1",
          [](const DomainSpec& d, double r_min, double r_max, std::size_t levels) {
              py::gil_scoped_release release;
              return dump(to_json(condition1_test(d, geometric_grid(r_min, r_max, levels))));
          },
          py::arg("domain"), py::arg("r_min") = 1e-3, py::arg("r_max") = 0.5, py::arg("levels") = 16);
    m.def("psi_threshold", [](double s) { return dump(to_json(psi_threshold_test(s))); }, py::arg("s"));
    m.def("run",
          [](const std::string& config, const std::string& out_dir) {
              ExperimentConfig c = parse_config(Json::parse(config));
              RunOverrides ov;
              if (!out_dir.empty()) ov.output_dir = out_dir;
              py::gil_scoped_release release;
              return dump(run(c, ov).to_json());
          },
          py::arg("config"), py::arg("out_dir") = "");
    m.def("validate_config", [](const std::string& config) { parse_config(Json::parse(config)); }, py::arg("config"));
    m.def("corpus", [] { return dump(corpus_json()); });
}

#include "nearhol/cli.hpp"
#include "nearhol/serialize.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace nearhol;

namespace {

RootSystemData root_data(const std::string& space) { return build_root_data(HermitianType::parse(space)); }

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectra and L2 tests for nearly holomorphic sections";

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);

    m.def("structure_constants", [](const std::string& space) {
        const auto c = root_data(space).constants;
        py::dict d;
        d["r"] = c.r;
        d["a"] = c.a;
        d["b"] = c.b;
        d["g"] = c.g;
        d["n"] = c.n;
        return d;
    }, py::arg("space"), "Structure constants (r, a, b, g, n) of a space selector such as 'I:2,3'.");

    m.def("spectrum_json", [](const std::string& space, const std::string& bundle, int cutoff) {
        const auto data = root_data(space);
        auto table = spectrum_support(BundleSpec::parse(bundle, data), cutoff, data);
        table.space = data.type.to_string();
        return write_table(table, Format::Json);
    }, py::arg("space"), py::arg("bundle") = "line:0", py::arg("cutoff") = 4);

    m.def("verify_json", [](const std::string& space, const std::string& suite, std::uint64_t seed) {
        py::gil_scoped_release release;
        return write_verify(run_verify(HermitianType::parse(space), suite, seed), Format::Json);
    }, py::arg("space"), py::arg("suite") = "all", py::arg("seed") = 1);

    m.def("conjecture_json", [](const std::string& space, const std::string& bundle, int cutoff) {
        const auto data = root_data(space);
        py::gil_scoped_release release;
        return write_conjecture(conjecture_scan(BundleSpec::parse(bundle, data), cutoff, data), Format::Json);
    }, py::arg("space"), py::arg("bundle") = "line:0", py::arg("cutoff") = 4);

    m.def("selberg_integral", &selberg_integral, py::arg("r"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"));

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Runs the command-line tool; returns (exit code, stdout, stderr).");
}

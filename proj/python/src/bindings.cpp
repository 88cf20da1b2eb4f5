#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "higgs/errors.hpp"
#include "higgs/json_io.hpp"

namespace py = pybind11;
using namespace higgs;
using io::json;

namespace {

// Everything crosses the boundary as JSON text in the CLI formats.
json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, e.what());
  }
}

CheckerConfig config(std::optional<std::pair<int, int>> window, std::optional<int> precision, std::optional<int> gamma,
                     std::optional<int> cutoff, CheckerConfig cfg = {}) {
  if (window) cfg.window = {window->first, window->second};
  if (precision) cfg.precision = *precision;
  if (gamma) cfg.gamma = *gamma;
  if (cutoff) cfg.cutoff = *cutoff;
  return cfg;
}

std::string decompose_json(const std::string& poly) { return io::to_json(decompose(io::polynomial_from_json(parse(poly)))).dump(); }

std::string check_json(const std::string& problem, std::optional<std::pair<int, int>> window,
                       std::optional<int> precision, std::optional<int> gamma) {
  io::ProblemSpec spec = io::problem_from_json(parse(problem));
  CheckerConfig cfg = config(window, precision, gamma, std::nullopt, spec.config);
  if (!spec.W || !spec.Omega || !spec.Omega_inv) fail(ErrorKind::ParseError, "problem needs W, Omega and Omega_inv");
  return io::to_json(check(*spec.W, *spec.Omega, *spec.Omega_inv, cfg)).dump();
}

std::string hitchin_json(const std::string& matrix, bool trivialize) {
  SeriesMatrix a = io::matrix_from_json(parse(matrix));
  json out;
  if (trivialize) {
    Trivialization t = cyclic_trivialization(a);
    out["p"] = io::to_json(t.p);
    out["P"] = io::to_json(t.P);
  } else {
    out["p"] = io::to_json(matrix_char_coefficients(a));
  }
  return out.dump();
}

std::string fixture_json(const std::string& name, std::optional<std::pair<int, int>> window,
                         std::optional<int> precision, std::optional<int> cutoff) {
  CheckerConfig cfg = config(window, precision, std::nullopt, cutoff);
  return io::to_json(io::problem_from_fixture(named_fixture(name, cfg), cfg)).dump();
}

std::string power_trace_json(const std::string& poly, int k) {
  return io::to_json(power_trace(k, io::polynomial_from_json(parse(poly)))).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "JSON-level bindings of the higgs library";

  // args are (kind, message); the Python package adds a `kind` property
  static py::exception<Error> error(m, "HiggsError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(error.ptr(), py::make_tuple(std::string(e.name()), std::string(e.what())).ptr());
    }
  });

  m.def("decompose", &decompose_json, py::arg("polynomial"));
  m.def("check", &check_json, py::arg("problem"), py::arg("window") = py::none(), py::arg("precision") = py::none(),
        py::arg("gamma") = py::none());
  m.def("hitchin", &hitchin_json, py::arg("matrix"), py::arg("trivialize") = false);
  m.def("fixture", &fixture_json, py::arg("name"), py::arg("window") = py::none(), py::arg("precision") = py::none(),
        py::arg("cutoff") = py::none());
  m.def("fixture_names", [] { return higgs::fixture_names(); });
  m.def("power_trace", &power_trace_json, py::arg("polynomial"), py::arg("k"));
}

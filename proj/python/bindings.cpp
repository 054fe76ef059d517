#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "l2approx/app.hpp"
#include "l2approx/error.hpp"
#include "l2approx/verify.hpp"

namespace py = pybind11;
using namespace l2approx;

namespace {

PyObject* error_type = nullptr;

void raise(const std::string& what, ErrorKind kind) {
  py::object exc = py::reinterpret_borrow<py::object>(error_type)(what);
  exc.attr("kind") = std::string(to_string(kind));
  PyErr_SetObject(error_type, exc.ptr());
}

AppOptions options(std::optional<std::vector<std::int64_t>> levels, std::optional<std::vector<std::int64_t>> boxes,
                   std::optional<int> grid, std::optional<double> eps_ker, double tol, int jobs) {
  AppOptions o;
  o.levels = std::move(levels);
  o.boxes = std::move(boxes);
  o.grid = grid;
  o.eps_ker = eps_ker;
  o.tol = tol;
  o.jobs = jobs;
  return o;
}

std::string approx(const std::string& problem, std::optional<std::vector<std::int64_t>> levels,
                   std::optional<std::vector<std::int64_t>> boxes, std::optional<int> grid,
                   std::optional<double> eps_ker, double tol, int jobs) {
  const auto p = parse_problem(json::parse(problem));
  return dump_report(run_approx(p, options(levels, boxes, grid, eps_ker, tol, jobs)).report);
}

std::string density(const std::string& problem, std::optional<std::vector<std::int64_t>> levels,
                    std::optional<std::vector<std::int64_t>> boxes, std::optional<int> grid,
                    std::optional<double> eps_ker) {
  const auto p = parse_problem(json::parse(problem));
  return dump_report(density_report(compute_density(p, options(levels, boxes, grid, eps_ker, 0.02, 1))));
}

std::string cw(const std::string& complex, const std::string& method, std::optional<std::vector<std::int64_t>> levels,
               std::optional<int> grid) {
  const auto spec = parse_complex(json::parse(complex));
  return dump_report(run_cw(spec, options(levels, std::nullopt, grid, std::nullopt, 0.02, 1), method).report);
}

std::string verify(const std::string& suite, std::optional<std::uint64_t> seed) {
  return dump_report(run_suite(suite, seed.value_or(seed_from_env())).to_json());
}

double trivial_logdet(const std::vector<std::vector<long>>& m) {
  IntegerMatrix im;
  for (const auto& row : m) {
    std::vector<mpz_class> r;
    for (long v : row) r.emplace_back(v);
    im.push_back(std::move(r));
  }
  return trivial_group_logdet_exact(im).value;
}

}  // namespace

PYBIND11_MODULE(_l2approx, m) {
  m.doc() = "L2-invariants of group ring matrices by finite approximation";
  // Error(message) with a `kind` attribute naming the ErrorKind.
  error_type = py::exception<Error>(m, "Error", PyExc_ValueError).release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      raise(e.what(), e.kind());
    } catch (const json::exception& e) {
      raise(e.what(), ErrorKind::ParseError);
    }
  });

  m.def("approx", &approx, py::arg("problem"), py::arg("levels") = py::none(), py::arg("boxes") = py::none(),
        py::arg("grid") = py::none(), py::arg("eps_ker") = py::none(), py::arg("tol") = 0.02, py::arg("jobs") = 1);
  m.def("density", &density, py::arg("problem"), py::arg("levels") = py::none(), py::arg("boxes") = py::none(),
        py::arg("grid") = py::none(), py::arg("eps_ker") = py::none());
  m.def("cw", &cw, py::arg("complex"), py::arg("method") = "auto", py::arg("levels") = py::none(),
        py::arg("grid") = py::none());
  m.def("verify", &verify, py::arg("suite"), py::arg("seed") = py::none());
  m.def("suite_names", &suite_names);
  m.def("mahler", py::overload_cast<const std::vector<double>&>(&mahler_1x1), py::arg("coefficients"));
  m.def("trivial_logdet", &trivial_logdet, py::arg("matrix"));
  m.def("round12", &round12, py::arg("x"));
}

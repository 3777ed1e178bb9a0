#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "qes/cdsi.hpp"
#include "qes/figures.hpp"
#include "qes/oracle.hpp"
#include "qes/serialize.hpp"
#include "qes/verify.hpp"

namespace py = pybind11;
using namespace qes;

namespace {

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Family family_arg(const py::object& family) {
  if (py::isinstance<py::int_>(family)) return family_from_index(family.cast<int>());
  return family_from_string(family.cast<std::string>());
}

Family extension_family(const py::object& family) {
  const Family f = family_arg(family);
  if (f == Family::Base) throw Error(ErrorCode::InvalidParameter, "family must be 1 or 2");
  return f;
}

py::object solve(const py::object& family, int m, double L, double lambda, double B, bool exact) {
  const Family f = extension_family(family);
  if (exact) {
    const auto q = [](double x, const char* name) {
      auto r = parse_rational(to_string(x));
      if (!r) throw Error(ErrorCode::InvalidParameter, std::string(name) + " is not finite");
      return *r;
    };
    return to_python(to_json(general_two_state<Rational>(f, m, q(L, "L"), q(B, "B"), q(lambda, "lambda"))));
  }
  return to_python(to_json(general_two_state(f, m, L, B, lambda)));
}

PotentialSpec reduced_spec(const py::object& family, int m, double L, double lambda, double B) {
  return make_qes_spec(extension_family(family), m, L, B, lambda);
}

}  // namespace

PYBIND11_MODULE(qes, mod) {
  mod.doc() = "Quasi-exactly solvable oscillators on constant-curvature spaces";

  static py::exception<Error> qes_error(mod, "QesError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(qes_error.ptr(), (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  mod.def("solve", &solve, py::arg("family"), py::arg("m"), py::arg("L"), py::arg("lambda_"),
          py::arg("B"), py::arg("exact") = false,
          "Closed-form ground and first excited states as a dict; exact=True gives fractions.");

  mod.def(
      "coefficients",
      [](const py::object& family, int m, double L, double lambda, double B) {
        return to_python(to_json(reduced_spec(family, m, L, lambda, B)));
      },
      py::arg("family"), py::arg("m"), py::arg("L"), py::arg("lambda_"), py::arg("B"),
      "Coefficients of the reduced potential.");

  mod.def(
      "eval_potential",
      [](const py::object& family, int m, double L, double lambda, double B, const std::vector<double>& r) {
        const PotentialSpec spec = reduced_spec(family, m, L, lambda, B);
        std::vector<double> v;
        v.reserve(r.size());
        for (double x : r) v.push_back(eval_potential(spec, x));
        return v;
      },
      py::arg("family"), py::arg("m"), py::arg("L"), py::arg("lambda_"), py::arg("B"), py::arg("r"));

  mod.def(
      "lowest_eigenvalues",
      [](const py::object& family, int m, double L, double lambda, double B, int k, int grid,
         double tol, double perturb) {
        PotentialSpec spec = reduced_spec(family, m, L, lambda, B);
        spec.B[0] += perturb;
        py::gil_scoped_release release;
        const SpectrumEstimate est = lowest_eigenvalues(spec, k, {grid, tol});
        py::gil_scoped_acquire acquire;
        return to_python(to_json(est));
      },
      py::arg("family"), py::arg("m"), py::arg("L"), py::arg("lambda_"), py::arg("B"),
      py::arg("k") = 3, py::arg("grid") = 20000, py::arg("tol") = 1e-6, py::arg("perturb") = 0.0);

  mod.def(
      "verify",
      [](const py::object& family, int m, double L, double lambda, double B, int grid, double tol,
         double perturb) {
        VerifyConfig c;
        c.family = extension_family(family);
        c.m = m;
        c.L = L;
        c.lambda = lambda;
        c.B2m = B;
        c.grid = {grid, tol};
        c.perturb = perturb;
        VerificationReport rep;
        {
          py::gil_scoped_release release;
          rep = verify(c);
        }
        return to_python(to_json(rep));
      },
      py::arg("family"), py::arg("m"), py::arg("L"), py::arg("lambda_"), py::arg("B"),
      py::arg("grid") = 20000, py::arg("tol") = 1e-6, py::arg("perturb") = 0.0);

  mod.def(
      "figures",
      [] {
        py::dict out;
        for (const auto& t : reference_figures()) {
          py::dict d;
          d["caption"] = t.caption;
          d["columns"] = t.columns;
          d["rows"] = t.rows;
          out[py::str(t.name)] = d;
        }
        return out;
      },
      "Tables behind fig1..fig4.");
}

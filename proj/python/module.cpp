#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>

#include "canyonlab/equivalence.hpp"
#include "canyonlab/errors.hpp"
#include "canyonlab/json_io.hpp"
#include "canyonlab/parser.hpp"

namespace py = pybind11;
using namespace canyonlab;

namespace {

std::map<std::string, Rat> to_bindings(
    const std::map<std::string, std::string>& b) {
  std::map<std::string, Rat> out;
  for (auto& [k, v] : b) {
    Rat r(v);
    r.canonicalize();
    out[k] = r;
  }
  return out;
}

std::optional<Rat> to_trunc(const std::string& t) {
  if (t.empty()) return {};
  Rat r(t);
  r.canonicalize();
  return r;
}

std::string py_card(const std::string& expr,
                    const std::map<std::string, std::string>& bindings,
                    const std::string& trunc) {
  GermExpr g = parse_germ(expr, to_bindings(bindings));
  json doc = json::object();
  doc["germ"] = render(g);
  doc["card"] = card_json(identity_card(g.poly, to_trunc(trunc)));
  return doc.dump();
}

std::string py_compare(const std::string& ef, const std::string& eg,
                       const std::map<std::string, std::string>& bindings,
                       bool certificate, const std::string& trunc) {
  auto b = to_bindings(bindings);
  GermExpr f = parse_germ(ef, b);
  GermExpr g = parse_germ(eg, b);
  return verdict_json(decide(f.poly, g.poly, to_trunc(trunc)), certificate)
      .dump();
}

std::string py_render(const std::string& expr,
                      const std::map<std::string, std::string>& bindings) {
  return render(parse_germ(expr, to_bindings(bindings)));
}

void py_set_numerics(long precision_bits, long zero_tol_log2) {
  Numerics::default_prec = (mpfr_prec_t)precision_bits;
  Numerics::zero_tol_log2 = zero_tol_log2;
}

}  // namespace

PYBIND11_MODULE(_canyonlab, m) {
  m.doc() = "bi-Lipschitz identity cards for plane curve germs";

  py::register_exception<ParseError>(m, "GermParseError", PyExc_ValueError);
  py::register_exception<ComputeError>(m, "GermComputeError",
                                       PyExc_RuntimeError);

  m.def("card_json", &py_card, py::arg("expr"),
        py::arg("bindings") = std::map<std::string, std::string>{},
        py::arg("trunc") = "",
        "Identity card of a germ expression as a JSON string");
  m.def("compare_json", &py_compare, py::arg("f"), py::arg("g"),
        py::arg("bindings") = std::map<std::string, std::string>{},
        py::arg("certificate") = false, py::arg("trunc") = "",
        "Non-equivalence verdict for two germs as a JSON string");
  m.def("render", &py_render, py::arg("expr"),
        py::arg("bindings") = std::map<std::string, std::string>{},
        "Canonical text form of a germ expression");
  m.def("set_numerics", &py_set_numerics, py::arg("precision_bits") = 256,
        py::arg("zero_tol_log2") = -128,
        "Configure working precision and the zero-test threshold");
}

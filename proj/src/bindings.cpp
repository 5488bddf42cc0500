#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mfmod2/checks.hpp"
#include "mfmod2/code.hpp"
#include "mfmod2/errors.hpp"
#include "mfmod2/forms.hpp"
#include "mfmod2/hecke.hpp"
#include "mfmod2/quadideals.hpp"
#include "mfmod2/structure.hpp"

namespace py = pybind11;
using namespace mfmod2;

namespace {

// Combinations cross the boundary as sorted index lists.
std::vector<std::uint64_t> indices(const Combination& c) { return c.indices(); }

Named named(const std::string& name) {
  if (auto n = parse_named(name)) return *n;
  throw DomainError("unknown series '" + name + "'");
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> monomials(const XYPoly& f) {
  return {f.terms().begin(), f.terms().end()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "mod-2 level-5 modular forms and their Hecke algebra";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<PrecisionError>(m, "PrecisionError", error.ptr());
  py::register_exception<NotInWError>(m, "NotInWError", error.ptr());
  py::register_exception<InsufficientPrecisionError>(m, "InsufficientPrecisionError", error.ptr());
  py::register_exception<InconsistencyError>(m, "InconsistencyError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());

  py::class_<BitSeries>(m, "BitSeries")
      .def(py::init([](std::vector<std::uint64_t> exps, std::size_t prec) { return BitSeries::from_exponents(exps, prec); }),
           py::arg("exponents"), py::arg("prec"))
      .def_static("from_text", &series_from_text)
      .def_property_readonly("prec", &BitSeries::prec)
      .def("coeff", &BitSeries::coeff)
      .def("valuation", &BitSeries::valuation)
      .def("exponents", &BitSeries::exponents)
      .def("truncated", &BitSeries::truncated)
      .def(py::self + py::self)
      .def(py::self * py::self)
      .def(py::self == py::self)
      .def("__str__", [](const BitSeries& f) { return to_text(f); })
      .def("__repr__", [](const BitSeries& f) { return "BitSeries(" + to_text(f) + ")"; });

  m.def("square", &square);
  m.def("power", &power);
  m.def("substitute_power", &substitute_power);
  m.def("divide_exact", &divide_exact);
  m.def("agree", &agree);

  m.def("gen", [](const std::string& name, std::size_t prec) { return gen(named(name), prec); }, py::arg("name"), py::arg("prec"));
  m.def("gen_Dk", &gen_Dk, py::arg("k"), py::arg("prec"));
  m.def("gen_Jk", &gen_Jk, py::arg("k"), py::arg("prec"));
  m.def("series_of", [](std::vector<std::uint64_t> ks, std::size_t prec) { return series_of(Combination(ks), prec); },
        py::arg("indices"), py::arg("prec"));
  m.def("decompose", [](const BitSeries& f) { return indices(decompose_W(f)); });
  m.def("verify_identities", [](std::size_t prec) {
    std::vector<std::pair<std::string, bool>> out;
    for (const auto& r : verify_identities(prec).results) out.emplace_back(r.name, r.passed);
    return out;
  });

  m.def("chi", &chi);
  m.def("apply_Tp", [](const BitSeries& f, std::uint64_t p) { return apply_Tp(f, HeckePrime(p)); });
  m.def("hecke_on_basis", [](std::uint64_t p, std::uint64_t k) { return indices(Tp_on_Dk(HeckePrime(p), k)); },
        py::arg("p"), py::arg("k"));
  m.def("hecke_apply", [](std::uint64_t p, std::vector<std::uint64_t> ks) {
    return indices(apply_Tp(Combination(ks), HeckePrime(p)));
  });
  m.def("tk_oracle", [](std::uint64_t k) { return indices(tk_oracle(k)); });

  m.def("pair_to_k", [](std::uint64_t a, std::uint64_t b) { return pair_to_k({a, b}); });
  m.def("k_to_pair", [](std::uint64_t k) {
    const PairCode pc = k_to_pair(k);
    return std::make_pair(pc.a, pc.b);
  });

  m.def("ideals_of_norm", [](std::uint64_t n) {
    std::vector<py::dict> out;
    for (const auto& I : ideals_of_norm(n)) {
      py::dict d;
      d["sector"] = I.sector == Sector::kPrincipal ? "principal" : "nonprincipal";
      d["generator"] = std::make_pair(I.alpha.b, I.alpha.c);
      d["norm"] = I.norm;
      out.push_back(d);
    }
    return out;
  });
  m.def("di_basis", [](std::uint64_t q) {
    std::vector<std::vector<std::uint64_t>> out;
    for (const auto& c : di_basis(q)) out.push_back(indices(c));
    return out;
  });
  m.def("theta", &theta, py::arg("i"), py::arg("q"), py::arg("prec"));

  m.def("adapted_basis", [](std::uint32_t depth) {
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<std::uint64_t>> out;
    const auto basis = adapted_basis(depth);
    for (const auto& pc : basis->pairs()) out[{pc.a, pc.b}] = indices(basis->m(pc));
    return out;
  });
  m.def("lambda_series", [](std::uint32_t depth) { return to_text(lambda_series(depth).lambda); });
  m.def("express_hecke", [](std::uint64_t p, std::uint32_t M) {
    const HeckeExpression e = express_hecke(p, M);
    py::dict d;
    d["text"] = to_text(e.element);
    d["r"] = monomials(e.element.r);
    d["t"] = monomials(e.element.t);
    d["order"] = e.order;
    d["through_t11"] = e.through_t11;
    return d;
  }, py::arg("p"), py::arg("M"));

  m.def("checks", [] {
    std::vector<std::string> out;
    for (const auto& item : check_registry()) out.emplace_back(item.id);
    return out;
  });
  m.def("run_check", [](const std::string& id) {
    const CheckItem* item = find_check(id);
    if (!item) throw DomainError("no check named '" + id + "'");
    const CheckOutcome o = run_check(*item, {});
    return std::make_pair(o.passed, o.detail);
  });
}

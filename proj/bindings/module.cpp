#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "schreier/clirun.hpp"
#include "schreier/dsl.hpp"
#include "schreier/index.hpp"
#include "schreier/normspace.hpp"
#include "schreier/ramsey.hpp"
#include "schreier/selftest.hpp"

namespace py = pybind11;
using namespace schreier;

namespace {

py::object to_fraction(const Rational& q) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(rational_to_string(q));
}

Rational to_rational(const py::handle& v) {
  if (py::isinstance<py::int_>(v)) return Rational(py::cast<long long>(v));
  return parse_rational(py::str(v).cast<std::string>());
}

FinSet to_finset(const std::vector<int>& xs) { return FinSet(xs); }

SparseVec to_vec(const py::object& obj) {
  std::vector<std::pair<int, Rational>> entries;
  if (py::isinstance<py::dict>(obj)) {
    for (auto item : py::cast<py::dict>(obj))
      entries.emplace_back(py::cast<int>(item.first), to_rational(item.second));
  } else {
    for (auto item : obj) {
      auto pair = py::cast<py::tuple>(item);
      entries.emplace_back(py::cast<int>(pair[0]), to_rational(pair[1]));
    }
  }
  return SparseVec::from_entries(std::move(entries));
}

std::vector<Rational> to_coeffs(const py::sequence& seq) {
  std::vector<Rational> out;
  for (auto item : seq) out.push_back(to_rational(item));
  return out;
}

py::dict embedding_to_py(const ExtendedEmbedding& emb) {
  py::dict d;
  d["ground"] = emb.src_ground;
  py::list i, e;
  for (const auto& [k, v] : emb.i_map) i.append(py::make_tuple(k.elements(), v.elements()));
  for (const auto& [k, v] : emb.e_map) e.append(py::make_tuple(k.elements(), v.elements()));
  d["i"] = i;
  d["e"] = e;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact toolkit for regular families, ordinal indices, and Tsirelson norms";

  py::register_exception<ParseError>(m, "DslParseError", PyExc_ValueError);

  py::class_<Ordinal>(m, "Ordinal")
      .def(py::init([](const std::string& s) { return parse_ordinal(s); }))
      .def(py::init([](long n) { return Ordinal::finite(n); }))
      .def_static("omega", &Ordinal::omega)
      .def_static("omega_power", &Ordinal::omega_power)
      .def("is_zero", &Ordinal::is_zero)
      .def("is_finite", &Ordinal::is_finite)
      .def("is_limit", &Ordinal::is_limit)
      .def("is_successor", &Ordinal::is_successor)
      .def("predecessor", &Ordinal::predecessor)
      .def("__add__", [](const Ordinal& a, const Ordinal& b) { return a + b; })
      .def("__mul__", [](const Ordinal& a, const Ordinal& b) { return a * b; })
      .def("__eq__", [](const Ordinal& a, const Ordinal& b) { return a == b; })
      .def("__lt__", [](const Ordinal& a, const Ordinal& b) { return a < b; })
      .def("__le__", [](const Ordinal& a, const Ordinal& b) { return a <= b; })
      .def("__hash__", [](const Ordinal& a) { return py::hash(py::str(a.to_string())); })
      .def("__str__", &Ordinal::to_string)
      .def("__repr__", [](const Ordinal& a) { return "Ordinal('" + a.to_string() + "')"; });

  m.def("hessenberg", &hessenberg);
  m.def("hessenberg_decompositions", &hessenberg_decompositions);
  m.def("fundamental_sequence", &fundamental_sequence);

  py::class_<Family>(m, "Family")
      .def(py::init([](const std::string& s) { return parse_family(s); }))
      .def_static("card", &Family::card)
      .def_static("schreier_base", &Family::schreier_base)
      .def_static("schreier", &Family::schreier)
      .def_static("fine_schreier", &Family::fine_schreier)
      .def_static("sum", &Family::sum)
      .def_static("prod", &Family::prod)
      .def_static("pow", &Family::pow)
      .def_static("pre",
                  [](const std::string& relabeling, const Family& f) {
                    return Family::pre(parse_relabeling(relabeling), f);
                  })
      .def("member",
           [](const Family& f, const std::vector<int>& e) { return f.member(to_finset(e)); })
      .def("min_extension",
           [](const Family& f, const std::vector<int>& e) { return f.min_extension(to_finset(e)); })
      .def("is_maximal",
           [](const Family& f, const std::vector<int>& e) { return f.is_maximal(to_finset(e)); })
      .def("standard_decomposition",
           [](const Family& f, const std::vector<int>& e) -> py::object {
             auto blocks = f.standard_decomposition(to_finset(e));
             if (!blocks) return py::none();
             py::list out;
             for (const auto& b : *blocks) out.append(b.elements());
             return out;
           })
      .def("is_admissible",
           [](const Family& f, const std::vector<std::vector<int>>& blocks) {
             std::vector<FinSet> bs;
             for (const auto& b : blocks) bs.push_back(to_finset(b));
             return f.is_admissible(bs);
           })
      .def("enumerate",
           [](const Family& f, int ground) {
             py::list out;
             for (const auto& e : f.enumerate(ground)) out.append(e.elements());
             return out;
           })
      .def("tail_invariant", &Family::tail_invariant)
      .def("__eq__", [](const Family& a, const Family& b) { return a == b; })
      .def("__hash__", [](const Family& a) { return a.id(); })
      .def("__str__", &Family::to_string)
      .def("__repr__", [](const Family& a) { return "Family('" + a.to_string() + "')"; });

  m.def("is_spread", [](const std::vector<int>& e, const std::vector<int>& l) {
    return is_spread(to_finset(e), to_finset(l));
  });
  m.def("is_subset", [](const std::vector<int>& e, const std::vector<int>& f) {
    return is_subset(to_finset(e), to_finset(f));
  });

  m.def("iota", &iota);
  m.def("rank", [](const Family& f, const std::vector<int>& e) { return rank(f, to_finset(e)); });
  m.def("in_derivative", [](const Family& f, const std::vector<int>& e, const Ordinal& x) {
    return in_derivative(f, to_finset(e), x);
  });
  m.def("rank_oracle", [](const Family& f, const std::vector<int>& e, int cap) {
    return rank_oracle(f, to_finset(e), cap);
  });

  py::class_<Space>(m, "Space")
      .def(py::init([](const std::string& s) { return parse_space(s); }))
      .def("__eq__", [](const Space& a, const Space& b) { return a == b; })
      .def("__str__", &Space::to_string)
      .def("__repr__", [](const Space& a) { return "Space('" + a.to_string() + "')"; });

  m.def(
      "family_sup_norm",
      [](const Family& g0, const py::object& vec) {
        return to_fraction(family_sup_norm(g0, to_vec(vec)));
      },
      py::arg("family"), py::arg("vector"));
  m.def(
      "norm",
      [](const Space& s, const py::object& vec, int support_limit, bool allow_large) {
        NormOptions opts{support_limit, allow_large};
        return to_fraction(norm(s, to_vec(vec), opts));
      },
      py::arg("space"), py::arg("vector"), py::arg("support_limit") = 24,
      py::arg("allow_large_support") = false);
  m.def("tsirelson_implicit_rhs", [](const Space& s, const py::object& vec) {
    return to_fraction(tsirelson_implicit_rhs(s, to_vec(vec)));
  });
  m.def("l1_lower_certificate",
        [](const Space& s, const std::vector<int>& e, int m_, int k, const py::sequence& coeffs) {
          return l1_lower_certificate(s, to_finset(e), m_, k, to_coeffs(coeffs));
        });
  m.def("direct_sum_norm", [](const Space& s, const py::sequence& parts) {
    std::vector<SparseVec> ps;
    for (auto p : parts) ps.push_back(to_vec(py::cast<py::object>(p)));
    return to_fraction(direct_sum_norm(s, ps));
  });
  m.def("schreier_sum_witness",
        [](const Space& zeta, const Family& xi, const std::vector<int>& e,
           const py::sequence& coeffs) {
          auto w = schreier_sum_witness(zeta, xi, to_finset(e), to_coeffs(coeffs));
          py::dict d;
          d["holds"] = w.holds;
          d["direct_sum_value"] = to_fraction(w.direct_sum_value);
          d["chain_value"] = to_fraction(w.chain_value);
          d["coeff_sum"] = to_fraction(w.coeff_sum);
          return d;
        });

  m.def(
      "search_sum_witness",
      [](const Family& f, const std::string& coloring, int bound, int ground) -> py::object {
        auto w = search_sum_witness(f, parse_coloring(coloring), {bound, ground});
        if (!w) return py::none();
        py::dict d;
        d["xi0"] = w->xi0;
        d["xi1"] = w->xi1;
        d["emb0"] = embedding_to_py(w->emb0);
        d["emb1"] = embedding_to_py(w->emb1);
        return d;
      },
      py::arg("family"), py::arg("coloring"), py::arg("bound") = 30, py::arg("ground") = 4);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int status = run_cli(args, out, err);
    return py::make_tuple(status, out.str(), err.str());
  });

  m.def("selftest", []() {
    std::ostringstream out;
    bool ok = run_selftest(out);
    return py::make_tuple(ok, out.str());
  });
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "idfnl/parser.hpp"
#include "idfnl/proofs.hpp"
#include "idfnl/search.hpp"
#include "idfnl/semantics.hpp"

namespace py = pybind11;
using namespace idfnl;

namespace {

struct PyFormula {
  FormulaPtr f;
};

struct PySequent {
  Sequent s;
};

std::set<FrameProperty> frames_from_names(const std::vector<std::string>& names) {
  std::set<FrameProperty> out;
  for (const auto& name : names) {
    if (name == "reflexive")
      out.insert(FrameProperty::Reflexive);
    else if (name == "commutative")
      out.insert(FrameProperty::Commutative);
    else
      throw std::invalid_argument("unknown frame property '" + name + "'");
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Evaluation, countermodel search and proof checking for the "
            "distributive non-associative Lambek calculus with iterative division";
  m.attr("__version__") = "0.1.0";

  py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
  py::register_exception<search_aborted>(m, "SearchAborted", PyExc_RuntimeError);

  py::class_<PyFormula>(m, "Formula")
      .def("__str__", [](const PyFormula& self) { return render_formula(self.f); })
      .def("__repr__",
           [](const PyFormula& self) { return "Formula('" + render_formula(self.f) + "')"; })
      .def(
          "__eq__",
          [](const PyFormula& a, const PyFormula& b) { return *a.f == *b.f; }, py::is_operator())
      .def("__hash__",
           [](const PyFormula& self) { return py::hash(py::str(render_formula(self.f))); })
      .def("atoms", [](const PyFormula& self) {
        std::set<std::string> names;
        collect_atoms(*self.f, names);
        return std::vector<std::string>(names.begin(), names.end());
      });

  py::class_<PySequent>(m, "Sequent")
      .def_property_readonly("lhs", [](const PySequent& self) { return PyFormula{self.s.lhs}; })
      .def_property_readonly("rhs", [](const PySequent& self) { return PyFormula{self.s.rhs}; })
      .def("__str__", [](const PySequent& self) { return render_sequent(self.s); })
      .def("__repr__",
           [](const PySequent& self) { return "Sequent('" + render_sequent(self.s) + "')"; });

  py::class_<Model>(m, "Model")
      .def_property_readonly("states", [](const Model& self) { return self.states(); })
      .def("render", [](const Model& self) { return render_model(self); })
      .def("__repr__",
           [](const Model& self) {
             return "Model(" + std::to_string(self.size()) + " states)";
           })
      .def("eval",
           [](const Model& self, const PyFormula& f) {
             std::vector<std::string> out;
             for (int s : denotation(self, *f.f).to_vector()) out.push_back(self.state_name(s));
             return out;
           })
      .def("satisfies",
           [](const Model& self, const std::string& state, const PyFormula& f) {
             return satisfies(self, state, *f.f);
           })
      .def("sequent_valid",
           [](const Model& self, const PySequent& sq) { return sequent_valid(self, sq.s); });

  m.def("parse_formula", [](const std::string& text) { return PyFormula{parse_formula(text)}; });
  m.def("parse_sequent", [](const std::string& text) { return PySequent{parse_sequent(text)}; });
  m.def("parse_model", [](const std::string& text) { return parse_model(text); });
  m.def("fmt", [](const std::string& text) { return render_formula(parse_formula(text)); });

  m.def("closure", [](const std::vector<PyFormula>& fs) {
    FormulaSet set;
    for (const auto& f : fs) set.insert(f.f);
    std::vector<PyFormula> out;
    for (const auto& f : closure(set)) out.push_back(PyFormula{f});
    return out;
  });
  m.def("expand_left_division", [](const PyFormula& a, const PyFormula& b, int n) {
    return PyFormula{expand_left_division(a.f, b.f, n)};
  });
  m.def("expand_right_division", [](const PyFormula& b, const PyFormula& a, int n) {
    return PyFormula{expand_right_division(b.f, a.f, n)};
  });

  m.def(
      "fmp_bound",
      [](const PySequent& sq) -> py::object {
        const FmpBound bound = fmp_bound(sq.s);
        if (!bound.value) return py::none();
        return py::int_(*bound.value);
      },
      "2^|closure| state-count bound, or None when it overflows");

  m.def(
      "find_countermodel",
      [](const PySequent& sq, int max_states, const std::vector<std::string>& frames,
         int jobs) -> py::object {
        SearchConfig cfg;
        cfg.max_states = max_states;
        cfg.frame_properties = frames_from_names(frames);
        cfg.jobs = jobs;
        const Verdict verdict = find_countermodel(sq.s, cfg);
        if (const auto* cm = std::get_if<Countermodel>(&verdict))
          return py::make_tuple(cm->model, cm->model.state_name(cm->witness));
        return py::none();
      },
      py::arg("sequent"), py::arg("max_states") = 3,
      py::arg("frames") = std::vector<std::string>{}, py::arg("jobs") = 1,
      "Countermodel and witness state, or None when none exists up to max_states");

  m.def(
      "random_model",
      [](int states, const std::vector<std::string>& atoms, double triple_probability,
         double atom_probability, std::uint64_t seed) {
        return random_model({states, atoms, triple_probability, atom_probability, seed});
      },
      py::arg("states"), py::arg("atoms"), py::arg("triple_probability"),
      py::arg("atom_probability"), py::arg("seed"));

  m.def(
      "check_derivation",
      [](const std::string& text, const std::vector<std::string>& extensions) {
        std::set<SchemaId> ext;
        for (const auto& name : extensions) {
          const auto id = schema_by_name(name);
          if (!id || !schema_info(*id).extension)
            throw std::invalid_argument("unknown extension '" + name + "'");
          ext.insert(*id);
        }
        const CheckReport report = check_derivation(parse_derivation(text), ext);
        return py::make_tuple(report.ok,
                              report.failed_step ? py::object(py::int_(*report.failed_step))
                                                 : py::object(py::none()),
                              report.reason);
      },
      py::arg("text"), py::arg("extensions") = std::vector<std::string>{},
      "(ok, failed_step, reason) for a derivation in the text format");
}

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "factnet/composition.hpp"
#include "factnet/errors.hpp"
#include "factnet/hilbert.hpp"
#include "factnet/io.hpp"
#include "factnet/measurement.hpp"
#include "factnet/qrf.hpp"
#include "factnet/scenarios.hpp"

namespace py = pybind11;
using namespace factnet;

namespace {

using Coefficients = std::map<std::pair<std::string, std::string>, cplx>;

std::vector<std::vector<cplx>> matrix_rows(const ComplexMatrix& m) {
  std::vector<std::vector<cplx>> rows(m.rows(), std::vector<cplx>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
  return rows;
}

struct PyDocument {
  FactNetDocument doc;

  std::vector<std::string> systems() const { return doc.net.systems(); }
  std::vector<std::string> fact_set(const std::string& a, const std::string& b) const {
    return doc.net.fact_set(a, b);
  }
  std::vector<std::string> neighborhood(const std::string& s) const {
    return doc.net.neighborhood(s);
  }
  std::string dumps() const { return serialize_document(doc); }
  void save(const std::string& path) const { save_file(path, doc); }

  double probability(const std::string& system, const std::string& fact,
                     const std::string& given) const {
    return doc.table(system).conditional_probability(fact, given);
  }
  std::map<std::string, double> probabilities(const std::string& system,
                                              const std::string& target,
                                              const std::string& given) const {
    std::map<std::string, double> out;
    for (const auto& fact : doc.net.fact_set(system, target))
      out[fact] = doc.table(system).conditional_probability(fact, given);
    return out;
  }
  cplx amplitude(const std::string& system, const std::string& f,
                 const std::string& g) const {
    return doc.table(system).value(f, g);
  }
  std::pair<bool, double> chain_complete(const std::string& system, double tol) const {
    auto [complete, worst] = doc.table(system).is_chain_complete(tol);
    return {complete, worst.residual};
  }
  double chain_residual(const std::string& system, const std::string& a,
                        const std::string& b, const std::string& c) const {
    return doc.table(system).chain_residual(a, b, c).residual;
  }
  std::pair<std::size_t, std::vector<double>> selfspace(const std::string& system,
                                                        double tol) const {
    SelfSpace space = self_space(doc.table(system), tol);
    return {space.dim, space.eigenvalues};
  }
  std::vector<std::vector<cplx>> amplitude_map_rows(const std::string& system,
                                                    const std::string& from,
                                                    const std::string& to) const {
    return matrix_rows(amplitude_map(doc.table(system), from, to));
  }
  double triangle_residual(const std::string& a, const std::string& b,
                           const std::string& c) const {
    return triangle_consistency(doc.table(a), doc.table(b), doc.table(c));
  }
  Coefficients qrf_transform(const Coefficients& state, const std::string& source,
                             const std::string& target) const {
    if (!doc.qrf) raise(errc::bad_params, "document carries no group section");
    PerspectiveState s;
    s.perspective = source;
    s.coefficients = state;
    return change_of_qrf(doc.qrf->maps, s, target).coefficients;
  }
  PyDocument measure(const std::string& observer,
                     const std::map<std::string, std::vector<std::string>>& keep,
                     const std::vector<std::string>& order) const {
    Restriction restriction;
    restriction.observer = observer;
    for (const auto& [system, facts] : keep)
      restriction.keep[system] = std::set<std::string>(facts.begin(), facts.end());
    auto [net, table] = restrict_net(doc.net, doc.table(observer), restriction);
    if (!order.empty()) table = reconstruct_w_prime(net, table, Ordering{order});
    PyDocument out;
    out.doc.net = net;
    auto ptr = table.net_ptr();
    for (const auto& [system, old_table] : doc.tables)
      out.doc.tables.emplace(system,
                             system == observer ? table : old_table.rebind(ptr));
    out.doc.qrf = doc.qrf;
    out.doc.metadata = doc.metadata;
    return out;
  }
};

PyDocument make_scenario(const std::string& name,
                         const std::map<std::string, std::string>& params) {
  ScenarioSpec spec{scenario_from_name(name), params};
  return PyDocument{to_document(generate(spec))};
}

PyDocument parse_text(const std::string& text, bool strict) {
  return PyDocument{parse_document(text, strict)};
}

PyDocument load_path(const std::string& path, bool strict) {
  return PyDocument{load_file(path, strict)};
}

}  // namespace

PYBIND11_MODULE(factnet, m) {
  m.doc() = "relational fact-nets: amplitudes, conditional probabilities, "
            "self-spaces, measurements and quantum reference frames";

  py::register_exception<Error>(m, "FactNetError");

  py::class_<PyDocument>(m, "Document")
      .def_property_readonly("systems", &PyDocument::systems)
      .def("fact_set", &PyDocument::fact_set, py::arg("a"), py::arg("b"))
      .def("neighborhood", &PyDocument::neighborhood, py::arg("system"))
      .def("dumps", &PyDocument::dumps)
      .def("save", &PyDocument::save, py::arg("path"))
      .def("amplitude", &PyDocument::amplitude, py::arg("system"), py::arg("f"),
           py::arg("g"))
      .def("probability", &PyDocument::probability, py::arg("system"),
           py::arg("fact"), py::arg("given"))
      .def("probabilities", &PyDocument::probabilities, py::arg("system"),
           py::arg("target"), py::arg("given"))
      .def("chain_complete", &PyDocument::chain_complete, py::arg("system"),
           py::arg("tol") = kDefaultTol)
      .def("chain_residual", &PyDocument::chain_residual, py::arg("system"),
           py::arg("a"), py::arg("b"), py::arg("intermediate"))
      .def("selfspace", &PyDocument::selfspace, py::arg("system"),
           py::arg("tol") = kDefaultTol)
      .def("amplitude_map", &PyDocument::amplitude_map_rows, py::arg("system"),
           py::arg("from_system"), py::arg("to_system"))
      .def("triangle_residual", &PyDocument::triangle_residual, py::arg("a"),
           py::arg("b"), py::arg("c"))
      .def("qrf_transform", &PyDocument::qrf_transform, py::arg("state"),
           py::arg("source"), py::arg("target"))
      .def("measure", &PyDocument::measure, py::arg("observer"), py::arg("keep"),
           py::arg("order") = std::vector<std::string>{});

  m.def("scenario", &make_scenario, py::arg("name"),
        py::arg("params") = std::map<std::string, std::string>{},
        "generate a built-in example document");
  m.def("scenario_names", &scenario_names);
  m.def("parse", &parse_text, py::arg("text"), py::arg("strict") = true);
  m.def("load", &load_path, py::arg("path"), py::arg("strict") = true);
  m.def(
      "double_slit_intensity",
      [](double l1, double l2, double d, double sigma, double xmin, double xmax,
         double step) {
        return double_slit_intensity(l1, l2, d, sigma, uniform_grid(xmin, xmax, step));
      },
      py::arg("l1"), py::arg("l2"), py::arg("d"), py::arg("sigma"), py::arg("xmin"),
      py::arg("xmax"), py::arg("step"));
  m.def(
      "propagator_probability",
      [](double ti, double tj, double sigma, const std::vector<double>& grid,
         double mass, double hbar, double xj) {
        return propagator_probability(ti, tj, sigma, mass, hbar, grid, xj);
      },
      py::arg("t_i"), py::arg("t_j"), py::arg("sigma"), py::arg("grid"),
      py::arg("m") = 1.0, py::arg("hbar") = 1.0, py::arg("x_j") = 0.0);
}

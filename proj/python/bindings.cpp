#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "subdiv/cab.hpp"
#include "subdiv/json_io.hpp"
#include "subdiv/k3e.hpp"
#include "subdiv/mader.hpp"
#include "subdiv/menger.hpp"
#include "subdiv/patterns.hpp"
#include "subdiv/two_block.hpp"

namespace py = pybind11;
using namespace subdiv;

namespace {

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }
nlohmann::json from_py(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

// Patterns may be given as a spec string or as a Digraph.
Digraph as_pattern(const py::object& p) {
  if (py::isinstance<py::str>(p)) return pattern_graph(parse_pattern_spec(p.cast<std::string>()));
  return p.cast<Digraph>();
}

py::dict finder_dict(const FinderResult& r) {
  py::dict out;
  out["status"] = finder_status_name(r.status);
  out["route"] = r.route;
  out["certificate"] = r.certificate ? to_py(certificate_to_json(*r.certificate)) : py::none();
  out["stuck"] = r.stuck ? to_py(nlohmann::json::parse(stuck_to_json(*r.stuck))) : py::none();
  out["log"] = r.log;
  out["nodes"] = r.nodes;
  return out;
}

}  // namespace

PYBIND11_MODULE(_subdiv, m) {
  m.doc() = "Subdivision finders for oriented cycles in digraphs";

  // Created once and kept alive for the interpreter lifetime.
  static PyObject* error_type = PyErr_NewException("subdiv._subdiv.SubdivError", PyExc_RuntimeError, nullptr);
  m.attr("SubdivError") = py::handle(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyObject* value = PyObject_CallFunction(error_type, "s", e.what());
      py::str kind{std::string(error_kind_name(e.kind()))};
      PyObject_SetAttrString(value, "kind", kind.ptr());
      PyErr_SetObject(error_type, value);
      Py_DECREF(value);
    }
  });

  py::class_<Digraph>(m, "Digraph")
      .def(py::init<int, const std::vector<Arc>&>(), py::arg("n"), py::arg("arcs") = std::vector<Arc>{})
      .def_property_readonly("n", &Digraph::n)
      .def("arc_count", &Digraph::arc_count)
      .def("arcs", &Digraph::arcs)
      .def("out", &Digraph::out)
      .def("in_", &Digraph::in)
      .def("has_arc", &Digraph::has_arc)
      .def("__eq__", &Digraph::operator==)
      .def("__repr__", [](const Digraph& d) {
        return "Digraph(n=" + std::to_string(d.n()) + ", arcs=" + std::to_string(d.arc_count()) + ")";
      });

  m.def("read_edge_list_file", &read_edge_list_file);
  m.def("pattern", [](const std::string& spec) { return pattern_graph(parse_pattern_spec(spec)); },
        "Digraph for a pattern spec such as 'cab:2,3'");
  m.def("bioriented_clique", &bioriented_clique);
  m.def("directed_cycle", &directed_cycle);
  m.def("k3_minus_e", &k3_minus_e);
  m.def("pattern_cab", &pattern_cab);
  m.def("pattern_two_block", &pattern_two_block);

  m.def("min_out_degree", &min_out_degree);
  m.def("directed_girth", &directed_girth, "None for acyclic digraphs");
  m.def("strong_arc_connectivity", &strong_arc_connectivity);
  m.def("strong_components", &strong_components);
  m.def("long_dicycle", &long_dicycle);
  m.def("vertex_disjoint_paths", [](const Digraph& d, Vertex u, Vertex v, int k) {
    PathsOrCut r = vertex_disjoint_paths(d, u, v, k);
    py::dict out;
    std::vector<VertexList> paths;
    for (const auto& p : r.paths) paths.push_back(p.vertices);
    out["paths"] = paths;
    out["cut"] = r.cut;
    return out;
  });

  m.def(
      "find",
      [](const Digraph& d, const std::string& spec, std::uint64_t budget, std::uint64_t seed, bool exact_fallback) {
        SearchBudget b{budget, 0};
        return finder_dict(find_pattern(d, parse_pattern_spec(spec), b, {exact_fallback}, seed));
      },
      py::arg("d"), py::arg("pattern"), py::arg("budget") = 10'000'000, py::arg("seed") = 1,
      py::arg("exact_fallback") = true);
  m.def(
      "contains_subdivision",
      [](const Digraph& d, const py::object& pattern, std::uint64_t budget) {
        SearchResult r = contains_subdivision(d, as_pattern(pattern), budget);
        py::dict out;
        out["status"] = r.status == SearchStatus::Found ? "found" : r.status == SearchStatus::None ? "none" : "budget-exceeded";
        out["certificate"] = r.certificate ? to_py(certificate_to_json(*r.certificate)) : py::none();
        return out;
      },
      py::arg("d"), py::arg("pattern"), py::arg("budget") = 10'000'000);
  m.def("validate_certificate", [](const Digraph& d, const py::object& pattern, const py::object& cert) {
    ValidationReport r = validate_certificate(d, as_pattern(pattern), certificate_from_json(from_py(cert)));
    return py::make_tuple(r.ok, r.message);
  });
  m.def(
      "find_k3e", [](const Digraph& d, Vertex v0) { return to_py(certificate_to_json(find_k3e(d, v0))); },
      py::arg("d"), py::arg("v0"));

  m.def("enumerate_digraphs", &enumerate_digraphs, py::arg("n"), py::arg("min_out"));
  m.def(
      "verify_upper",
      [](const std::string& spec, int K, int n_max, const std::string& mode, std::uint64_t count, std::uint64_t seed) {
        MaderMode md;
        if (mode == "sampled") {
          md.kind = MaderMode::Kind::Sampled;
          md.count = count;
          md.seed = seed;
        }
        return to_py(report_to_json(verify_upper(parse_pattern_spec(spec), K, n_max, md)));
      },
      py::arg("pattern"), py::arg("K"), py::arg("n_max"), py::arg("mode") = "exhaustive", py::arg("count") = 100,
      py::arg("seed") = 1);
  m.def("lower_witness", [](const py::object& pattern) { return lower_witness(as_pattern(pattern)); });
}

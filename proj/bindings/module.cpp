#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "simfvs/generators.hpp"
#include "simfvs/io.hpp"
#include "simfvs/kernel.hpp"
#include "simfvs/oracle.hpp"
#include "simfvs/reductions.hpp"
#include "simfvs/solver.hpp"

namespace py = pybind11;
using namespace simfvs;

namespace {

struct ReduceResultPy {
  EdgeColoredGraph graph;
  int k;
  std::vector<VertexId> forced;
  ReductionTrace trace;
  bool ok;
};

struct KernelResultPy {
  EdgeColoredGraph graph;
  int k;
  ReductionTrace trace;
  bool infeasible;
};

}  // namespace

PYBIND11_MODULE(_simfvs, m) {
  m.doc() = "simultaneous feedback vertex set solver toolkit";

  py::class_<EdgeColoredGraph>(m, "EdgeColoredGraph")
      .def(py::init<int, int>(), py::arg("alpha"), py::arg("num_vertices") = 0)
      .def("alpha", &EdgeColoredGraph::alpha)
      .def("add_vertex", &EdgeColoredGraph::add_vertex)
      .def("add_edge", &EdgeColoredGraph::add_edge, py::arg("u"), py::arg("v"), py::arg("color"),
           py::arg("multiplicity") = 1)
      .def("remove_edge", &EdgeColoredGraph::remove_edge, py::arg("u"), py::arg("v"),
           py::arg("color"), py::arg("multiplicity") = 1)
      .def("remove_vertex", &EdgeColoredGraph::remove_vertex)
      .def("has_vertex", &EdgeColoredGraph::has_vertex)
      .def("num_vertices", &EdgeColoredGraph::num_vertices)
      .def("vertices", &EdgeColoredGraph::vertices)
      .def("origin", &EdgeColoredGraph::origin)
      .def("multiplicity", &EdgeColoredGraph::multiplicity)
      .def("degree", &EdgeColoredGraph::degree)
      .def("total_degree", &EdgeColoredGraph::total_degree)
      .def("is_forest", &EdgeColoredGraph::is_forest)
      .def("find_cycle", &EdgeColoredGraph::find_cycle)
      .def("components", &EdgeColoredGraph::components)
      .def("contract_zero_edges", &EdgeColoredGraph::contract_zero_edges)
      .def("edges",
           [](const EdgeColoredGraph& g) {
             std::vector<std::tuple<int, int, int, int>> out;
             for (const auto& e : g.edges()) out.emplace_back(e.u, e.v, e.color, e.multiplicity);
             return out;
           })
      .def("__copy__", [](const EdgeColoredGraph& g) { return EdgeColoredGraph(g); })
      .def("__repr__", [](const EdgeColoredGraph& g) {
        return "<EdgeColoredGraph n=" + std::to_string(g.num_vertices()) +
               " alpha=" + std::to_string(g.alpha()) + ">";
      });

  py::class_<ReductionTrace>(m, "ReductionTrace")
      .def("lift", &ReductionTrace::lift)
      .def("__len__", [](const ReductionTrace& t) { return t.events.size(); });

  py::class_<ReduceResultPy>(m, "ReduceResult")
      .def_readonly("graph", &ReduceResultPy::graph)
      .def_readonly("k", &ReduceResultPy::k)
      .def_readonly("forced", &ReduceResultPy::forced)
      .def_readonly("trace", &ReduceResultPy::trace)
      .def_readonly("ok", &ReduceResultPy::ok);

  py::class_<KernelResultPy>(m, "KernelResult")
      .def_readonly("graph", &KernelResultPy::graph)
      .def_readonly("k", &KernelResultPy::k)
      .def_readonly("trace", &KernelResultPy::trace)
      .def_readonly("infeasible", &KernelResultPy::infeasible);

  m.def(
      "solve",
      [](const EdgeColoredGraph& g, int k, bool use_matching) {
        SolverOptions options;
        options.use_matching_base_for_two_colors = use_matching;
        return solve(g, k, options);
      },
      py::arg("graph"), py::arg("k"), py::arg("use_matching") = true);

  m.def("verify_solution", &verify_solution);

  m.def(
      "brute_force_min_simfvs",
      [](const EdgeColoredGraph& g, int cap, const std::vector<VertexId>& avoid) {
        OracleResult r = brute_force_min_simfvs(g, cap, avoid);
        return py::make_tuple(r.min_size, r.witness);
      },
      py::arg("graph"), py::arg("cap"), py::arg("avoid") = std::vector<VertexId>{});

  m.def(
      "reduce_exhaustive",
      [](const EdgeColoredGraph& g, int k, const std::vector<VertexId>& frozen) {
        ReducedInstance red = reduce_exhaustive(g, k, frozen);
        return ReduceResultPy{red.graph, red.k, red.forced, red.trace,
                              red.status == ReduceStatus::Ok};
      },
      py::arg("graph"), py::arg("k"), py::arg("frozen") = std::vector<VertexId>{});

  m.def(
      "kernelize",
      [](const EdgeColoredGraph& g, int k) {
        KernelResult r = kernelize(g, k);
        return KernelResultPy{r.graph, r.k, r.trace, r.infeasible};
      },
      py::arg("graph"), py::arg("k"));

  m.def("two_approx_fvs", [](const EdgeColoredGraph& g, ColorId color) {
    return two_approx_fvs(ColorView{&g, color});
  });

  m.def(
      "random_instance",
      [](int n, int alpha, int edges_per_color, std::uint64_t seed, int planted_size) {
        return random_instance({n, alpha, edges_per_color, seed, planted_size});
      },
      py::arg("n"), py::arg("alpha"), py::arg("edges_per_color"), py::arg("seed"),
      py::arg("planted_size") = -1);

  m.def("from_hitting_set", [](int universe, const std::vector<std::vector<int>>& sets) {
    SetSystem sys{universe, {sets}, 0};
    GeneratedGraph g = from_hitting_set(sys);
    return py::make_tuple(g.graph, g.element_vertex);
  });

  m.def("phs_to_simfvs",
        [](int universe, const std::vector<std::vector<std::vector<int>>>& groups) {
          SetSystem sys{universe, groups, 0};
          GeneratedGraph g = phs_to_simfvs(sys);
          return py::make_tuple(g.graph, g.element_vertex);
        });

  m.def("parse_ecg", &parse_ecg);
  m.def("serialize_ecg", &serialize_ecg, py::arg("graph"),
        py::arg("comments") = std::vector<std::string>{});
}

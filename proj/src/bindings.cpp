#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "entpure/dynamics.hpp"
#include "entpure/graphmc.hpp"
#include "entpure/noise.hpp"
#include "entpure/oracle.hpp"
#include "entpure/tensors.hpp"

namespace py = pybind11;
using namespace entpure;

namespace {

TwoColorableGraph make_graph(int n,
                             const std::vector<std::pair<int, int>>& edges,
                             const std::vector<std::string>& colors) {
  TwoColorableGraph g;
  g.n = n;
  g.edges = edges;
  for (const std::string& c : colors) {
    if (c == "A")
      g.color.push_back(Color::A);
    else if (c == "B")
      g.color.push_back(Color::B);
    else
      throw std::invalid_argument("color must be \"A\" or \"B\", got \"" + c +
                                  "\"");
  }
  g.nbr.assign(static_cast<std::size_t>(n > 0 ? n : 0), 0);
  for (const auto& [a, b] : edges)
    if (a >= 0 && a < n && b >= 0 && b < n) {
      g.nbr[static_cast<std::size_t>(a)] |= 1ull << b;
      g.nbr[static_cast<std::size_t>(b)] |= 1ull << a;
    }
  g.validate();
  return g;
}

py::list single_entries(const SingleTensor& t) {
  py::list out;
  for (int i = 0; i < 4; ++i) {
    py::list li;
    for (int j = 0; j < 4; ++j) {
      py::list lj;
      for (int k = 0; k < 4; ++k) lj.append(t.s[i][j][k]);
      li.append(lj);
    }
    out.append(li);
  }
  return out;
}

py::list double_entries(const DoubleTensor& t) {
  py::list out;
  for (int i = 0; i < 4; ++i) {
    py::list li;
    for (int j = 0; j < 4; ++j) {
      py::list lj;
      for (int k = 0; k < 4; ++k) {
        py::list lk;
        for (int l = 0; l < 4; ++l) lk.append(t.d[i][j][k][l]);
        lj.append(lk);
      }
      li.append(lj);
    }
    out.append(li);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "entanglement purification with single and double selection";

  py::enum_<Scheme>(m, "Scheme")
      .value("SINGLE", Scheme::Single)
      .value("DOUBLE", Scheme::Double);
  py::enum_<NoiseKind>(m, "NoiseKind")
      .value("UNIFORM", NoiseKind::Uniform)
      .value("KAY", NoiseKind::Kay);
  py::enum_<BoundVariant>(m, "BoundVariant")
      .value("A", BoundVariant::A)
      .value("B", BoundVariant::B);

  py::class_<NoiseParams>(m, "NoiseParams")
      .def(py::init<>())
      .def_readwrite("p", &NoiseParams::p)
      .def_readwrite("p_m", &NoiseParams::p_m)
      .def("p_g", &NoiseParams::p_g)
      .def("validate", &NoiseParams::validate);

  m.def("uniform_noise", &uniform_noise, py::arg("p_g"), py::arg("p_m"));
  m.def("kay_noise",
        py::overload_cast<double, double, double, double>(&kay_noise),
        py::arg("q1"), py::arg("q2"), py::arg("q3"), py::arg("p_m"));
  m.def("kay_noise", py::overload_cast<double, double>(&kay_noise),
        py::arg("p_g"), py::arg("p_m"));
  m.def("custom_noise", &custom_noise, py::arg("table"), py::arg("p_m"));
  m.def("make_noise", &make_noise, py::arg("kind"), py::arg("strength"),
        py::arg("p_m"));
  m.def("channel_initial_vector",
        py::overload_cast<double>(&channel_initial_vector), py::arg("f_ch"));

  py::class_<PurificationMap>(m, "PurificationMap")
      .def_static("from_noise", &PurificationMap::from_noise, py::arg("scheme"),
                  py::arg("noise"), py::arg("exact") = false)
      .def_readonly("scheme", &PurificationMap::scheme)
      .def("entries", [](const PurificationMap& map) -> py::list {
        return map.scheme == Scheme::Single ? single_entries(map.single)
                                            : double_entries(map.dbl);
      });

  py::class_<StepResult>(m, "StepResult")
      .def_readonly("f", &StepResult::f)
      .def_readonly("success", &StepResult::success);
  m.def("apply_map", &apply_map, py::arg("map"), py::arg("f"));

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("states", &Trajectory::states)
      .def_readonly("success", &Trajectory::success)
      .def_readonly("converged", &Trajectory::converged);
  m.def("iterate", &iterate, py::arg("map"), py::arg("f0"),
        py::arg("max_rounds") = 10000);

  py::class_<FixedPointReport>(m, "FixedPointReport")
      .def_readonly("f_max", &FixedPointReport::f_max)
      .def_readonly("f_min", &FixedPointReport::f_min)
      .def_readonly("f_mix", &FixedPointReport::f_mix)
      .def_readonly("converged", &FixedPointReport::converged)
      .def_readonly("iterations", &FixedPointReport::iterations);
  m.def("fixed_points", &fixed_points, py::arg("map"));
  m.def("inside_working_range", &inside_working_range, py::arg("map"));
  m.def("gate_noise_threshold", &gate_noise_threshold, py::arg("scheme"),
        py::arg("kind"), py::arg("p_m"), py::arg("strength_hi") = 0.2,
        py::arg("tol") = 1e-4);

  py::class_<YieldReport>(m, "YieldReport")
      .def_readonly("target_f", &YieldReport::target_f)
      .def_readonly("f_ch", &YieldReport::f_ch)
      .def_readonly("n_rounds", &YieldReport::n_rounds)
      .def_readonly("yield_", &YieldReport::yield)
      .def_readonly("per_round_success", &YieldReport::per_round_success);
  m.def("yield_to_target", &yield, py::arg("map"), py::arg("target_f"),
        py::arg("f_ch"));

  m.def("upper_bound_first_order", &upper_bound_first_order, py::arg("noise"),
        py::arg("variant"));
  m.def("single_double_gap", &single_double_gap, py::arg("p_g"));
  m.def("multi_upper_bound", &multi_upper_bound, py::arg("n"), py::arg("p_g"));

  py::class_<TwoColorableGraph>(m, "TwoColorableGraph")
      .def(py::init(&make_graph), py::arg("n"), py::arg("edges"),
           py::arg("colors"))
      .def_static("from_json_text", &TwoColorableGraph::from_json_text,
                  py::arg("text"))
      .def_static("from_json_file", &TwoColorableGraph::from_json_file,
                  py::arg("path"))
      .def_readonly("n", &TwoColorableGraph::n)
      .def_readonly("edges", &TwoColorableGraph::edges)
      .def("validate", &TwoColorableGraph::validate,
           py::arg("allow_disconnected") = false)
      .def("colors", [](const TwoColorableGraph& g) {
        std::vector<std::string> out;
        for (Color c : g.color) out.emplace_back(c == Color::A ? "A" : "B");
        return out;
      });

  py::class_<MCConfig>(m, "MCConfig")
      .def(py::init<>())
      .def_readwrite("graph", &MCConfig::graph)
      .def_readwrite("scheme", &MCConfig::scheme)
      .def_readwrite("noise", &MCConfig::noise)
      .def_readwrite("f_ch", &MCConfig::f_ch)
      .def_readwrite("rounds", &MCConfig::rounds)
      .def_readwrite("samples", &MCConfig::samples)
      .def_readwrite("seed", &MCConfig::seed);

  py::class_<RoundStats>(m, "RoundStats")
      .def_readonly("round", &RoundStats::round)
      .def_readonly("samples_in", &RoundStats::samples_in)
      .def_readonly("accepted", &RoundStats::accepted)
      .def_readonly("acceptance_rate", &RoundStats::acceptance_rate)
      .def_readonly("fidelity", &RoundStats::fidelity)
      .def_readonly("stderr", &RoundStats::se);

  py::class_<MCResult>(m, "MCResult")
      .def_readonly("rounds", &MCResult::rounds)
      .def_readonly("yield_", &MCResult::yield);
  m.def("mc_purification", &mc_purification, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
}

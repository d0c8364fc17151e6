#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bcnoise/cli.hpp"
#include "bcnoise/dynamics.hpp"
#include "bcnoise/measure.hpp"
#include "bcnoise/network.hpp"
#include "bcnoise/profile.hpp"
#include "bcnoise/sweep.hpp"
#include "bcnoise/version.hpp"

namespace py = pybind11;
using namespace bcnoise;

namespace {

template <typename T>
py::array_t<T> to_array(const std::vector<T>& v) {
  py::array_t<T> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::vector<double> as_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  return {a.data(), a.data() + a.size()};
}

py::dict stats_dict(const RunStats& s) {
  py::dict d;
  d["steps"] = s.steps;
  d["interactions"] = s.interactions;
  d["consensus"] = s.consensus;
  d["mutations"] = s.mutations;
  d["isolated_skips"] = s.isolated_skips;
  d["wall_seconds"] = s.wall_seconds;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bounded-confidence opinion dynamics with opinion-dependent mutation";
  m.attr("__version__") = kVersion;

  py::enum_<ProfileKind>(m, "ProfileKind")
      .value("Uniform", ProfileKind::Uniform)
      .value("AsymmetricLinear", ProfileKind::AsymmetricLinear)
      .value("SymmetricTent", ProfileKind::SymmetricTent);

  py::class_<MutationProfile>(m, "MutationProfile")
      .def(py::init<ProfileKind, double, double>(), py::arg("kind"), py::arg("p"),
           py::arg("alpha") = 0.0)
      .def_static("uniform", &MutationProfile::uniform, py::arg("p"))
      .def_static("asymmetric", &MutationProfile::asymmetric, py::arg("p"), py::arg("alpha"))
      .def_static("symmetric", &MutationProfile::symmetric, py::arg("p"), py::arg("alpha"))
      .def_property_readonly("kind", &MutationProfile::kind)
      .def_property_readonly("p", &MutationProfile::base_rate)
      .def_property_readonly("alpha", &MutationProfile::slope)
      .def("evaluate", &MutationProfile::evaluate, py::arg("x"))
      .def("mean_rate", &MutationProfile::mean_rate)
      .def("__repr__", [](const MutationProfile& p) {
        std::ostringstream s;
        s << "MutationProfile(" << to_string(p.kind()) << ", p=" << p.base_rate()
          << ", alpha=" << p.slope() << ")";
        return s.str();
      });

  py::class_<DegreeStats>(m, "DegreeStats")
      .def_readonly("mean", &DegreeStats::mean)
      .def_readonly("min", &DegreeStats::min)
      .def_readonly("max", &DegreeStats::max)
      .def_readonly("isolated", &DegreeStats::isolated);

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<Edge>& edges) { return Graph(n, edges); }),
           py::arg("node_count"), py::arg("edges"))
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def("degree", &Graph::degree, py::arg("u"))
      .def("neighbors", [](const Graph& g, Node u) {
        const auto nbrs = g.neighbors(u);
        return std::vector<Node>(nbrs.begin(), nbrs.end());
      })
      .def("edges", &Graph::edges)
      .def("degree_stats", &degree_stats)
      .def("giant_component", &giant_component)
      .def("to_edge_list", [](const Graph& g) {
        std::ostringstream out;
        write_edge_list(g, out);
        return out.str();
      })
      .def_static("from_edge_list", [](const std::string& text) {
        std::istringstream in(text);
        return read_edge_list(in);
      })
      .def(py::self == py::self);

  m.def("generate_er", [](std::size_t n, double avg_degree, std::uint64_t seed) {
    Rng rng(seed);
    return generate_er(n, avg_degree, rng);
  }, py::arg("n"), py::arg("avg_degree"), py::arg("seed"));

  m.def("pair_update", &pair_update, py::arg("a"), py::arg("b"), py::arg("d"), py::arg("mu") = 0.5);

  py::enum_<Scheme>(m, "Scheme")
      .value("MutateOrInteract", Scheme::MutateOrInteract)
      .value("MutateAndInteract", Scheme::MutateAndInteract);

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("d", &SimConfig::tolerance)
      .def_readwrite("mu", &SimConfig::mu)
      .def_readwrite("steps", &SimConfig::total_steps)
      .def_readwrite("window", &SimConfig::window)
      .def_readwrite("scheme", &SimConfig::scheme)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("bins", &SimConfig::bins)
      .def_property("init", [](const SimConfig& c) { return to_string(c.init); },
                    [](SimConfig& c, const std::string& s) { c.init = parse_init(s); });

  m.def("run", [](const Graph& g, const SimConfig& cfg, const MutationProfile& profile) {
    RunResult r;
    {
      py::gil_scoped_release release;
      r = run(g, cfg, profile);
    }
    py::dict out;
    out["final_opinions"] = to_array(r.final_state.opinions);
    std::vector<std::uint64_t> counts(r.histogram.counts().begin(), r.histogram.counts().end());
    out["counts"] = to_array(counts);
    out["density"] = to_array(r.histogram.density());
    out["bin_centers"] = to_array(bin_centers(r.histogram.bins()));
    out["stats"] = stats_dict(r.stats);
    return out;
  }, py::arg("graph"), py::arg("config"), py::arg("profile"));

  py::class_<Peak>(m, "Peak")
      .def_readonly("bin", &Peak::bin)
      .def_readonly("location", &Peak::location)
      .def_readonly("height", &Peak::height)
      .def("__repr__", [](const Peak& p) {
        std::ostringstream s;
        s << "Peak(location=" << p.location << ", height=" << p.height << ")";
        return s.str();
      });

  m.def("detect_peaks", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& density,
                           double min_height_frac, std::size_t min_separation) {
    return detect_peaks(as_vector(density), {min_height_frac, min_separation});
  }, py::arg("density"), py::arg("min_height_frac") = 0.2, py::arg("min_separation") = 9);
  m.def("symmetry_l1", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& f) {
    return symmetry_l1(as_vector(f));
  });
  m.def("l1_distance", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
                          const py::array_t<double, py::array::c_style | py::array::forcecast>& b) {
    return l1_distance(as_vector(a), as_vector(b));
  });
  m.def("histogram_density", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
                                std::size_t bins) {
    Histogram h(bins);
    h.accumulate(as_vector(x));
    return to_array(h.density());
  }, py::arg("opinions"), py::arg("bins") = 200);

  py::enum_<StreamTag>(m, "StreamTag")
      .value("Network", StreamTag::Network)
      .value("Dynamics", StreamTag::Dynamics);
  m.def("derive_seed", &derive_seed, py::arg("master"), py::arg("replicate"), py::arg("d_index"),
        py::arg("tag"));

  py::class_<SweepPlan>(m, "SweepPlan")
      .def(py::init<>())
      .def_readwrite("d_start", &SweepPlan::d_start)
      .def_readwrite("d_end", &SweepPlan::d_end)
      .def_readwrite("d_step", &SweepPlan::d_step)
      .def_readwrite("replicates", &SweepPlan::replicates)
      .def_readwrite("base", &SweepPlan::base)
      .def_readwrite("n", &SweepPlan::n)
      .def_readwrite("avg_degree", &SweepPlan::avg_degree)
      .def_readwrite("profile", &SweepPlan::profile)
      .def_readwrite("master_seed", &SweepPlan::master_seed)
      .def("d_values", &d_grid)
      .def("task_count", [](const SweepPlan& p) { return plan_tasks(p).size(); });

  m.def("sweep", [](const SweepPlan& plan, std::size_t workers) {
    SweepResult r;
    {
      py::gil_scoped_release release;
      r = execute(plan, workers);
    }
    const std::size_t rows = r.map.densities.size();
    const std::size_t bins = plan.base.bins;
    py::array_t<double> densities({rows, bins});
    auto view = densities.mutable_unchecked<2>();
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t b = 0; b < bins; ++b) view(i, b) = r.map.densities[i][b];
    py::dict out;
    out["d_values"] = to_array(r.map.d_values);
    out["densities"] = densities;
    out["bin_centers"] = to_array(bin_centers(bins));
    return out;
  }, py::arg("plan"), py::arg("workers") = 1);

  m.def("cli", [](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    int code;
    {
      py::gil_scoped_release release;
      code = cli::main(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command-line interface in-process; returns (code, stdout, stderr).");
}

#include "sstl/errors.hpp"
#include "sstl/monitor_bool.hpp"
#include "sstl/monitor_quant.hpp"
#include "sstl/parser.hpp"
#include "sstl/smc.hpp"
#include "sstl/turing.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <limits>
#include <sstream>

namespace py = pybind11;
using namespace sstl;

namespace {

/// int, float, str ("1/2", "0.5") or fractions.Fraction.
Time to_time(const py::handle& h) {
  if (py::isinstance<py::int_>(h)) return Time(h.cast<std::int64_t>());
  if (py::isinstance<py::str>(h)) return to_time(py::module_::import("fractions").attr("Fraction")(h));
  if (py::hasattr(h, "numerator") && py::hasattr(h, "denominator") && !py::isinstance<py::float_>(h))
    return Time(h.attr("numerator").cast<std::int64_t>(), h.attr("denominator").cast<std::int64_t>());
  return time_from_double(h.cast<double>());
}

struct PyFormula {
  Formula f;
};

py::object from_time(const Time& t) {
  return py::module_::import("fractions").attr("Fraction")(t.numerator(), t.denominator());
}

SurroundStrategy to_strategy(const std::string& s) {
  if (s == "full") return SurroundStrategy::Full;
  if (s == "restricted") return SurroundStrategy::Restricted;
  throw std::invalid_argument("surround strategy must be 'full' or 'restricted'");
}

MonitorOptions options(unsigned jobs, const std::string& strategy, bool oracle) {
  MonitorOptions o;
  o.jobs = jobs;
  o.surround = to_strategy(strategy);
  o.oracle = oracle;
  return o;
}

py::array_t<double> robustness_array(const QuantResult& r) {
  const std::size_t rows = r.signals.size();
  const std::size_t cols = rows ? r.signals.front().size() : 0;
  py::array_t<double> out({rows, cols});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t l = 0; l < rows; ++l)
    for (std::size_t k = 0; k < cols; ++k) view(l, k) = r.signals[l][k].to_double();
  return out;
}

TuringParams turing_params(const py::kwargs& kwargs) {
  TuringParams p;
  for (const auto& [key, value] : kwargs) {
    const auto k = key.cast<std::string>();
    if (k == "initial_a") {
      p.initial_a = value.cast<std::vector<double>>();
    } else if (k == "initial_b") {
      p.initial_b = value.cast<std::vector<double>>();
    } else if (k == "dt" || k == "T" || k == "h") {
      set_turing_param(p, k, to_string(to_time(value)));
    } else if (py::isinstance<py::bool_>(value)) {
      set_turing_param(p, k, value.cast<bool>() ? "true" : "false");
    } else {
      set_turing_param(p, k, py::str(value).cast<std::string>());
    }
  }
  validate(p);
  return p;
}

} // namespace

PYBIND11_MODULE(_sstl, m) {
  m.doc() = "Offline monitoring of spatio-temporal logic over graphs";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<SpaceError>(m, "SpaceError", error.ptr());
  py::register_exception<SignalError>(m, "SignalError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<SchemaError>(m, "SchemaError", error.ptr());
  auto evaluation = py::register_exception<EvaluationError>(m, "EvaluationError", error.ptr());
  py::register_exception<HorizonError>(m, "HorizonError", evaluation.ptr());
  py::register_exception<FormatError>(m, "FormatError", error.ptr());
  py::register_exception<IntegrationError>(m, "IntegrationError", error.ptr());

  py::class_<SpaceModel>(m, "Space")
      .def(py::init([](std::vector<std::string> ids, const std::vector<std::tuple<std::string, std::string, double>>& edges) {
             std::vector<Edge> e;
             for (const auto& [a, b, w] : edges) e.push_back({a, b, w});
             return SpaceModel(std::move(ids), e);
           }),
           py::arg("locations"), py::arg("edges"))
      .def("__len__", &SpaceModel::size)
      .def_property_readonly("ids", &SpaceModel::ids)
      .def_property_readonly("diameter", &SpaceModel::diameter)
      .def_property_readonly("hop_diameter", &SpaceModel::hop_diameter)
      .def("index_of", [](const SpaceModel& s, const std::string& id) { return s.index_of(id); })
      .def("distance", &SpaceModel::distance)
      .def("locations_in_range", &SpaceModel::locations_in_range, py::arg("location"), py::arg("d1"), py::arg("d2"))
      .def("edges", [](const SpaceModel& s) {
        std::vector<std::tuple<std::string, std::string, double>> out;
        for (const auto& e : s.edges()) out.emplace_back(e.from, e.to, e.weight);
        return out;
      });

  m.def("regular_grid", &regular_grid, py::arg("K"), py::arg("delta") = 1.0);
  m.def("read_graph", py::overload_cast<const std::filesystem::path&>(&read_graph), py::arg("path"));

  py::class_<Trace>(m, "Trace")
      .def(py::init([](std::vector<std::string> variables, py::array_t<double, py::array::c_style | py::array::forcecast> values,
                       const py::object& step) {
             if (values.ndim() != 3) throw std::invalid_argument("values must have shape (locations, samples, variables)");
             const auto L = static_cast<std::size_t>(values.shape(0));
             const auto N = static_cast<std::size_t>(values.shape(1));
             const auto V = static_cast<std::size_t>(values.shape(2));
             if (V != variables.size()) throw std::invalid_argument("last axis must match the variable list");
             Trace t(std::move(variables), L, N, to_time(step));
             auto view = values.unchecked<3>();
             for (std::size_t l = 0; l < L; ++l)
               for (std::size_t k = 0; k < N; ++k)
                 for (std::size_t v = 0; v < V; ++v) t.at(l, k, v) = view(l, k, v);
             return t;
           }),
           py::arg("variables"), py::arg("values"), py::arg("step"))
      .def_property_readonly("variables", &Trace::variables)
      .def_property_readonly("locations", &Trace::locations)
      .def_property_readonly("samples", &Trace::samples)
      .def_property_readonly("step", [](const Trace& t) { return from_time(t.step()); })
      .def("to_numpy", [](const Trace& t) {
        const auto V = t.variables().size();
        py::array_t<double> out({t.locations(), t.samples(), V});
        auto view = out.mutable_unchecked<3>();
        for (std::size_t l = 0; l < t.locations(); ++l)
          for (std::size_t k = 0; k < t.samples(); ++k)
            for (std::size_t v = 0; v < V; ++v) view(l, k, v) = t.at(l, k, v);
        return out;
      })
      .def("__eq__", [](const Trace& a, const Trace& b) { return a == b; });

  m.def("read_trace", py::overload_cast<const std::filesystem::path&, const SpaceModel&>(&read_trace),
        py::arg("path"), py::arg("space"));
  m.def("write_trace", [](const Trace& t, const SpaceModel& s) {
    std::ostringstream os;
    write_trace(t, s, os);
    return os.str();
  });

  py::class_<PyFormula>(m, "Formula")
      .def("__str__", [](const PyFormula& p) { return to_string(p.f); })
      .def("__repr__", [](const PyFormula& p) { return "Formula(" + to_string(p.f) + ")"; })
      .def_property_readonly("temporal_depth", [](const PyFormula& p) { return from_time(temporal_depth(p.f)); })
      .def_property_readonly("until_count", [](const PyFormula& p) { return until_count(p.f); })
      .def_property_readonly("variables", [](const PyFormula& p) { return variables(p.f); });

  m.def("parse_formula", [](const std::string& text) { return PyFormula{parse_formula(text)}; }, py::arg("text"));
  m.def("parse_script", [](const std::string& text) {
    py::dict out;
    const auto script = parse_script(text);
    for (const auto& [name, f] : script.entries()) out[py::str(name)] = PyFormula{f};
    return out;
  }, py::arg("text"));

  py::class_<BoolResult>(m, "BoolResult")
      .def_readonly("satisfied_at_zero", &BoolResult::satisfied_at_zero)
      .def("satisfied", [](const BoolResult& r, LocationIndex l, const py::object& t) { return r.satisfied(l, to_time(t)); })
      .def("intervals", [](const BoolResult& r, LocationIndex l) {
        std::vector<std::pair<py::object, py::object>> out;
        for (const auto& i : r.signals.at(l).positive()) out.emplace_back(from_time(i.begin), from_time(i.end));
        return out;
      });

  py::class_<QuantResult>(m, "QuantResult")
      .def_property_readonly("robustness_at_zero", [](const QuantResult& r) {
        std::vector<double> out;
        for (const auto& v : r.robustness_at_zero) out.push_back(v.to_double());
        return out;
      })
      .def_property_readonly("robustness", &robustness_array)
      .def_readonly("warnings", &QuantResult::warnings);

  m.def("monitor_bool", [](const PyFormula& f, const Trace& t, const SpaceModel& s, unsigned jobs, const std::string& strategy, bool oracle) {
    py::gil_scoped_release release;
    return monitor_bool(f.f, t, s, options(jobs, strategy, oracle));
  }, py::arg("formula"), py::arg("trace"), py::arg("space"), py::arg("jobs") = 0,
        py::arg("surround") = "restricted", py::arg("oracle") = false);

  m.def("monitor_quant", [](const PyFormula& f, const Trace& t, const SpaceModel& s, unsigned jobs, const std::string& strategy, bool oracle) {
    py::gil_scoped_release release;
    return monitor_quant(f.f, t, s, options(jobs, strategy, oracle));
  }, py::arg("formula"), py::arg("trace"), py::arg("space"), py::arg("jobs") = 0,
        py::arg("surround") = "restricted", py::arg("oracle") = false);

  m.def("quant_surround", [](const std::vector<double>& r1, const std::vector<double>& r2, const SpaceModel& s,
                             LocationIndex l, double d1, double d2, const std::string& strategy) {
    std::vector<ExtReal> a(r1.begin(), r1.end()), b(r2.begin(), r2.end());
    SurroundStats stats;
    const auto v = quant_surround(a, b, s, l, d1, d2, &stats, to_strategy(strategy));
    return std::make_pair(v.to_double(), stats.iterations);
  }, py::arg("r1"), py::arg("r2"), py::arg("space"), py::arg("location"), py::arg("d1"), py::arg("d2"),
        py::arg("surround") = "full");

  m.def("simulate_turing", [](const py::kwargs& kwargs) {
    const auto p = turing_params(kwargs);
    py::gil_scoped_release release;
    return std::make_pair(simulate_turing(p), turing_space(p));
  });

  m.def("split_seed", &split_seed, py::arg("master"), py::arg("index"));
  m.def("wilson_interval", [](std::size_t successes, std::size_t runs, double alpha) {
    const auto ci = wilson_interval(successes, runs, alpha);
    return std::make_pair(ci.low, ci.high);
  }, py::arg("successes"), py::arg("runs"), py::arg("alpha") = 0.05);
  m.def("pearson", &pearson, py::arg("x"), py::arg("y"));
  m.def("parse_grid", &parse_grid, py::arg("text"));

  m.def("smc_estimate", [](const PyFormula& f, const std::string& location, std::size_t runs, double alpha,
                           std::uint64_t seed, unsigned jobs, const py::kwargs& kwargs) {
    const auto base = turing_params(kwargs);
    const auto space = turing_space(base);
    EstimateConfig c;
    c.formula = f.f;
    c.location = location.empty() ? 0 : space.index_of(location);
    c.runs = runs;
    c.alpha = alpha;
    c.seed = seed;
    c.jobs = jobs;
    py::gil_scoped_release release;
    const auto e = estimate([base](std::uint64_t s) {
      auto p = base;
      p.seed = s;
      return simulate_turing(p);
    }, space, c);
    return estimate_json(e);
  }, py::arg("formula"), py::arg("location") = "", py::arg("runs") = 100, py::arg("alpha") = 0.05,
        py::arg("seed") = 0, py::arg("jobs") = 0);
}

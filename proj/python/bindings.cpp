// Python surface of the library: arrays in, arrays and dicts out.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gdnls/decomposition.hpp"
#include "gdnls/errors.hpp"
#include "gdnls/estimate_lab.hpp"
#include "gdnls/nonlinearity.hpp"
#include "gdnls/norms.hpp"
#include "gdnls/propagator.hpp"
#include "gdnls/run.hpp"

namespace py = pybind11;
using namespace gdnls;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

Profile to_profile(const CArray& a, double box_length) {
  if (a.ndim() != 1) throw ShapeError("expected a 1-d array");
  return Profile(box_length, CVec(a.data(), a.data() + a.size()));
}

CArray from_profile(const Profile& p) { return CArray(p.values.size(), p.values.data()); }

SpaceTimeField to_field(const CArray& a, const GridSpec& g) {
  if (a.ndim() != 2 || a.shape(0) != g.nt || a.shape(1) != g.nx) throw ShapeError("expected an (nt, nx) array");
  return SpaceTimeField(g, CVec(a.data(), a.data() + a.size()));
}

CArray from_field(const SpaceTimeField& f) {
  return CArray({f.grid.nt, f.grid.nx}, f.values.data());
}

py::dict result_dict(const CaseResult& r) {
  py::dict d;
  d["case_id"] = r.estimate.id();
  d["anchor"] = r.anchor;
  py::list samples;
  for (const auto& s : r.samples) samples.append(py::make_tuple(s.parameter, s.seed, s.ratio, s.lhs, s.rhs));
  d["samples"] = samples;
  d["slope"] = r.fit ? py::cast(r.fit->slope) : py::none();
  d["claimed_exponent"] = r.claimed_exponent;
  d["measured_exponent"] = r.measured_exponent;
  d["max_ratio"] = r.max_ratio;
  d["max_over_median"] = r.max_over_median;
  d["contracted"] = r.contracted;
  d["scale_invariant"] = r.scale_invariant;
  d["passed"] = r.passed;
  d["note"] = r.note;
  return d;
}

}  // namespace

PYBIND11_MODULE(_impl, m) {
  m.doc() = "Derivative NLS numerical laboratory";

  // translators registered later are tried first, so the subclasses win
  auto& base = py::register_exception<Error>(m, "Error");
  py::register_exception<ConfigError>(m, "ConfigError", base);
  py::register_exception<ParseError>(m, "ParseError", base);

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](double box_length, int nx, double t_min, double t_max, int nt) {
             GridSpec g{box_length, nx, t_min, t_max, nt};
             g.validate();
             return g;
           }),
           py::arg("box_length") = 64 * kPi, py::arg("nx") = 2048, py::arg("t_min") = -4.0, py::arg("t_max") = 4.0,
           py::arg("nt") = 1024)
      .def_readonly("box_length", &GridSpec::box_length)
      .def_readonly("nx", &GridSpec::nx)
      .def_readonly("t_min", &GridSpec::t_min)
      .def_readonly("t_max", &GridSpec::t_max)
      .def_readonly("nt", &GridSpec::nt)
      .def("x", [](const GridSpec& g) {
        py::array_t<double> out(g.nx);
        for (int i = 0; i < g.nx; ++i) out.mutable_at(i) = g.x(i);
        return out;
      })
      .def("t", [](const GridSpec& g) {
        py::array_t<double> out(g.nt);
        for (int j = 0; j < g.nt; ++j) out.mutable_at(j) = g.t(j);
        return out;
      })
      .def("__repr__", [](const GridSpec& g) {
        return "GridSpec(box_length=" + std::to_string(g.box_length) + ", nx=" + std::to_string(g.nx) +
               ", t_min=" + std::to_string(g.t_min) + ", t_max=" + std::to_string(g.t_max) +
               ", nt=" + std::to_string(g.nt) + ")";
      });

  m.def("psi", &psi, py::arg("xi"));
  m.def("project", [](const CArray& u, double box_length, double N) {
    return from_profile(project(to_profile(u, box_length), {N, BandKind::band}));
  }, py::arg("u"), py::arg("box_length"), py::arg("N"), "P_N u for a 1-d profile.");

  m.def("free_evolve", [](const CArray& u0, const GridSpec& g) {
    return from_field(free_evolve(to_profile(u0, g.box_length), g));
  }, py::arg("u0"), py::arg("grid"), "e^{itΔ}u0 on every grid time, shape (nt, nx).");
  m.def("duhamel", [](const CArray& F, const GridSpec& g) { return from_field(duhamel(to_field(F, g))); },
        py::arg("F"), py::arg("grid"));
  m.def("maximal_exponent", &maximal_exponent, py::arg("gamma"));

  m.def("sobolev_norm", [](const CArray& u, double box_length, double s, bool homogeneous) {
    return sobolev_norm(to_profile(u, box_length), s, homogeneous);
  }, py::arg("u"), py::arg("box_length"), py::arg("s"), py::arg("homogeneous") = false);
  m.def("xs_norm", [](const CArray& u, const GridSpec& g, double s, const std::string& variant) {
    return xs_norm(to_field(u, g), s, NormVariant::parse(variant));
  }, py::arg("u"), py::arg("grid"), py::arg("s"), py::arg("variant") = "sec4_local");

  m.def("parse_polynomial", [](const std::string& text) { return parse_polynomial(text).to_string(); },
        py::arg("text"), "Canonical text of a polynomial nonlinearity.");
  m.def("evaluate", [](const std::string& poly, const CArray& u, double box_length) {
    return from_profile(evaluate(parse_polynomial(poly), to_profile(u, box_length)));
  }, py::arg("polynomial"), py::arg("u"), py::arg("box_length"));

  m.def("verify_dec", [](double N, int c, std::uint64_t seed) {
    const GridSpec g = decomposition_grid(N, c);
    const DecReport r = verify_dec(random_source(g, N, seed), N, c, g);
    py::dict d;
    d["reconstruction_residual"] = r.reconstruction_residual;
    d["lv0_ratio"] = r.lv0_ratio;
    d["v0_ratio"] = r.v0_ratio;
    d["h_derivative_ratio"] = r.h_derivative_ratio;
    d["band_leak"] = r.band_leak;
    return d;
  }, py::arg("N"), py::arg("c") = 5, py::arg("seed") = 1, "Decomposition report for a random source.");

  m.def("list_cases", &list_cases);
  m.def("describe_case", &describe_case, py::arg("id"));
  m.def("measure", [](const std::string& id, std::optional<std::vector<double>> sweep, std::optional<int> seeds,
                      int jobs) {
    EstimateCase c = EstimateCase::parse(id);
    if (sweep) c.sweep = *sweep;
    if (seeds) c.seeds = *seeds;
    c.validate();
    CaseResult r;
    {
      py::gil_scoped_release nogil;
      r = measure(c, jobs);
    }
    return result_dict(r);
  }, py::arg("id"), py::arg("sweep") = py::none(), py::arg("seeds") = py::none(), py::arg("jobs") = 1);
  m.def("modulation_check", [](double N1, const std::string& pattern) {
    const ModulationReport r = modulation_threshold_check(N1, pattern);
    py::dict d;
    d["low_mass_fraction"] = r.low_mass_fraction;
    d["contracted"] = r.contracted;
    d["passed"] = r.passed;
    return d;
  }, py::arg("N1"), py::arg("pattern"));

  m.def("run", [](const std::string& config_json) {
    const RunRecord rec = run(RunConfig::from_json(config_json));
    py::list results;
    for (const auto& r : rec.results) results.append(result_dict(r));
    py::dict d;
    d["directory"] = rec.directory.string();
    d["passed"] = rec.passed();
    d["results"] = results;
    return d;
  }, py::arg("config_json"), "Runs a JSON config and writes its run record.");

  m.attr("__version__") = artifact_version();
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "qcarnot/bath_thermo.hpp"
#include "qcarnot/errors.hpp"
#include "qcarnot/optimal_protocol.hpp"
#include "qcarnot/power_opt.hpp"
#include "qcarnot/report_io.hpp"
#include "qcarnot/spin_engine.hpp"
#include "qcarnot/verify_oracle.hpp"

namespace py = pybind11;
using namespace qcarnot;

namespace {

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string dump(const nlohmann::json& j) { return j.dump(); }

EngineParams make_engine(double t_hot, double t_cold, double r_hot,
                         double r_cold, double delta_a, double delta_b,
                         double gamma) {
  EngineParams p;
  p.hot = {t_hot, r_hot};
  p.cold = {t_cold, r_cold};
  p.delta_a = delta_a;
  p.delta_b = delta_b;
  p.gamma = gamma;
  return p;
}

}  // namespace

PYBIND11_MODULE(_qcarnot, m) {
  auto error = py::register_exception<Error>(m, "QcarnotError", PyExc_RuntimeError);
  auto domain = py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<SingularityError>(m, "SingularityError", domain.ptr());
  py::register_exception<InvalidStateError>(m, "InvalidStateError", error.ptr());
  py::register_exception<DegenerateCycleError>(m, "DegenerateCycleError", error.ptr());
  py::register_exception<InfeasibleDurationError>(m, "InfeasibleDurationError", error.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", error.ptr());

  py::class_<Bath>(m, "Bath")
      .def(py::init([](double temperature, double tuning) { return Bath{temperature, tuning}; }),
           py::arg("temperature"), py::arg("tuning") = 0.0)
      .def_readwrite("temperature", &Bath::temperature)
      .def_readwrite("tuning", &Bath::tuning)
      .def_property_readonly("effective_temperature",
                             [](const Bath& b) { return effective_temperature(b); });

  py::class_<EmpBounds>(m, "EmpBounds")
      .def_readonly("eta_s", &EmpBounds::eta_s)
      .def_readonly("eta_min", &EmpBounds::eta_min)
      .def_readonly("eta_max", &EmpBounds::eta_max)
      .def_readonly("eta_gca", &EmpBounds::eta_gca);

  py::class_<LowDissipationOptimum>(m, "LowDissipationOptimum")
      .def_readonly("t_hot", &LowDissipationOptimum::t_hot)
      .def_readonly("t_cold", &LowDissipationOptimum::t_cold)
      .def_readonly("power", &LowDissipationOptimum::power)
      .def_readonly("emp", &LowDissipationOptimum::emp);

  py::class_<EngineParams>(m, "EngineParams")
      .def(py::init(&make_engine), py::kw_only(), py::arg("t_hot") = 25.8,
           py::arg("t_cold") = 12.9, py::arg("r_hot") = 2.0, py::arg("r_cold") = 1.8,
           py::arg("delta_a") = 5.0, py::arg("delta_b") = 3.0, py::arg("gamma") = 0.005)
      .def_readwrite("hot", &EngineParams::hot)
      .def_readwrite("cold", &EngineParams::cold)
      .def_readwrite("delta_a", &EngineParams::delta_a)
      .def_readwrite("delta_b", &EngineParams::delta_b)
      .def_readwrite("gamma", &EngineParams::gamma)
      .def("validate", &EngineParams::validate)
      .def("warnings", &EngineParams::warnings);

  py::class_<CycleBoundaries>(m, "CycleBoundaries")
      .def_readonly("p0", &CycleBoundaries::p0)
      .def_readonly("p1", &CycleBoundaries::p1)
      .def_readonly("delta_c", &CycleBoundaries::delta_c)
      .def_readonly("delta_d", &CycleBoundaries::delta_d)
      .def_readonly("delta_s", &CycleBoundaries::delta_s);

  py::enum_<BranchKind>(m, "BranchKind")
      .value("HOT", BranchKind::HotPlus)
      .value("COLD", BranchKind::ColdMinus);

  py::class_<ELBranch>(m, "ELBranch")
      .def_readonly("k", &ELBranch::k)
      .def_readonly("branch", &ELBranch::branch)
      .def_readonly("t_eff", &ELBranch::t_eff)
      .def_readonly("p_start", &ELBranch::p_start)
      .def_readonly("p_end", &ELBranch::p_end);

  m.def("effective_temperature", &effective_temperature, py::arg("bath"));
  m.def("generalized_carnot", &generalized_carnot, py::arg("hot"), py::arg("cold"));
  m.def("emp_bounds", &emp_bounds, py::arg("eta_s"));
  m.def("gca_efficiency", &gca_efficiency, py::arg("eta_s"));
  m.def(
      "low_dissipation_optimum",
      [](double q1_hot, double q1_cold, double delta_s, const Bath& hot, const Bath& cold) {
        return low_dissipation_optimum({q1_hot, q1_cold, delta_s}, hot, cold);
      },
      py::arg("q1_hot"), py::arg("q1_cold"), py::arg("delta_s"), py::arg("hot"),
      py::arg("cold"));

  m.def("stationary_population", &stationary_population, py::arg("gap"), py::arg("t_eff"));
  m.def("master_rhs", &master_rhs, py::arg("p"), py::arg("gap"), py::arg("t_eff"),
        py::arg("gamma"));
  m.def("gap_from_state", &gap_from_state, py::arg("p"), py::arg("p_rate"), py::arg("t_eff"),
        py::arg("gamma"));
  m.def("entropy", &entropy, py::arg("p"));
  m.def("cycle_boundaries", &cycle_boundaries, py::arg("params"));

  m.def("pdot_branch", &pdot_branch, py::arg("p"), py::arg("k"), py::arg("branch"));
  m.def("solve_k_for_duration", &solve_k_for_duration, py::arg("duration"),
        py::arg("branch"), py::arg("boundaries"), py::arg("gamma"), py::arg("t_eff"));
  m.def("duration_integral", &duration_integral, py::arg("branch"), py::arg("gamma"));
  m.def("heat_quadrature", &heat_quadrature, py::arg("branch"));
  m.def(
      "reconstruct_protocol",
      [](const ELBranch& el, double gamma, std::size_t n) {
        const ProtocolTrace trace = reconstruct_protocol(el, gamma, n);
        std::vector<double> t, p, gap;
        for (const auto& s : trace.samples) {
          t.push_back(s.t);
          p.push_back(s.p);
          gap.push_back(s.gap);
        }
        py::dict out;
        out["t"] = t;
        out["p"] = p;
        out["gap"] = gap;
        out["jump_start"] = py::make_tuple(trace.jump_start.before, trace.jump_start.after);
        out["jump_end"] = py::make_tuple(trace.jump_end.before, trace.jump_end.after);
        return out;
      },
      py::arg("branch"), py::arg("gamma"), py::arg("n_samples") = kDefaultProtocolSamples);

  m.def("power_at", &power_at, py::arg("t_hot"), py::arg("t_cold"), py::arg("params"));
  m.def(
      "maximize_power_json",
      [](const EngineParams& p, bool fit) {
        py::gil_scoped_release release;
        return dump(to_json(maximize_power(p, {fit})));
      },
      py::arg("params"), py::arg("fit_coefficients") = true);
  m.def(
      "sweep_json",
      [](const EngineParams& tmpl, const std::vector<double>& t_cold, unsigned jobs) {
        std::vector<SweepRow> rows;
        {
          py::gil_scoped_release release;
          rows = emp_vs_carnot_sweep(tmpl, t_cold, jobs);
        }
        nlohmann::json out = nlohmann::json::array();
        for (const auto& r : rows) {
          nlohmann::json row{{"t_cold", r.t_cold}};
          if (r.report) row["report"] = to_json(*r.report);
          else row["error"] = r.error;
          out.push_back(row);
        }
        return dump(out);
      },
      py::arg("params"), py::arg("t_cold"), py::arg("jobs") = 1);
  m.def(
      "audit_cycle_json",
      [](const EngineParams& p, double k_hot, double k_cold, std::size_t n) {
        py::gil_scoped_release release;
        return dump(to_json(audit_cycle(p, k_hot, k_cold, n)));
      },
      py::arg("params"), py::arg("k_hot"), py::arg("k_cold"), py::arg("n_samples") = 8192);
  m.def(
      "quasi_static_audit_json",
      [](const EngineParams& p, const std::vector<double>& grid) {
        py::gil_scoped_release release;
        return dump(to_json(quasi_static_audit(p, grid)));
      },
      py::arg("params"), py::arg("durations"));
}

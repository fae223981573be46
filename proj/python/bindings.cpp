#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "otto/engine.hpp"
#include "otto/ergotropy.hpp"
#include "otto/permutation.hpp"
#include "otto/statistics.hpp"
#include "otto/trajectory.hpp"
#include "otto/tur.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

py::dict summary_dict(const otto::EmpiricalSummary& s) {
  auto moments = [](const otto::RunningMoments& m) {
    return py::dict("mean"_a = m.mean(), "variance"_a = m.variance(), "standard_error"_a = m.standard_error());
  };
  py::list hist;
  for (const auto& e : s.histogram()) hist.append(py::make_tuple(e.shift_a, e.shift_b, e.mass));
  return py::dict("samples"_a = s.sample_count, "work"_a = moments(s.work), "heat_hot"_a = moments(s.heat_hot),
                  "heat_cold"_a = moments(s.heat_cold), "entropy"_a = moments(s.entropy),
                  "exp_minus_entropy"_a = moments(s.exp_minus_entropy), "histogram"_a = hist);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-stroke quantum Otto engine with permutation work strokes";

  py::class_<otto::EngineParams>(m, "EngineParams")
      .def(py::init([](double omega_a, double omega_b, double beta_a, double beta_b, std::size_t dim_a,
                       std::size_t dim_b) {
             otto::EngineParams p{omega_a, omega_b, beta_a, beta_b, dim_a, dim_b};
             p.validate();
             return p;
           }),
           "omega_a"_a = 1.0, "omega_b"_a = 0.75, "beta_a"_a = 0.5, "beta_b"_a = 4.0, "dim_a"_a = 3,
           "dim_b"_a = 3)
      .def_readwrite("omega_a", &otto::EngineParams::omega_a)
      .def_readwrite("omega_b", &otto::EngineParams::omega_b)
      .def_readwrite("beta_a", &otto::EngineParams::beta_a)
      .def_readwrite("beta_b", &otto::EngineParams::beta_b)
      .def_readwrite("dim_a", &otto::EngineParams::dim_a)
      .def_readwrite("dim_b", &otto::EngineParams::dim_b)
      .def("__repr__", [](const otto::EngineParams& p) {
        return "EngineParams(omega_a=" + std::to_string(p.omega_a) + ", omega_b=" + std::to_string(p.omega_b) +
               ", beta_a=" + std::to_string(p.beta_a) + ", beta_b=" + std::to_string(p.beta_b) + ")";
      });

  py::class_<otto::BasisPermutation>(m, "Permutation")
      .def(py::init<std::vector<std::size_t>>(), "map"_a)
      .def_static("from_cycles", &otto::parse_cycle_notation, "text"_a, "size"_a = 9)
      .def_property_readonly("map", [](const otto::BasisPermutation& p) {
        return std::vector<std::size_t>(p.map().begin(), p.map().end());
      })
      .def("cycles", &otto::cycle_notation)
      .def("is_identity", &otto::BasisPermutation::is_identity)
      .def("__eq__", [](const otto::BasisPermutation& a, const otto::BasisPermutation& b) { return a == b; })
      .def("__repr__", [](const otto::BasisPermutation& p) { return "Permutation('" + otto::cycle_notation(p) + "')"; });

  m.def("gibbs_state", [](const otto::EngineParams& p) { return otto::gibbs_state(p).probs; }, "params"_a);

  m.def("named_unitary", [](const std::string& name) {
    const auto label = otto::parse_regime(name);
    if (!label) throw py::value_error("unknown regime: " + name);
    return otto::named_unitary(*label);
  }, "name"_a);

  m.def("permutation_work", &otto::permutation_work, "params"_a, "unitary"_a);

  m.def("ergotropic_unitary", [](const otto::EngineParams& p) {
    const auto r = otto::ergotropic_unitary(p);
    py::object regime = py::none();
    if (r.regime) regime = py::str(std::string(otto::to_string(*r.regime)));
    return py::dict("unitary"_a = r.unitary, "mean_work"_a = r.mean_work, "regime"_a = regime);
  }, "params"_a);

  m.def("joint_distribution", [](const otto::EngineParams& p, const otto::BasisPermutation& u) {
    py::list out;
    for (const auto& a : otto::joint_distribution(p, u).atoms) {
      out.append(py::make_tuple(a.work, a.delta_e_a, a.probability));
    }
    return out;
  }, "params"_a, "unitary"_a);

  m.def("work_distribution", [](const otto::EngineParams& p, const otto::BasisPermutation& u) {
    py::list out;
    for (const auto& w : otto::work_marginal(otto::joint_distribution(p, u))) {
      out.append(py::make_tuple(w.work, w.probability));
    }
    return out;
  }, "params"_a, "unitary"_a);

  m.def("cycle_statistics", [](const otto::EngineParams& p, const otto::BasisPermutation& u) {
    const auto s = otto::cycle_statistics(p, u);
    return py::dict("mean_work"_a = s.mean_work, "var_work"_a = s.var_work, "mean_entropy"_a = s.mean_entropy,
                    "mean_delta_e_a"_a = s.mean_delta_e_a, "mean_delta_e_b"_a = s.mean_delta_e_b);
  }, "params"_a, "unitary"_a);

  m.def("characteristic_function",
        py::overload_cast<const otto::EngineParams&, const otto::BasisPermutation&, std::complex<double>,
                          std::complex<double>>(&otto::characteristic_function),
        "params"_a, "unitary"_a, "lam"_a, "mu"_a);

  m.def("integral_ft_residual", [](const otto::EngineParams& p, const otto::BasisPermutation& u) {
    return otto::integral_ft_residual(p, otto::joint_distribution(p, u));
  }, "params"_a, "unitary"_a);

  m.def("detailed_ft_check", &otto::detailed_ft_check, "params"_a, "unitary"_a);

  m.def("tur_report", [](const otto::EngineParams& p, const otto::BasisPermutation& u) {
    const auto r = otto::tur_report(p, u);
    py::dict bounds;
    for (otto::TurBound b : otto::kAllTurBounds) {
      bounds[py::str(std::string(otto::to_string(b)))] =
          py::dict("value"_a = r[b].value, "satisfied"_a = r[b].satisfied, "applicable"_a = r[b].applicable);
    }
    return py::dict("operational"_a = r.operational, "relative_fluctuations"_a = r.relative_fluctuations,
                    "mean_entropy"_a = r.mean_entropy, "generalized_fluctuations"_a = r.generalized_fluctuations,
                    "bounds"_a = bounds);
  }, "params"_a, "unitary"_a);

  m.def("sample_cycles", [](const otto::EngineParams& p, const otto::BasisPermutation& u, std::uint64_t count,
                            std::uint64_t seed, unsigned workers) {
    otto::EmpiricalSummary s;
    {
      py::gil_scoped_release release;
      s = otto::sample_cycles(p, u, count, seed, workers);
    }
    return summary_dict(s);
  }, "params"_a, "unitary"_a, "count"_a, "seed"_a = 20240611, "workers"_a = 1);
}

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qpgate/experiments.hpp"
#include "qpgate/units.hpp"
#include "qpgate/validate.hpp"

namespace py = pybind11;
using namespace qpg;

namespace {

py::array_t<cplx> to_numpy(const ComplexMatrix& m) {
  py::array_t<cplx> out({m.rows(), m.cols()});
  auto buf = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) buf(i, j) = m(i, j);
  }
  return out;
}

py::array_t<cplx> vec_to_numpy(const std::vector<cplx>& v) {
  py::array_t<cplx> out(v.size());
  auto buf = out.mutable_unchecked<1>();
  for (std::size_t i = 0; i < v.size(); ++i) buf(i) = v[i];
  return out;
}

ComplexMatrix from_numpy(const py::array_t<cplx, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-d array");
  ComplexMatrix m(static_cast<std::size_t>(a.shape(0)),
                  static_cast<std::size_t>(a.shape(1)));
  auto buf = a.unchecked<2>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i) {
    for (py::ssize_t j = 0; j < a.shape(1); ++j) {
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = buf(i, j);
    }
  }
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "One-step controlled-phase gate simulator for qutrits coupled to a cavity";
  m.attr("__version__") = kToolVersion;

  py::register_exception<ConfigError>(m, "QpgConfigError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "QpgDimensionError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "QpgNumericalError", PyExc_RuntimeError);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def_readwrite("n_qutrits", &SystemParams::n_qutrits)
      .def_readwrite("mu1", &SystemParams::mu1)
      .def_readwrite("mu", &SystemParams::mu)
      .def_readwrite("delta1", &SystemParams::delta1)
      .def_readwrite("delta", &SystemParams::delta_cap)
      .def_readwrite("kappa", &SystemParams::kappa)
      .def_readwrite("gamma_fe", &SystemParams::gamma_fe)
      .def_readwrite("gamma_fg", &SystemParams::gamma_fg)
      .def_readwrite("gamma_eg", &SystemParams::gamma_eg)
      .def_readwrite("gamma_phi_f", &SystemParams::gamma_phi_f)
      .def_readwrite("gamma_phi_e", &SystemParams::gamma_phi_e)
      .def_readwrite("fock_cutoff", &SystemParams::fock_cutoff)
      .def("validate", &SystemParams::validate);

  py::class_<DerivedParams>(m, "DerivedParams")
      .def_readonly("delta_small", &DerivedParams::delta_small)
      .def_readonly("lambda_", &DerivedParams::lambda)
      .def_readonly("gate_time", &DerivedParams::gate_time)
      .def_readonly("stark_f1", &DerivedParams::stark_f1)
      .def_readonly("cross_shift", &DerivedParams::cross_shift)
      .def_readonly("matching_residual", &DerivedParams::matching_residual);

  py::class_<HilbertSpace>(m, "HilbertSpace")
      .def(py::init<int, int>(), py::arg("n_qutrits"), py::arg("fock_cutoff"))
      .def_readonly("n_qutrits", &HilbertSpace::n_qutrits)
      .def_readonly("fock_cutoff", &HilbertSpace::fock_cutoff)
      .def("dim", &HilbertSpace::dim)
      .def("index", &HilbertSpace::index, py::arg("levels"), py::arg("n_photon"));

  m.def("derive", &derive, py::arg("params"));
  m.def("matched_mu", &matched_mu, py::arg("delta1"), py::arg("delta"),
        py::arg("mu1"));

  m.def("kron", [](const py::array_t<cplx, py::array::c_style | py::array::forcecast>& a,
                   const py::array_t<cplx, py::array::c_style | py::array::forcecast>& b) {
    return to_numpy(kron(from_numpy(a), from_numpy(b)));
  });
  m.def("annihilation",
        [](int cutoff) { return to_numpy(annihilation(cutoff)); });
  m.def("build_full_hamiltonian",
        [](const SystemParams& p, const HilbertSpace& s, double t) {
          return to_numpy(build_full_hamiltonian(p, s, t));
        });
  m.def("build_dispersive_hamiltonian",
        [](const SystemParams& p, const HilbertSpace& s, double t) {
          return to_numpy(build_dispersive_hamiltonian(p, s, t));
        });
  m.def("build_effective_hamiltonian_full",
        [](const SystemParams& p, int n) {
          return to_numpy(build_effective_hamiltonian_full(p, n));
        });
  m.def("build_effective_hamiltonian_encoded",
        [](const SystemParams& p, int n) {
          return to_numpy(build_effective_hamiltonian_encoded(p, n));
        });
  m.def("ideal_gate_matrix",
        [](int n) { return to_numpy(ideal_gate_matrix(n)); });
  m.def("closed_form_unitary",
        [](const SystemParams& p, int n, double t) {
          return to_numpy(closed_form_unitary(p, n, t));
        });
  m.def("encode", [](const std::string& bits, const HilbertSpace& s) {
    return vec_to_numpy(encode(bits, s).amplitudes);
  });
  m.def("product_superposition_state", [](const HilbertSpace& s) {
    return vec_to_numpy(product_superposition_state(s).amplitudes);
  });
  m.def("truth_table", &truth_table, py::arg("n"));

  m.def(
      "gate_fidelity_ideal",
      [](const SystemParams& p, const std::string& input_bits) {
        const HilbertSpace space(p.n_qutrits, p.fock_cutoff);
        InputStateSpec spec;
        if (!input_bits.empty()) {
          spec.kind = InputStateSpec::Kind::kBasis;
          spec.bits = input_bits;
        }
        return gate_fidelity_ideal(p, spec.make(space));
      },
      py::arg("params"), py::arg("input_bits") = std::string(),
      "Fidelity of the full-model gate; empty input selects the product "
      "superposition input");
  m.def(
      "gate_fidelity_lossy",
      [](const SystemParams& p, const std::string& input_bits) {
        const HilbertSpace space(p.n_qutrits, p.fock_cutoff);
        InputStateSpec spec;
        if (!input_bits.empty()) {
          spec.kind = InputStateSpec::Kind::kBasis;
          spec.bits = input_bits;
        }
        return gate_fidelity_lossy(p, spec.make(space));
      },
      py::arg("params"), py::arg("input_bits") = std::string());

  m.def(
      "run_gate_ideal",
      [](const SystemParams& p) {
        const HilbertSpace space(p.n_qutrits, p.fock_cutoff);
        const GateRun run = run_gate_ideal(p, product_superposition_state(space));
        py::dict out;
        out["fidelity"] = run.fidelity;
        out["gate_time"] = run.derived.gate_time;
        out["max_photon"] = run.max_photon;
        out["drift"] = run.drift;
        return out;
      },
      py::arg("params"));

  m.def("physical_units_report",
        [](double mu1_rad_per_s, double omega_c_rad_per_s, double kappa_mu1,
           double gate_time_mu1) {
          const UnitsReport r = physical_units_report(
              mu1_rad_per_s, omega_c_rad_per_s, kappa_mu1, gate_time_mu1);
          py::dict out;
          out["kappa_rad_per_s"] = r.kappa_rad_per_s;
          out["kappa_over_2pi_hz"] = r.kappa_over_2pi_hz;
          out["gate_time_s"] = r.gate_time_s;
          out["quality_factor"] = r.quality_factor;
          return out;
        },
        py::arg("mu1_rad_per_s"), py::arg("omega_c_rad_per_s"),
        py::arg("kappa_mu1"), py::arg("gate_time_mu1"));
}

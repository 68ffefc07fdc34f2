#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmirror/analytic.hpp"
#include "qmirror/entanglement.hpp"
#include "qmirror/errors.hpp"
#include "qmirror/fock.hpp"
#include "qmirror/model.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace qmirror;

namespace {

BasisOrder order_from_string(const std::string& s) {
  if (s == "ascending") return BasisOrder::ascending;
  if (s == "descending") return BasisOrder::descending;
  throw std::invalid_argument("basis order must be 'ascending' or 'descending'");
}

TwoQubitDensity make_density(const Eigen::Matrix4cd& rho, const std::string& order,
                             bool normalized) {
  TwoQubitDensity d;
  d.rho = rho;
  d.order = order_from_string(order);
  d.normalized = normalized;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two movable mirrors in a single-mode cavity field: truncated-Fock "
            "simulation and two-qubit entanglement measures";

  py::register_exception<numerical_error>(m, "NumericalError");
  py::register_exception<truncation_error>(m, "TruncationError");

  // --- Fock algebra -------------------------------------------------------
  m.def("fock_state", &fock_state, "dim"_a, "n"_a, "Fock basis state |n> on a dim-level mode");
  m.def("coherent_state", &coherent_state, "dim"_a, "alpha"_a,
        "Truncated coherent state, renormalized on the retained levels");
  m.def("coherent_truncation_suspect", &coherent_truncation_suspect, "dim"_a, "alpha"_a);
  m.def("poisson_tail_mass", &poisson_tail_mass, "mean"_a, "levels"_a);
  m.def("annihilation", &annihilation, "dim"_a);
  m.def("creation", &creation, "dim"_a);
  m.def("number_operator", &number_operator, "dim"_a);
  m.def(
      "embed",
      [](const Matrix& op, int mode, const std::vector<int>& dims) {
        return embed(op, mode, HilbertSpace(dims));
      },
      "op"_a, "mode"_a, "dims"_a, "op on one mode, identity on the others");
  m.def(
      "partial_trace",
      [](const Matrix& rho, const std::vector<int>& dims, const std::vector<int>& keep) {
        return partial_trace(rho, HilbertSpace(dims), keep);
      },
      "rho"_a, "dims"_a, "keep"_a, "Reduced density matrix over the kept modes");
  m.def("expm_hermitian", &expm_hermitian, "h"_a, "scale"_a,
        "exp(-i*scale*h) via eigendecomposition of the Hermitian h");
  m.def("hermiticity_defect", &hermiticity_defect, "m"_a);
  m.def("unitarity_defect", &unitarity_defect, "u"_a);
  m.def("operator_norm", &operator_norm, "m"_a);

  // --- Model --------------------------------------------------------------
  py::class_<ModelParams>(m, "ModelParams")
      .def_static("dimensionless", &ModelParams::dimensionless, "k"_a, "n"_a, "r"_a = 13.0)
      .def_static("from_kn", &ModelParams::from_kn, "kn"_a, "r"_a = 13.0)
      .def_static("from_physical", &ModelParams::from_physical, "omega0"_a, "omega"_a,
                  "length"_a, "mass"_a, "n"_a)
      .def_readwrite("r", &ModelParams::r)
      .def_readwrite("k", &ModelParams::k)
      .def_readwrite("n", &ModelParams::n)
      .def_readonly("omega0", &ModelParams::omega0)
      .def_readonly("omega", &ModelParams::omega)
      .def_readonly("g", &ModelParams::g)
      .def_property_readonly("kn", &ModelParams::kn)
      .def("perturbative", &ModelParams::perturbative)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(k=" + std::to_string(p.k) + ", n=" + std::to_string(p.n) +
               ", r=" + std::to_string(p.r) + ")";
      });
  m.def("coupling_from_physical", &coupling_from_physical, "omega0"_a, "omega"_a, "length"_a,
        "mass"_a, "k = g/omega with g = (omega0/L) sqrt(hbar/(2 m omega))");

  py::class_<Truncation>(m, "Truncation")
      .def(py::init<int, int>(), "n_cav"_a, "n_mirror"_a)
      .def_readonly("n_cav", &Truncation::n_cav)
      .def_readonly("n_mirror", &Truncation::n_mirror)
      .def("total_dim", &Truncation::total_dim)
      .def("mirror_pair_dim", &Truncation::mirror_pair_dim);

  m.def("build_hamiltonian", &build_hamiltonian, "params"_a, "trunc"_a);
  m.def("block_hamiltonian", &block_hamiltonian, "params"_a, "sector"_a, "trunc"_a);
  m.def(
      "factorized_propagator",
      [](const ModelParams& p, double t, const Truncation& tr) {
        return factorized_propagator(p, t, tr);
      },
      "params"_a, "t"_a, "trunc"_a);
  m.def(
      "interaction_propagator",
      [](const ModelParams& p, double t, const Truncation& tr) {
        return interaction_propagator(p, t, tr);
      },
      "params"_a, "t"_a, "trunc"_a);
  m.def(
      "evolve",
      [](const Vector& psi, const ModelParams& p, double t, const Truncation& tr,
         const std::string& method) {
        const StateVector initial{full_space(tr), psi};
        return evolve(initial, p, t, evolve_method_from_string(method)).amplitudes;
      },
      "psi"_a, "params"_a, "t"_a, "trunc"_a, "method"_a = "block",
      "Apply e^{-i h t}; method is 'factorized', 'brute_force' or 'block'");
  m.def(
      "propagator_distance",
      [](const ModelParams& p, double t, const Truncation& tr, int guard_levels) {
        const PropagatorDistance d = propagator_distance(p, t, tr, guard_levels);
        return py::make_tuple(d.restricted, d.full, d.domain_levels);
      },
      "params"_a, "t"_a, "trunc"_a, "guard_levels"_a = 5,
      "(restricted, full, domain_levels) operator-norm distance between the "
      "factorized propagator and the dense expm oracle");

  py::class_<SectorEvolver>(m, "SectorEvolver")
      .def(py::init<const ModelParams&, int, const Truncation&>(), "params"_a, "sector"_a,
           "trunc"_a)
      .def("apply", &SectorEvolver::apply, "mirror_state"_a, "t"_a)
      .def("evolve_vacuum", &SectorEvolver::evolve_vacuum, "t"_a)
      .def("propagator", &SectorEvolver::propagator, "t"_a)
      .def_property_readonly("sector", &SectorEvolver::sector);

  // --- Closed-form pipeline -----------------------------------------------
  m.def("eta", &eta, "t"_a, "1 - exp(-i t)");
  m.def("concurrence_closed_form", &concurrence_closed_form, "kn"_a, "t"_a);
  m.def("reduced_density_closed_form", &reduced_density_closed_form, "kn"_a, "t"_a,
        "Unnormalized two-mirror density matrix, descending basis |11>,|10>,|01>,|00>");

  py::class_<ApproxState>(m, "ApproxState")
      .def_readonly("kn", &ApproxState::kn)
      .def_readonly("t", &ApproxState::t)
      .def_readonly("include_11", &ApproxState::include_11)
      .def_readonly("global_phase", &ApproxState::global_phase)
      .def_readonly("prefactor", &ApproxState::prefactor)
      .def_readonly("amp00", &ApproxState::amp00)
      .def_readonly("amp01", &ApproxState::amp01)
      .def_readonly("amp10", &ApproxState::amp10)
      .def_readonly("amp11", &ApproxState::amp11)
      .def("amplitudes_ascending", &ApproxState::amplitudes_ascending)
      .def("norm", &ApproxState::norm)
      .def("pair_vector", &ApproxState::pair_vector, "n_mirror"_a, "normalize"_a = true);
  m.def("approx_state", &approx_state, "kn"_a, "t"_a, "include_11"_a = false);

  // --- Entanglement measures ----------------------------------------------
  m.def("sigma_yy", &sigma_yy);
  m.def(
      "zeta_matrix",
      [](const Eigen::Matrix4cd& rho, const std::string& order, bool normalized) {
        return zeta_matrix(make_density(rho, order, normalized));
      },
      "rho"_a, "order"_a = "ascending", "normalized"_a = true);
  m.def(
      "wootters_concurrence",
      [](const Eigen::Matrix4cd& rho, const std::string& order, bool normalized) {
        return wootters_concurrence(make_density(rho, order, normalized));
      },
      "rho"_a, "order"_a = "ascending", "normalized"_a = true);
  m.def("pure_concurrence", &pure_concurrence, "amplitudes_ascending"_a,
        "allow_unnormalized"_a = false, "2|ad - bc|");
  m.def(
      "project_to_qubits",
      [](const Matrix& rho_mirrors, int n_mirror) {
        const QubitProjection q = project_to_qubits(rho_mirrors, n_mirror);
        return py::make_tuple(Eigen::Matrix4cd(q.rho.rho), q.leakage);
      },
      "rho_mirrors"_a, "n_mirror"_a,
      "(rho_qubits, leakage): renormalized {0,1}x{0,1} block of an "
      "oscillator-pair density matrix, ascending basis");
  m.def(
      "log_negativity",
      [](const Eigen::Matrix4cd& rho, const std::string& order) {
        return log_negativity(make_density(rho, order, true));
      },
      "rho"_a, "order"_a = "ascending");

  m.attr("HBAR") = kHbar;
  m.attr("__version__") = "0.1.0";
}

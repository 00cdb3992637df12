#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "seqdisc/channels.hpp"
#include "seqdisc/discrimination.hpp"
#include "seqdisc/errors.hpp"
#include "seqdisc/figures.hpp"
#include "seqdisc/instruments.hpp"
#include "seqdisc/linalg.hpp"
#include "seqdisc/noisy_opt.hpp"
#include "seqdisc/states.hpp"

namespace py = pybind11;
using namespace seqdisc;

PYBIND11_MODULE(_core, m) {
  m.doc() = "sequential conclusive discrimination of quantum states";

  // Exception hierarchy: every library error derives from seqdisc.Error.
  static py::exception<Error> base_error(m, "Error");
  py::register_exception<InvalidOperator>(m, "InvalidOperator", base_error);
  py::register_exception<DimensionError>(m, "DimensionError", base_error);
  py::register_exception<InvalidBlochVector>(m, "InvalidBlochVector",
                                             base_error);
  py::register_exception<ZeroProbabilityOutcome>(m, "ZeroProbabilityOutcome",
                                                 base_error);
  py::register_exception<IncompleteProjectors>(m, "IncompleteProjectors",
                                               base_error);
  py::register_exception<InvalidRealization>(m, "InvalidRealization",
                                             base_error);
  py::register_exception<NotPureDilation>(m, "NotPureDilation", base_error);
  py::register_exception<InvalidParameter>(m, "InvalidParameter", base_error);
  py::register_exception<WrongArity>(m, "WrongArity", base_error);
  py::register_exception<DegenerateSpectrum>(m, "DegenerateSpectrum",
                                             base_error);
  py::register_exception<ConditionNotSatisfied>(m, "ConditionNotSatisfied",
                                                base_error);
  py::register_exception<IoError>(m, "IoError", base_error);

  // --- states ---------------------------------------------------------------
  py::class_<DensityOperator>(m, "DensityOperator")
      .def(py::init<CMatrix>(), py::arg("matrix"))
      .def_property_readonly("matrix", &DensityOperator::matrix)
      .def_property_readonly("dim", &DensityOperator::dim);

  py::class_<Ensemble>(m, "Ensemble")
      .def(py::init<std::vector<DensityOperator>, std::vector<double>>(),
           py::arg("states"), py::arg("priors"))
      .def_property_readonly("states", &Ensemble::states)
      .def_property_readonly("priors", &Ensemble::priors)
      .def_property_readonly("size", &Ensemble::size)
      .def_property_readonly("dim", &Ensemble::dim);

  m.def("pauli", &pauli, py::arg("k"));
  m.def("qubit_from_bloch", &qubit_from_bloch, py::arg("r"));
  m.def("bloch_from_qubit", &bloch_from_qubit, py::arg("rho"));
  m.def("spin_projector", &spin_projector, py::arg("n"), py::arg("sign"));
  m.def("mixture", &mixture, py::arg("ensemble"));

  // --- linear algebra kernels ------------------------------------------------
  m.def("trace_norm", &trace_norm, py::arg("h"));
  m.def("operator_norm", &operator_norm, py::arg("m"));
  m.def(
      "positive_projector",
      [](const CMatrix& h, std::optional<double> eps) {
        return eps ? positive_projector(h, *eps) : positive_projector(h);
      },
      py::arg("h"), py::arg("eps") = std::nullopt);
  m.def("tensor", &tensor, py::arg("a"), py::arg("b"));
  m.def("partial_trace_second", &partial_trace_second, py::arg("m"),
        py::arg("dim_second"));
  m.def("haar_unitary", &haar_unitary, py::arg("dim"), py::arg("seed"));

  // --- instruments ------------------------------------------------------------
  py::class_<Instrument>(m, "Instrument")
      .def(py::init<int, std::vector<std::vector<CMatrix>>>(), py::arg("dim"),
           py::arg("kraus"))
      .def_static("identity", &Instrument::identity, py::arg("dim"))
      .def_property_readonly("dim", &Instrument::dim)
      .def_property_readonly("num_outcomes", &Instrument::num_outcomes)
      .def("kraus", &Instrument::kraus, py::arg("outcome"))
      .def("apply", &Instrument::apply, py::arg("outcome"), py::arg("operand"));

  py::class_<POVM>(m, "POVM")
      .def_readonly("dim", &POVM::dim)
      .def_readonly("elements", &POVM::elements);

  m.def("povm_of", &povm_of, py::arg("instrument"));
  m.def("outcome_probability", &outcome_probability, py::arg("instrument"),
        py::arg("outcome"), py::arg("rho"));
  m.def("posterior", &posterior, py::arg("instrument"), py::arg("outcome"),
        py::arg("rho"));
  m.def("luders_from_projectors", &luders_from_projectors,
        py::arg("projectors"));

  py::class_<SequentialInstrument>(m, "SequentialInstrument")
      .def(py::init<std::vector<Instrument>>(), py::arg("stages"))
      .def_property_readonly("num_stages", &SequentialInstrument::num_stages)
      .def_property_readonly("dim", &SequentialInstrument::dim)
      .def_property_readonly("num_outcomes",
                             &SequentialInstrument::num_outcomes)
      .def(
          "apply",
          [](const SequentialInstrument& self, const std::vector<int>& w,
             const CMatrix& operand) { return self.apply(w, operand); },
          py::arg("outcomes"), py::arg("operand"))
      .def(
          "probability",
          [](const SequentialInstrument& self, const std::vector<int>& w,
             const DensityOperator& rho) { return self.probability(w, rho); },
          py::arg("outcomes"), py::arg("rho"));

  m.def("compose_sequential", &compose_sequential, py::arg("stages"));

  py::class_<StatisticalRealization>(m, "StatisticalRealization")
      .def(py::init<int, DensityOperator, std::vector<CMatrix>, CMatrix>(),
           py::arg("system_dim"), py::arg("ancilla_state"),
           py::arg("projections"), py::arg("unitary"))
      .def_property_readonly("system_dim", &StatisticalRealization::system_dim)
      .def_property_readonly("ancilla_dim",
                             &StatisticalRealization::ancilla_dim)
      .def_property_readonly("num_outcomes",
                             &StatisticalRealization::num_outcomes)
      .def_property_readonly("ancilla_state",
                             &StatisticalRealization::ancilla_state)
      .def_property_readonly("projections",
                             &StatisticalRealization::projections)
      .def_property_readonly("unitary", &StatisticalRealization::unitary);

  m.def("instrument_from_realization", &instrument_from_realization,
        py::arg("xi"));
  m.def("kraus_from_dilation", &kraus_from_dilation, py::arg("xi"));

  // --- channels ---------------------------------------------------------------
  py::class_<Channel>(m, "Channel")
      .def(py::init<int, std::vector<CMatrix>>(), py::arg("dim"),
           py::arg("kraus"))
      .def_static("identity", &Channel::identity, py::arg("dim"))
      .def_static("depolarizing", &Channel::depolarizing, py::arg("gamma"))
      .def_property_readonly("dim", &Channel::dim)
      .def_property_readonly("kraus", &Channel::kraus)
      .def("apply",
           py::overload_cast<const CMatrix&>(&Channel::apply, py::const_),
           py::arg("operand"))
      .def("apply_state",
           py::overload_cast<const DensityOperator&>(&Channel::apply,
                                                     py::const_),
           py::arg("rho"));

  m.def("apply_channel", &apply_channel, py::arg("channel"), py::arg("rho"));

  // --- discrimination -----------------------------------------------------------
  py::class_<Protocol>(m, "Protocol")
      .def(py::init<std::vector<Instrument>>(), py::arg("receivers"))
      .def(py::init<std::vector<Instrument>, std::vector<Channel>>(),
           py::arg("receivers"), py::arg("channels"))
      .def_property_readonly("receivers", &Protocol::receivers)
      .def_property_readonly("channels", &Protocol::channels)
      .def_property_readonly("noisy", &Protocol::noisy)
      .def_property_readonly("num_receivers", &Protocol::num_receivers)
      .def_property_readonly("dim", &Protocol::dim)
      .def_property_readonly("num_outcomes", &Protocol::num_outcomes);

  py::class_<DiscriminationResult>(m, "DiscriminationResult")
      .def_readonly("success_probability",
                    &DiscriminationResult::success_probability)
      .def_readonly("stage_factors", &DiscriminationResult::stage_factors)
      .def_readonly("updated_priors", &DiscriminationResult::updated_priors);

  m.def("success_direct", &success_direct, py::arg("protocol"),
        py::arg("ensemble"));
  m.def("success_chain", &success_chain, py::arg("protocol"),
        py::arg("ensemble"));
  m.def("success_product", &success_product, py::arg("protocol"),
        py::arg("ensemble"));
  m.def("helstrom_bound", &helstrom_bound, py::arg("ensemble"));
  m.def("multi_state_upper_bound", &multi_state_upper_bound,
        py::arg("ensemble"));
  m.def("optimal_projectors", &optimal_projectors, py::arg("ensemble"));
  m.def("optimal_two_state_protocol",
        py::overload_cast<const Ensemble&, int>(&optimal_two_state_protocol),
        py::arg("ensemble"), py::arg("n_receivers"));
  m.def("optimal_two_state_protocol",
        py::overload_cast<const Ensemble&, int, const CMatrix&>(
            &optimal_two_state_protocol),
        py::arg("ensemble"), py::arg("n_receivers"), py::arg("basis"));
  m.def("repeatable_receiver_protocol", &repeatable_receiver_protocol, py::arg("kraus"),
        py::arg("projectors"), py::arg("n_receivers"));
  m.def("indirect_realization_for_optimal",
        py::overload_cast<const CMatrix&, const CMatrix&>(
            &indirect_realization_for_optimal),
        py::arg("p1"), py::arg("p2"));
  m.def("indirect_realization_for_optimal",
        py::overload_cast<const CMatrix&, const CMatrix&, const CVector&>(
            &indirect_realization_for_optimal),
        py::arg("p1"), py::arg("p2"), py::arg("ancilla_ket"));

  // --- noisy optimization ---------------------------------------------------------
  py::class_<ExtremeInstrument> extreme(m, "ExtremeInstrument");
  py::enum_<ExtremeInstrument::Kind>(extreme, "Kind")
      .value("SPIN", ExtremeInstrument::Kind::kSpin)
      .value("TRIVIAL", ExtremeInstrument::Kind::kTrivial);
  extreme.def(py::init<>())
      .def_readwrite("kind", &ExtremeInstrument::kind)
      .def_readwrite("direction", &ExtremeInstrument::direction)
      .def_readwrite("sign", &ExtremeInstrument::sign)
      .def_readwrite("outcome", &ExtremeInstrument::outcome)
      .def("to_instrument", &ExtremeInstrument::to_instrument);

  py::class_<NoisyOptimum> optimum(m, "NoisyOptimum");
  py::enum_<NoisyOptimum::Regime>(optimum, "Regime")
      .value("HELSTROM_LIKE", NoisyOptimum::Regime::kHelstromLike)
      .value("TRIVIAL", NoisyOptimum::Regime::kTrivial);
  optimum.def_readonly("value", &NoisyOptimum::value)
      .def_readonly("maximizer", &NoisyOptimum::maximizer)
      .def_readonly("regime", &NoisyOptimum::regime)
      .def_readonly("gamma2_regime_threshold",
                    &NoisyOptimum::gamma2_regime_threshold)
      .def_readonly("gamma2_value_threshold",
                    &NoisyOptimum::gamma2_value_threshold);

  m.def("noisy_success", &noisy_success, py::arg("protocol"),
        py::arg("ensemble"));
  m.def("noisy_two_seq_upper_bound", &noisy_two_seq_upper_bound,
        py::arg("ensemble"), py::arg("l1"), py::arg("l2"), py::arg("m1"));
  m.def("one_receiver_depolarizing_optimum", &one_receiver_depolarizing_optimum,
        py::arg("ensemble"), py::arg("gamma1"));
  m.def("two_seq_depolarizing_closed", &two_seq_depolarizing_closed,
        py::arg("ensemble"), py::arg("gamma1"), py::arg("gamma2"));
  m.def("two_seq_depolarizing_numeric", &two_seq_depolarizing_numeric,
        py::arg("ensemble"), py::arg("gamma1"), py::arg("gamma2"),
        py::arg("grid_size"), py::arg("include_analytic") = true);
  m.def("fibonacci_sphere", &fibonacci_sphere, py::arg("n"));

  // --- benchmark sweeps ---------------------------------------------------------
  py::class_<figures::SweepRow>(m, "SweepRow")
      .def_readonly("gamma", &figures::SweepRow::gamma)
      .def_readonly("helstrom", &figures::SweepRow::helstrom)
      .def_readonly("n1", &figures::SweepRow::n1)
      .def_readonly("n2_closed", &figures::SweepRow::n2_closed)
      .def_readonly("n2_numeric", &figures::SweepRow::n2_numeric);

  m.def("gamma_sweep", &figures::gamma_sweep, py::arg("ensemble"),
        py::arg("steps"), py::arg("grid_size"));
  m.def("write_figures", &figures::write_figures, py::arg("directory"),
        py::arg("steps"), py::arg("grid_size"));
}

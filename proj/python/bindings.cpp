#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "seqevolve/circuit.hpp"
#include "seqevolve/fitness.hpp"
#include "seqevolve/fsm_spec.hpp"
#include "seqevolve/ga_engine.hpp"
#include "seqevolve/oracle.hpp"
#include "seqevolve/synthesizer.hpp"

namespace py = pybind11;
using namespace seqevolve;

namespace {

Bits to_bits(const std::string& s) { return bits_from_string(s); }

}  // namespace

PYBIND11_MODULE(_seqevolve, m) {
  m.doc() = "GA-based synthesis of sequential logic circuits from FSM specs";

  py::register_exception<FsmParseError>(m, "FsmParseError", PyExc_ValueError);
  py::register_exception<FsmValidationError>(m, "FsmValidationError", PyExc_ValueError);

  py::enum_<Connectivity>(m, "Connectivity")
      .value("NEIGHBOR_COLUMN", Connectivity::NeighborColumn)
      .value("ALL_LEFT_COLUMNS", Connectivity::AllLeftColumns);

  py::enum_<TargetKind>(m, "TargetKind")
      .value("NEXT_STATE_BIT", TargetKind::NextStateBit)
      .value("OUTPUT_BIT", TargetKind::OutputBit);

  py::enum_<Termination>(m, "Termination")
      .value("TARGET_MET", Termination::TargetMet)
      .value("STALL", Termination::Stall)
      .value("GENERATION_LIMIT", Termination::GenerationLimit);

  py::class_<FsmSpec>(m, "FsmSpec")
      .def_readonly("name", &FsmSpec::name)
      .def_readonly("input_bits", &FsmSpec::input_bits)
      .def_readonly("state_bits", &FsmSpec::state_bits)
      .def_readonly("output_bits", &FsmSpec::output_bits)
      .def_property_readonly("num_states", [](const FsmSpec& s) { return s.states.size(); })
      .def_property_readonly("num_transitions",
                             [](const FsmSpec& s) { return s.transitions.size(); })
      .def("serialize", &serialize_fsm);

  py::class_<TargetFunction>(m, "TargetFunction")
      .def_readonly("kind", &TargetFunction::kind)
      .def_readonly("bit_index", &TargetFunction::bit_index)
      .def_readonly("signal_name", &TargetFunction::signal_name)
      .def_property_readonly("num_vectors",
                             [](const TargetFunction& t) { return t.vectors.size(); })
      .def("id", &TargetFunction::id);

  py::class_<ArrayLayout, std::shared_ptr<ArrayLayout>>(m, "ArrayLayout")
      .def_readonly("rows", &ArrayLayout::rows)
      .def_readonly("cols", &ArrayLayout::cols)
      .def_readonly("chromosome_length", &ArrayLayout::chromosome_length)
      .def_readonly("tap_select_width", &ArrayLayout::tap_select_width)
      .def_readonly("input_select_width", &ArrayLayout::input_select_width);

  py::class_<Chromosome>(m, "Chromosome")
      .def_property_readonly("bits", [](const Chromosome& c) { return bits_to_string(c.bits); })
      .def("hex", &chromosome_to_hex);

  py::class_<Phenotype>(m, "Phenotype")
      .def("evaluate",
           [](const Phenotype& p, const std::string& pi, const std::string& ps) {
             return int(evaluate(p, to_bits(pi), to_bits(ps)));
           })
      .def_property_readonly("used_gate_count",
                             [](const Phenotype& p) { return used_gates(p).count; })
      .def("expression", [](const Phenotype& p, const std::vector<std::string>& pi_names,
                            const std::vector<std::string>& ps_names) {
        return to_expression(p, pi_names, ps_names);
      });

  py::class_<FitnessReport>(m, "FitnessReport")
      .def_readonly("design", &FitnessReport::design)
      .def_readonly("optimization", &FitnessReport::optimization)
      .def_readonly("final", &FitnessReport::final_score)
      .def_readonly("design_max", &FitnessReport::design_max)
      .def_readonly("fully_functional", &FitnessReport::fully_functional);

  py::class_<GaConfig>(m, "GaConfig")
      .def(py::init<>())
      .def_readwrite("population_size", &GaConfig::population_size)
      .def_readwrite("max_generations", &GaConfig::max_generations)
      .def_readwrite("stall_generations", &GaConfig::stall_generations)
      .def_readwrite("crossover_rate", &GaConfig::crossover_rate)
      .def_readwrite("mutation_rate", &GaConfig::mutation_rate)
      .def_readwrite("elitism", &GaConfig::elitism)
      .def_readwrite("seed", &GaConfig::seed);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("best", &RunResult::best)
      .def_readonly("best_report", &RunResult::best_report)
      .def_readonly("generations_run", &RunResult::generations_run)
      .def_readonly("generations_to_functionality", &RunResult::generations_to_functionality)
      .def_readonly("termination", &RunResult::termination)
      .def_readonly("history", &RunResult::history);

  py::class_<SubcircuitResult>(m, "SubcircuitResult")
      .def_readonly("target_id", &SubcircuitResult::target_id)
      .def_readonly("gates", &SubcircuitResult::gates)
      .def_readonly("generations", &SubcircuitResult::generations)
      .def_readonly("expression", &SubcircuitResult::expression)
      .def_readonly("successful_runs", &SubcircuitResult::successful_runs);

  py::class_<SynthesisReport>(m, "SynthesisReport")
      .def_readonly("subcircuits", &SynthesisReport::subcircuits)
      .def_readonly("total_gates", &SynthesisReport::total_gates)
      .def_readonly("verified", &SynthesisReport::verified)
      .def("to_json", [](const SynthesisReport& r) { return r.to_json().dump(2); });

  py::class_<SequentialCircuit>(m, "SequentialCircuit")
      .def_property_readonly("total_gates", &SequentialCircuit::total_gates)
      .def("step",
           [](const SequentialCircuit& c, const std::string& state, const std::string& input) {
             auto [next, outputs] = step(c, to_bits(state), to_bits(input));
             return py::make_tuple(bits_to_string(next), bits_to_string(outputs));
           })
      .def("export_json", [](const SequentialCircuit& c) { return export_circuit(c).dump(2); });

  py::class_<SynthesisOptions>(m, "SynthesisOptions")
      .def(py::init<>())
      .def_readwrite("rows", &SynthesisOptions::rows)
      .def_readwrite("cols", &SynthesisOptions::cols)
      .def_readwrite("connectivity", &SynthesisOptions::connectivity)
      .def_readwrite("runs", &SynthesisOptions::runs)
      .def_readwrite("ga", &SynthesisOptions::ga)
      .def_readwrite("threads", &SynthesisOptions::threads)
      .def_readwrite("allow_failure", &SynthesisOptions::allow_failure);

  m.def("parse_fsm", &parse_fsm, py::arg("text"));
  m.def("derive_targets", &derive_targets, py::arg("spec"));
  m.def(
      "build_layout",
      [](int rows, int cols, int npi, int nps, Connectivity conn, bool fixed) {
        return std::const_pointer_cast<ArrayLayout>(build_layout(rows, cols, npi, nps, conn,
                                                                 fixed));
      },
      py::arg("rows"), py::arg("cols"), py::arg("num_primary_inputs"),
      py::arg("num_state_bits"), py::arg("connectivity") = Connectivity::AllLeftColumns,
      py::arg("fixed_gate_types") = false);
  m.def("decode", &decode, py::arg("layout"), py::arg("chromosome"));
  m.def(
      "random_chromosome",
      [](const LayoutPtr& layout, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return random_chromosome(*layout, rng);
      },
      py::arg("layout"), py::arg("seed"));
  m.def("chromosome_from_hex",
        [](const LayoutPtr& layout, const std::string& hex) {
          return chromosome_from_hex(*layout, hex);
        });
  m.def("evaluate_fitness",
        py::overload_cast<const LayoutPtr&, const Chromosome&, const TargetFunction&>(
            &evaluate_fitness),
        py::arg("layout"), py::arg("chromosome"), py::arg("target"));
  m.def("run_ga",
        py::overload_cast<const LayoutPtr&, const TargetFunction&, const GaConfig&>(&run_ga),
        py::arg("layout"), py::arg("target"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "synthesize",
      [](const FsmSpec& spec, const SynthesisOptions& options) {
        SynthesisOutcome out = synthesize(spec, options);
        return std::make_pair(std::move(out.circuit), std::move(out.report));
      },
      py::arg("spec"), py::arg("options"), py::call_guard<py::gil_scoped_release>());
  m.def("derive_benchmark_fsm", &oracle::derive_benchmark_fsm);
  m.def(
      "eval_expr",
      [](const std::string& text, const std::map<std::string, int>& assignment) {
        auto expr = oracle::parse_expr(text);
        std::map<std::string, Bit> env;
        for (const auto& [k, v] : assignment) env[k] = Bit(v ? 1 : 0);
        return int(oracle::eval_expr(*expr, env));
      },
      py::arg("expression"), py::arg("assignment"));
}

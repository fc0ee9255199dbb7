#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seqevolve/circuit.hpp"
#include "seqevolve/fsm_spec.hpp"
#include "seqevolve/ga_engine.hpp"

#include "json.hpp"

namespace seqevolve {

struct SynthesisError : std::runtime_error {
  std::string target_id;
  int best_design{};
  int design_max{};
  SynthesisError(std::string target, int best, int max_design);
};

struct RunRecord {
  std::string benchmark;
  std::string target_id;
  int run_index{};
  std::uint64_t seed{};
  int generations{};
  std::string termination;
  int design{};
  int gates{};
  int final_score{};
  int generations_to_functionality{-1};
};

struct SubcircuitResult {
  std::string target_id;
  Chromosome chromosome;
  Phenotype phenotype;
  FitnessReport report;
  int gates{};
  int generations{};  // of the winning run
  std::string expression;
  double wall_ms{};   // summed over this target's runs
  int min_gens_to_func{-1}, median_gens_to_func{-1}, max_gens_to_func{-1};
  int successful_runs{};
};

struct SequentialCircuit {
  FsmSpec spec;
  LayoutPtr layout;
  std::vector<Phenotype> next_state_subcircuits;  // one per state bit
  std::vector<Phenotype> output_subcircuits;      // one per output bit

  int total_gates() const;
};

struct SynthesisReport {
  std::string fsm_name;
  std::vector<SubcircuitResult> subcircuits;
  int total_gates{};
  bool verified{};
  nlohmann::json to_json() const;
};

struct SynthesisOptions {
  int rows = 4;
  int cols = 4;
  Connectivity connectivity = Connectivity::AllLeftColumns;
  bool fixed_gate_types = false;
  int runs = 1;
  GaConfig ga;           // ga.seed is the master seed
  int threads = 1;       // capped by SEQEVOLVE_THREADS in the CLI
  bool allow_failure = false;  // keep best partial result instead of throwing
  std::optional<std::string> target_filter;  // "dff:NAME" / "out:NAME"
};

struct SynthesisOutcome {
  SequentialCircuit circuit;
  SynthesisReport report;
  std::vector<RunRecord> records;
};

std::uint64_t derive_run_seed(std::uint64_t master_seed, std::size_t target_index,
                              std::size_t run_index);

/// Evolves one subcircuit per target with `runs` independent GA runs each,
/// keeps the best (fully functional, fewest gates, fewest generations) result,
/// assembles the circuit, and verifies it against the spec.
SynthesisOutcome synthesize(const FsmSpec& spec, const SynthesisOptions& options);

/// One clock edge: all next-state bits computed from the pre-clock state.
std::pair<Bits, Bits> step(const SequentialCircuit& circuit, const Bits& state_code,
                           const Bits& input_vector);

struct Mismatch {
  std::string state;
  Bits input;
  std::string field;  // signal name
  Bit expected{};
  Bit got{};
};

std::vector<Mismatch> verify(const SequentialCircuit& circuit, const FsmSpec& spec);

struct UndeclaredCodeStep {
  Bits state_code;
  Bits input;
  Bits next_state;
  Bits outputs;
};

/// Strict sweep: behavior of the circuit on every state code not declared by
/// the spec. Informational only; declared-state checking stays in verify().
std::vector<UndeclaredCodeStep> undeclared_code_report(const SequentialCircuit& circuit,
                                                       const FsmSpec& spec);

nlohmann::json export_circuit(const SequentialCircuit& circuit);
SequentialCircuit import_circuit(const nlohmann::json& doc, const FsmSpec& spec);

std::string circuit_expressions(const SequentialCircuit& circuit);

}  // namespace seqevolve

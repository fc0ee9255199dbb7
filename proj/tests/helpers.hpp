#pragma once

#include <string>

#include "seqevolve/fsm_spec.hpp"
#include "seqevolve/genome.hpp"
#include "seqevolve/oracle.hpp"

namespace seqevolve::testing {

inline std::string toggle_fsm_text() {
  return R"({
    "name": "toggle",
    "input_bits": ["X"],
    "state_bits": ["S"],
    "output_bits": ["Z"],
    "states": [{"name": "S0", "code": "0"}, {"name": "S1", "code": "1"}],
    "transitions": [
      {"from": "S0", "input": "-", "to": "S1", "output": "0"},
      {"from": "S1", "input": "-", "to": "S0", "output": "1"}
    ]
  })";
}

// All cells default to AND(0,0); callers overwrite the cells they need.
inline std::vector<GateGene> blank_cells(const ArrayLayout& layout) {
  GateGene filler{GateType::And, SignalRef::const_zero(), SignalRef::const_zero()};
  return std::vector<GateGene>(std::size_t(layout.cell_count()), filler);
}

// 4x4 all-left layout for the detector benchmark: 1 primary input X, state bits A,B,C.
inline LayoutPtr benchmark_layout() {
  return build_layout(4, 4, 1, 3, Connectivity::AllLeftColumns);
}

// Five-gate realization of (XAC)'(C+XA) on the benchmark layout.
inline Chromosome benchmark_dc_chromosome(const ArrayLayout& layout) {
  auto cells = blank_cells(layout);
  auto X = SignalRef::primary_input(0);
  auto A = SignalRef::present_state(0);
  auto C = SignalRef::present_state(2);
  cells[layout.cell_index(0, 0)] = {GateType::And, X, A};
  cells[layout.cell_index(0, 1)] = {GateType::And, SignalRef::gate(0, 0), C};
  cells[layout.cell_index(1, 1)] = {GateType::Or, C, SignalRef::gate(0, 0)};
  cells[layout.cell_index(0, 2)] = {GateType::Not, SignalRef::gate(0, 1),
                                    SignalRef::const_zero()};
  cells[layout.cell_index(0, 3)] = {GateType::And, SignalRef::gate(0, 2), SignalRef::gate(1, 1)};
  return encode(layout, cells, SignalRef::gate(0, 3));
}

inline Chromosome benchmark_da_chromosome(const ArrayLayout& layout) {
  auto cells = blank_cells(layout);
  cells[layout.cell_index(0, 0)] = {GateType::And, SignalRef::primary_input(0),
                                    SignalRef::present_state(1)};
  return encode(layout, cells, SignalRef::gate(0, 0));
}

inline Chromosome benchmark_db_chromosome(const ArrayLayout& layout) {
  auto cells = blank_cells(layout);
  cells[layout.cell_index(0, 0)] = {GateType::Not, SignalRef::primary_input(0),
                                    SignalRef::const_zero()};
  return encode(layout, cells, SignalRef::gate(0, 0));
}

inline Chromosome benchmark_z_chromosome(const ArrayLayout& layout) {
  return encode(layout, blank_cells(layout), SignalRef::present_state(2));
}

inline TargetFunction expr_target(const std::string& expr,
                                  const std::vector<std::string>& inputs,
                                  const std::vector<std::string>& states,
                                  const std::string& name = "t") {
  return oracle::target_from_expr(expr, TargetKind::OutputBit, 0, name, inputs, states);
}

}  // namespace seqevolve::testing

#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "seqevolve/bits.hpp"

namespace seqevolve {

enum class Connectivity { NeighborColumn, AllLeftColumns };

std::string to_string(Connectivity c);
Connectivity connectivity_from_string(const std::string& s);

enum class GateType : std::uint8_t { And = 0, Or = 1, Xor = 2, Not = 3 };

std::string to_string(GateType t);
GateType gate_type_from_string(const std::string& s);

struct SignalRef {
  enum class Kind : std::uint8_t { PrimaryInput, PresentState, ConstZero, ConstOne, Gate };
  Kind kind{Kind::ConstZero};
  int index{0};  // PI/PS ordinal
  int row{0}, col{0};  // gate coordinates

  static SignalRef primary_input(int i) { return {Kind::PrimaryInput, i, 0, 0}; }
  static SignalRef present_state(int i) { return {Kind::PresentState, i, 0, 0}; }
  static SignalRef const_zero() { return {Kind::ConstZero, 0, 0, 0}; }
  static SignalRef const_one() { return {Kind::ConstOne, 0, 0, 0}; }
  static SignalRef gate(int r, int c) { return {Kind::Gate, 0, r, c}; }

  bool is_gate() const { return kind == Kind::Gate; }
  friend bool operator==(const SignalRef& a, const SignalRef& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Kind::PrimaryInput:
      case Kind::PresentState: return a.index == b.index;
      case Kind::Gate: return a.row == b.row && a.col == b.col;
      default: return true;
    }
  }
};

/// Geometry plus the derived mux choice tables and per-field bit widths.
/// Choice ordering is fixed: primary inputs, present-state bits, constants
/// 0 then 1 (gate-input muxes only), then gate outputs column-major with
/// rows ascending.
struct ArrayLayout {
  int rows{};
  int cols{};
  int num_primary_inputs{};
  int num_state_bits{};
  Connectivity connectivity{Connectivity::AllLeftColumns};
  bool fixed_gate_types{false};  // ablation mode: row-pattern AND/OR/XOR/NOT, no type genes

  std::vector<std::vector<SignalRef>> input_choices;  // per column
  std::vector<int> input_select_width;                // per column
  std::vector<SignalRef> tap_choices;
  int tap_select_width{};
  int gate_type_width{};  // 2, or 0 when fixed_gate_types
  std::size_t chromosome_length{};

  int cell_count() const { return rows * cols; }
  std::size_t cell_index(int row, int col) const {
    return std::size_t(col) * rows + row;  // column-major, rows ascending
  }
  GateType fixed_type_for_row(int row) const {
    static constexpr GateType pattern[4] = {GateType::And, GateType::Or, GateType::Xor,
                                            GateType::Not};
    return pattern[row % 4];
  }
};

using LayoutPtr = std::shared_ptr<const ArrayLayout>;

LayoutPtr build_layout(int rows, int cols, int num_primary_inputs, int num_state_bits,
                       Connectivity connectivity, bool fixed_gate_types = false);

struct Chromosome {
  Bits bits;
  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

std::string chromosome_to_hex(const Chromosome& c);
Chromosome chromosome_from_hex(const ArrayLayout& layout, const std::string& hex);

Chromosome random_chromosome(const ArrayLayout& layout, std::mt19937_64& rng);

struct GateGene {
  GateType type{GateType::And};
  SignalRef in0;
  SignalRef in1;
};

struct Phenotype {
  LayoutPtr layout;
  std::vector<GateGene> gates;  // column-major, rows ascending, size rows*cols
  SignalRef tap;
};

/// Total and deterministic; out-of-range mux selects reduce modulo the choice-set size.
Phenotype decode(const LayoutPtr& layout, const Chromosome& chromosome);

/// Inverse of decode for hand-built circuits. Every gate input and the tap must
/// be a member of the corresponding choice set.
Chromosome encode(const ArrayLayout& layout, const std::vector<GateGene>& gates,
                  const SignalRef& tap);

}  // namespace seqevolve

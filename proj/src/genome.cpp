#include "seqevolve/genome.hpp"

#include <bit>
#include <stdexcept>

namespace seqevolve {

std::string to_string(Connectivity c) {
  return c == Connectivity::NeighborColumn ? "neighbor" : "all-left";
}

Connectivity connectivity_from_string(const std::string& s) {
  if (s == "neighbor") return Connectivity::NeighborColumn;
  if (s == "all-left") return Connectivity::AllLeftColumns;
  throw std::invalid_argument("unknown connectivity '" + s + "'");
}

std::string to_string(GateType t) {
  switch (t) {
    case GateType::And: return "AND";
    case GateType::Or: return "OR";
    case GateType::Xor: return "XOR";
    case GateType::Not: return "NOT";
  }
  return "?";
}

GateType gate_type_from_string(const std::string& s) {
  if (s == "AND") return GateType::And;
  if (s == "OR") return GateType::Or;
  if (s == "XOR") return GateType::Xor;
  if (s == "NOT") return GateType::Not;
  throw std::invalid_argument("unknown gate type '" + s + "'");
}

namespace {

int select_width(std::size_t choices) {
  return choices <= 1 ? 0 : std::bit_width(choices - 1);
}

}  // namespace

LayoutPtr build_layout(int rows, int cols, int num_primary_inputs, int num_state_bits,
                       Connectivity connectivity, bool fixed_gate_types) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("array dimensions must be positive");
  if (num_primary_inputs < 0 || num_state_bits < 0)
    throw std::invalid_argument("signal counts must be non-negative");

  auto layout = std::make_shared<ArrayLayout>();
  layout->rows = rows;
  layout->cols = cols;
  layout->num_primary_inputs = num_primary_inputs;
  layout->num_state_bits = num_state_bits;
  layout->connectivity = connectivity;
  layout->fixed_gate_types = fixed_gate_types;
  layout->gate_type_width = fixed_gate_types ? 0 : 2;

  for (int c = 0; c < cols; ++c) {
    std::vector<SignalRef> choices;
    for (int i = 0; i < num_primary_inputs; ++i) choices.push_back(SignalRef::primary_input(i));
    for (int i = 0; i < num_state_bits; ++i) choices.push_back(SignalRef::present_state(i));
    choices.push_back(SignalRef::const_zero());
    choices.push_back(SignalRef::const_one());
    int first_col = connectivity == Connectivity::NeighborColumn ? c - 1 : 0;
    for (int cc = std::max(0, first_col); cc < c; ++cc)
      for (int r = 0; r < rows; ++r) choices.push_back(SignalRef::gate(r, cc));
    layout->input_select_width.push_back(select_width(choices.size()));
    layout->input_choices.push_back(std::move(choices));
  }

  for (int i = 0; i < num_primary_inputs; ++i)
    layout->tap_choices.push_back(SignalRef::primary_input(i));
  for (int i = 0; i < num_state_bits; ++i)
    layout->tap_choices.push_back(SignalRef::present_state(i));
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) layout->tap_choices.push_back(SignalRef::gate(r, c));
  layout->tap_select_width = select_width(layout->tap_choices.size());

  std::size_t length = 0;
  for (int c = 0; c < cols; ++c)
    length += std::size_t(rows) * (layout->gate_type_width + 2 * layout->input_select_width[c]);
  length += layout->tap_select_width;
  layout->chromosome_length = length;
  return layout;
}

std::string chromosome_to_hex(const Chromosome& c) { return bits_to_hex(c.bits); }

Chromosome chromosome_from_hex(const ArrayLayout& layout, const std::string& hex) {
  return Chromosome{bits_from_hex(hex, layout.chromosome_length)};
}

Chromosome random_chromosome(const ArrayLayout& layout, std::mt19937_64& rng) {
  Chromosome c;
  c.bits.resize(layout.chromosome_length);
  for (auto& b : c.bits) b = Bit(rng() & 1);
  return c;
}

namespace {

// MSB-first field read.
std::size_t read_field(const Bits& bits, std::size_t offset, int width) {
  std::size_t v = 0;
  for (int i = 0; i < width; ++i) v = (v << 1) | bits[offset + i];
  return v;
}

void write_field(Bits& bits, std::size_t offset, int width, std::size_t value) {
  for (int i = 0; i < width; ++i) bits[offset + i] = Bit((value >> (width - 1 - i)) & 1);
}

std::size_t choice_index(const std::vector<SignalRef>& choices, const SignalRef& ref,
                         const char* where) {
  for (std::size_t i = 0; i < choices.size(); ++i)
    if (choices[i] == ref) return i;
  throw std::invalid_argument(std::string("signal not in choice set of ") + where);
}

}  // namespace

Phenotype decode(const LayoutPtr& layout, const Chromosome& chromosome) {
  const ArrayLayout& L = *layout;
  if (chromosome.bits.size() != L.chromosome_length)
    throw std::invalid_argument("chromosome length " + std::to_string(chromosome.bits.size()) +
                                " does not match layout length " +
                                std::to_string(L.chromosome_length));
  Phenotype p;
  p.layout = layout;
  p.gates.resize(std::size_t(L.rows) * L.cols);
  std::size_t off = 0;
  for (int c = 0; c < L.cols; ++c) {
    const auto& choices = L.input_choices[c];
    int w = L.input_select_width[c];
    for (int r = 0; r < L.rows; ++r) {
      GateGene& g = p.gates[L.cell_index(r, c)];
      if (L.fixed_gate_types) {
        g.type = L.fixed_type_for_row(r);
      } else {
        g.type = GateType(read_field(chromosome.bits, off, 2));
        off += 2;
      }
      g.in0 = choices[read_field(chromosome.bits, off, w) % choices.size()];
      off += w;
      g.in1 = choices[read_field(chromosome.bits, off, w) % choices.size()];
      off += w;
    }
  }
  p.tap = L.tap_choices[read_field(chromosome.bits, off, L.tap_select_width) %
                        L.tap_choices.size()];
  return p;
}

Chromosome encode(const ArrayLayout& layout, const std::vector<GateGene>& gates,
                  const SignalRef& tap) {
  if (gates.size() != std::size_t(layout.cell_count()))
    throw std::invalid_argument("gate list size does not match layout");
  Chromosome c;
  c.bits.assign(layout.chromosome_length, 0);
  std::size_t off = 0;
  for (int col = 0; col < layout.cols; ++col) {
    const auto& choices = layout.input_choices[col];
    int w = layout.input_select_width[col];
    for (int r = 0; r < layout.rows; ++r) {
      const GateGene& g = gates[layout.cell_index(r, col)];
      if (!layout.fixed_gate_types) {
        write_field(c.bits, off, 2, std::size_t(g.type));
        off += 2;
      }
      write_field(c.bits, off, w, choice_index(choices, g.in0, "gate input"));
      off += w;
      write_field(c.bits, off, w, choice_index(choices, g.in1, "gate input"));
      off += w;
    }
  }
  write_field(c.bits, off, layout.tap_select_width,
              choice_index(layout.tap_choices, tap, "output tap"));
  return c;
}

}  // namespace seqevolve

#include "seqevolve/circuit.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

namespace seqevolve {

using nlohmann::json;

std::uint64_t evaluate_words(const Phenotype& p, const std::uint64_t* pi_words,
                             const std::uint64_t* ps_words) {
  const ArrayLayout& L = *p.layout;
  std::vector<std::uint64_t> gate_out(p.gates.size());
  auto value_of = [&](const SignalRef& ref) -> std::uint64_t {
    switch (ref.kind) {
      case SignalRef::Kind::PrimaryInput: return pi_words[ref.index];
      case SignalRef::Kind::PresentState: return ps_words[ref.index];
      case SignalRef::Kind::ConstZero: return 0;
      case SignalRef::Kind::ConstOne: return ~std::uint64_t(0);
      case SignalRef::Kind::Gate: return gate_out[L.cell_index(ref.row, ref.col)];
    }
    return 0;
  };
  // Column order guarantees operands are already computed.
  for (int c = 0; c < L.cols; ++c) {
    for (int r = 0; r < L.rows; ++r) {
      std::size_t i = L.cell_index(r, c);
      const GateGene& g = p.gates[i];
      std::uint64_t a = value_of(g.in0);
      switch (g.type) {
        case GateType::And: gate_out[i] = a & value_of(g.in1); break;
        case GateType::Or: gate_out[i] = a | value_of(g.in1); break;
        case GateType::Xor: gate_out[i] = a ^ value_of(g.in1); break;
        case GateType::Not: gate_out[i] = ~a; break;
      }
    }
  }
  return value_of(p.tap);
}

Bit evaluate(const Phenotype& p, const Bits& primary_inputs, const Bits& present_state) {
  const ArrayLayout& L = *p.layout;
  if (primary_inputs.size() != std::size_t(L.num_primary_inputs) ||
      present_state.size() != std::size_t(L.num_state_bits))
    throw std::invalid_argument("input vector width does not match layout");
  std::vector<std::uint64_t> pi(primary_inputs.begin(), primary_inputs.end());
  std::vector<std::uint64_t> ps(present_state.begin(), present_state.end());
  return Bit(evaluate_words(p, pi.data(), ps.data()) & 1);
}

GateUsage used_gates(const Phenotype& p) {
  const ArrayLayout& L = *p.layout;
  GateUsage usage;
  usage.used.assign(p.gates.size(), 0);
  std::function<void(const SignalRef&)> visit = [&](const SignalRef& ref) {
    if (!ref.is_gate()) return;
    std::size_t i = L.cell_index(ref.row, ref.col);
    if (usage.used[i]) return;
    usage.used[i] = 1;
    ++usage.count;
    const GateGene& g = p.gates[i];
    visit(g.in0);
    if (g.type != GateType::Not) visit(g.in1);
  };
  visit(p.tap);
  return usage;
}

namespace {

// Expression precedence levels, loosest first.
enum Prec { kOr = 0, kXor = 1, kAnd = 2, kAtom = 3 };

struct ExprPart {
  std::string text;
  int prec;
  std::string wrapped(int context) const {
    return prec < context ? "(" + text + ")" : text;
  }
};

std::string signal_name(const SignalRef& ref, const std::vector<std::string>& pi_names,
                        const std::vector<std::string>& ps_names) {
  switch (ref.kind) {
    case SignalRef::Kind::PrimaryInput: return pi_names.at(ref.index);
    case SignalRef::Kind::PresentState: return ps_names.at(ref.index);
    case SignalRef::Kind::ConstZero: return "0";
    case SignalRef::Kind::ConstOne: return "1";
    default: return "?";
  }
}

ExprPart render(const Phenotype& p, const SignalRef& ref,
                const std::vector<std::string>& pi_names,
                const std::vector<std::string>& ps_names) {
  if (!ref.is_gate()) return {signal_name(ref, pi_names, ps_names), kAtom};
  const GateGene& g = p.gates[p.layout->cell_index(ref.row, ref.col)];
  ExprPart a = render(p, g.in0, pi_names, ps_names);
  switch (g.type) {
    case GateType::Not:
      return {a.wrapped(kAtom) + "'", kAtom};
    case GateType::And: {
      ExprPart b = render(p, g.in1, pi_names, ps_names);
      return {a.wrapped(kAnd) + b.wrapped(kAnd + 1), kAnd};
    }
    case GateType::Xor: {
      ExprPart b = render(p, g.in1, pi_names, ps_names);
      return {a.wrapped(kXor) + "^" + b.wrapped(kXor + 1), kXor};
    }
    case GateType::Or: {
      ExprPart b = render(p, g.in1, pi_names, ps_names);
      return {a.wrapped(kOr) + "+" + b.wrapped(kOr + 1), kOr};
    }
  }
  return {"?", kAtom};
}

std::string ref_to_string(const Phenotype& p, const SignalRef& ref,
                          const std::vector<std::string>& pi_names,
                          const std::vector<std::string>& ps_names,
                          const std::vector<int>& gate_ids) {
  switch (ref.kind) {
    case SignalRef::Kind::PrimaryInput: return "PI:" + pi_names.at(ref.index);
    case SignalRef::Kind::PresentState: return "PS:" + ps_names.at(ref.index);
    case SignalRef::Kind::ConstZero: return "C0";
    case SignalRef::Kind::ConstOne: return "C1";
    case SignalRef::Kind::Gate:
      return "G:g" + std::to_string(gate_ids[p.layout->cell_index(ref.row, ref.col)]);
  }
  return "?";
}

}  // namespace

std::string to_expression(const Phenotype& p, const std::vector<std::string>& pi_names,
                          const std::vector<std::string>& ps_names) {
  return render(p, p.tap, pi_names, ps_names).text;
}

json export_netlist(const Phenotype& p, const std::vector<std::string>& pi_names,
                    const std::vector<std::string>& ps_names) {
  const ArrayLayout& L = *p.layout;
  GateUsage usage = used_gates(p);
  // Stable ids in column-major order over used gates; column order is topological.
  std::vector<int> gate_ids(p.gates.size(), -1);
  int next_id = 0;
  for (std::size_t i = 0; i < p.gates.size(); ++i)
    if (usage.used[i]) gate_ids[i] = next_id++;

  json doc;
  doc["layout"] = {{"rows", L.rows},
                   {"cols", L.cols},
                   {"inputs", pi_names},
                   {"state_bits", ps_names},
                   {"connectivity", to_string(L.connectivity)},
                   {"fixed_gate_types", L.fixed_gate_types}};
  doc["chromosome_hex"] = chromosome_to_hex(encode(L, p.gates, p.tap));
  doc["gates"] = json::array();
  for (int c = 0; c < L.cols; ++c) {
    for (int r = 0; r < L.rows; ++r) {
      std::size_t i = L.cell_index(r, c);
      if (!usage.used[i]) continue;
      const GateGene& g = p.gates[i];
      json in = json::array();
      in.push_back(ref_to_string(p, g.in0, pi_names, ps_names, gate_ids));
      if (g.type != GateType::Not)
        in.push_back(ref_to_string(p, g.in1, pi_names, ps_names, gate_ids));
      doc["gates"].push_back(
          {{"id", "g" + std::to_string(gate_ids[i])}, {"type", to_string(g.type)}, {"in", in}});
    }
  }
  doc["tap"] = ref_to_string(p, p.tap, pi_names, ps_names, gate_ids);
  return doc;
}

ImportedNetlist import_netlist(const json& doc) {
  const json& lj = doc.at("layout");
  ImportedNetlist out;
  out.pi_names = lj.at("inputs").get<std::vector<std::string>>();
  out.ps_names = lj.at("state_bits").get<std::vector<std::string>>();
  out.layout = build_layout(lj.at("rows").get<int>(), lj.at("cols").get<int>(),
                            int(out.pi_names.size()), int(out.ps_names.size()),
                            connectivity_from_string(lj.at("connectivity").get<std::string>()),
                            lj.value("fixed_gate_types", false));
  out.chromosome = chromosome_from_hex(*out.layout, doc.at("chromosome_hex").get<std::string>());
  out.phenotype = decode(out.layout, out.chromosome);
  return out;
}

std::string to_dot(const Phenotype& p, const std::vector<std::string>& pi_names,
                   const std::vector<std::string>& ps_names, const std::string& graph_name) {
  const ArrayLayout& L = *p.layout;
  GateUsage usage = used_gates(p);
  std::ostringstream os;
  os << "digraph \"" << graph_name << "\" {\n  rankdir=LR;\n";
  std::vector<std::uint8_t> terminal_pi(pi_names.size(), 0), terminal_ps(ps_names.size(), 0);
  bool c0 = false, c1 = false;
  auto node_name = [&](const SignalRef& ref) -> std::string {
    switch (ref.kind) {
      case SignalRef::Kind::PrimaryInput:
        terminal_pi[ref.index] = 1;
        return "pi_" + std::to_string(ref.index);
      case SignalRef::Kind::PresentState:
        terminal_ps[ref.index] = 1;
        return "ps_" + std::to_string(ref.index);
      case SignalRef::Kind::ConstZero: c0 = true; return "c0";
      case SignalRef::Kind::ConstOne: c1 = true; return "c1";
      case SignalRef::Kind::Gate:
        return "g_" + std::to_string(ref.row) + "_" + std::to_string(ref.col);
    }
    return "x";
  };
  std::ostringstream edges;
  for (int c = 0; c < L.cols; ++c) {
    for (int r = 0; r < L.rows; ++r) {
      std::size_t i = L.cell_index(r, c);
      if (!usage.used[i]) continue;
      const GateGene& g = p.gates[i];
      std::string self = "g_" + std::to_string(r) + "_" + std::to_string(c);
      os << "  " << self << " [shape=box,label=\"" << to_string(g.type) << "\"];\n";
      edges << "  " << node_name(g.in0) << " -> " << self << ";\n";
      if (g.type != GateType::Not) edges << "  " << node_name(g.in1) << " -> " << self << ";\n";
    }
  }
  os << "  out [shape=doublecircle,label=\"out\"];\n";
  edges << "  " << node_name(p.tap) << " -> out;\n";
  for (std::size_t i = 0; i < terminal_pi.size(); ++i)
    if (terminal_pi[i]) os << "  pi_" << i << " [shape=ellipse,label=\"" << pi_names[i] << "\"];\n";
  for (std::size_t i = 0; i < terminal_ps.size(); ++i)
    if (terminal_ps[i]) os << "  ps_" << i << " [shape=ellipse,label=\"" << ps_names[i] << "\"];\n";
  if (c0) os << "  c0 [shape=plaintext,label=\"0\"];\n";
  if (c1) os << "  c1 [shape=plaintext,label=\"1\"];\n";
  os << edges.str() << "}\n";
  return os.str();
}

}  // namespace seqevolve

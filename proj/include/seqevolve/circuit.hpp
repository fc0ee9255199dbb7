#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seqevolve/genome.hpp"

#include "json.hpp"

namespace seqevolve {

/// Bit-parallel evaluation: each signal is a word carrying up to 64 independent
/// assignments. pi_words/ps_words hold one word per declared signal.
std::uint64_t evaluate_words(const Phenotype& p, const std::uint64_t* pi_words,
                             const std::uint64_t* ps_words);

Bit evaluate(const Phenotype& p, const Bits& primary_inputs, const Bits& present_state);

struct GateUsage {
  std::vector<std::uint8_t> used;  // column-major mask over cells
  int count{};
};

/// Transitive fan-in cone of the tap, gates only; no simplification.
GateUsage used_gates(const Phenotype& p);

/// Infix expression over the given signal names: juxtaposition for AND,
/// + for OR, ^ for XOR, postfix ' for NOT.
std::string to_expression(const Phenotype& p, const std::vector<std::string>& pi_names,
                          const std::vector<std::string>& ps_names);

nlohmann::json export_netlist(const Phenotype& p, const std::vector<std::string>& pi_names,
                              const std::vector<std::string>& ps_names);

struct ImportedNetlist {
  LayoutPtr layout;
  Chromosome chromosome;
  Phenotype phenotype;
  std::vector<std::string> pi_names;
  std::vector<std::string> ps_names;
};

ImportedNetlist import_netlist(const nlohmann::json& doc);

std::string to_dot(const Phenotype& p, const std::vector<std::string>& pi_names,
                   const std::vector<std::string>& ps_names, const std::string& graph_name);

}  // namespace seqevolve

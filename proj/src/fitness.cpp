#include "seqevolve/fitness.hpp"

#include <bit>
#include <stdexcept>

namespace seqevolve {

PackedTarget PackedTarget::pack(const TargetFunction& target) {
  PackedTarget p;
  p.num_vectors = int(target.vectors.size());
  p.num_chunks = (p.num_vectors + 63) / 64;
  p.pi_words.assign(target.num_inputs, std::vector<std::uint64_t>(p.num_chunks, 0));
  p.ps_words.assign(target.num_state_bits, std::vector<std::uint64_t>(p.num_chunks, 0));
  p.expected.assign(p.num_chunks, 0);
  p.mask.assign(p.num_chunks, 0);
  for (int v = 0; v < p.num_vectors; ++v) {
    const TargetVector& tv = target.vectors[v];
    if (tv.input.size() != target.num_inputs || tv.state_code.size() != target.num_state_bits)
      throw std::invalid_argument("target vector width mismatch");
    int chunk = v / 64;
    std::uint64_t bit = std::uint64_t(1) << (v % 64);
    for (std::size_t i = 0; i < tv.input.size(); ++i)
      if (tv.input[i]) p.pi_words[i][chunk] |= bit;
    for (std::size_t i = 0; i < tv.state_code.size(); ++i)
      if (tv.state_code[i]) p.ps_words[i][chunk] |= bit;
    if (tv.expected) p.expected[chunk] |= bit;
    p.mask[chunk] |= bit;
  }
  return p;
}

FitnessReport evaluate_fitness(const Phenotype& p, const PackedTarget& target) {
  const ArrayLayout& L = *p.layout;
  if (target.pi_words.size() != std::size_t(L.num_primary_inputs) ||
      target.ps_words.size() != std::size_t(L.num_state_bits))
    throw std::invalid_argument("target signal widths do not match layout");

  FitnessReport report;
  report.design_max = target.num_vectors;
  std::vector<std::uint64_t> pi(target.pi_words.size()), ps(target.ps_words.size());
  for (int chunk = 0; chunk < target.num_chunks; ++chunk) {
    for (std::size_t i = 0; i < pi.size(); ++i) pi[i] = target.pi_words[i][chunk];
    for (std::size_t i = 0; i < ps.size(); ++i) ps[i] = target.ps_words[i][chunk];
    std::uint64_t out = evaluate_words(p, pi.data(), ps.data());
    report.design += std::popcount(~(out ^ target.expected[chunk]) & target.mask[chunk]);
  }
  report.optimization = L.rows * L.cols - used_gates(p).count;
  report.fully_functional = report.design == report.design_max;
  report.final_score = report.design + (report.fully_functional ? report.optimization : 0);
  return report;
}

FitnessReport evaluate_fitness(const LayoutPtr& layout, const Chromosome& chromosome,
                               const TargetFunction& target) {
  return evaluate_fitness(decode(layout, chromosome), PackedTarget::pack(target));
}

int max_fitness(const ArrayLayout& layout, const TargetFunction& target) {
  return int(target.vectors.size()) + layout.rows * layout.cols;
}

}  // namespace seqevolve

#pragma once

#include <cstdint>
#include <vector>

#include "seqevolve/circuit.hpp"
#include "seqevolve/fsm_spec.hpp"
#include "seqevolve/genome.hpp"

namespace seqevolve {

struct FitnessReport {
  int design{};
  int optimization{};
  int final_score{};
  int design_max{};
  bool fully_functional{};
};

/// Target vectors packed into 64-wide words for bit-parallel evaluation.
struct PackedTarget {
  int num_vectors{};
  int num_chunks{};
  std::vector<std::vector<std::uint64_t>> pi_words;  // [signal][chunk]
  std::vector<std::vector<std::uint64_t>> ps_words;
  std::vector<std::uint64_t> expected;  // [chunk]
  std::vector<std::uint64_t> mask;      // [chunk] valid-vector mask

  static PackedTarget pack(const TargetFunction& target);
};

FitnessReport evaluate_fitness(const Phenotype& p, const PackedTarget& target);
FitnessReport evaluate_fitness(const LayoutPtr& layout, const Chromosome& chromosome,
                               const TargetFunction& target);

/// Ceiling design_max + R*C (reached only by a zero-gate fully functional tap).
int max_fitness(const ArrayLayout& layout, const TargetFunction& target);

}  // namespace seqevolve

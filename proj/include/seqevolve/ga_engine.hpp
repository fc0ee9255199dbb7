#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "seqevolve/fitness.hpp"
#include "seqevolve/genome.hpp"

namespace seqevolve {

struct GaConfig {
  int population_size = 10;
  int max_generations = 40000;
  int stall_generations = 20000;
  double crossover_rate = 0.9;
  double mutation_rate = -1.0;  // <0 means 2/chromosome_length
  int elitism = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class Termination { TargetMet, Stall, GenerationLimit };

std::string to_string(Termination t);

struct RunResult {
  Chromosome best;
  FitnessReport best_report;
  int generations_run{};
  int generations_to_functionality{-1};  // -1 when never reached
  Termination termination{Termination::GenerationLimit};
  std::vector<int> history;  // per-generation best final score
};

/// Proportional selection; uniform fallback when all values are zero.
std::size_t roulette_select(const std::vector<int>& fitness_values, std::mt19937_64& rng);

std::pair<Chromosome, Chromosome> one_point_crossover(const Chromosome& a, const Chromosome& b,
                                                      std::mt19937_64& rng);

Chromosome uniform_mutate(const Chromosome& c, double mutation_rate, std::mt19937_64& rng);

RunResult run_ga(const LayoutPtr& layout, const TargetFunction& target, const GaConfig& config);
RunResult run_ga(const LayoutPtr& layout, const PackedTarget& packed, const GaConfig& config);

}  // namespace seqevolve

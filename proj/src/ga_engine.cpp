#include "seqevolve/ga_engine.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace seqevolve {

void GaConfig::validate() const {
  if (population_size < 2) throw std::invalid_argument("population_size must be >= 2");
  if (max_generations < 1) throw std::invalid_argument("max_generations must be >= 1");
  if (stall_generations < 1 || stall_generations > max_generations)
    throw std::invalid_argument("stall_generations must be in [1, max_generations]");
  if (crossover_rate < 0.0 || crossover_rate > 1.0)
    throw std::invalid_argument("crossover_rate must be in [0,1]");
  if (mutation_rate > 1.0) throw std::invalid_argument("mutation_rate must be <= 1");
  if (elitism < 0 || elitism >= population_size)
    throw std::invalid_argument("elitism must be in [0, population_size)");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::TargetMet: return "target-met";
    case Termination::Stall: return "stall";
    case Termination::GenerationLimit: return "generation-limit";
  }
  return "?";
}

std::size_t roulette_select(const std::vector<int>& fitness_values, std::mt19937_64& rng) {
  if (fitness_values.empty()) throw std::invalid_argument("empty fitness list");
  long long total = 0;
  for (int v : fitness_values) {
    if (v < 0) throw std::invalid_argument("negative fitness value");
    total += v;
  }
  if (total == 0) {
    std::uniform_int_distribution<std::size_t> pick(0, fitness_values.size() - 1);
    return pick(rng);
  }
  std::uniform_int_distribution<long long> pick(0, total - 1);
  long long ball = pick(rng);
  for (std::size_t i = 0; i < fitness_values.size(); ++i) {
    ball -= fitness_values[i];
    if (ball < 0) return i;
  }
  return fitness_values.size() - 1;
}

std::pair<Chromosome, Chromosome> one_point_crossover(const Chromosome& a, const Chromosome& b,
                                                      std::mt19937_64& rng) {
  std::size_t len = a.bits.size();
  if (len != b.bits.size()) throw std::invalid_argument("parent length mismatch");
  if (len < 2) throw std::invalid_argument("chromosome too short for crossover");
  std::uniform_int_distribution<std::size_t> cut(1, len - 1);
  std::size_t k = cut(rng);
  Chromosome child_a = a, child_b = b;
  for (std::size_t i = k; i < len; ++i) std::swap(child_a.bits[i], child_b.bits[i]);
  return {std::move(child_a), std::move(child_b)};
}

Chromosome uniform_mutate(const Chromosome& c, double mutation_rate, std::mt19937_64& rng) {
  if (mutation_rate < 0.0 || mutation_rate > 1.0)
    throw std::invalid_argument("mutation_rate must be in [0,1]");
  Chromosome out = c;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (auto& bit : out.bits)
    if (coin(rng) < mutation_rate) bit ^= 1;
  return out;
}

RunResult run_ga(const LayoutPtr& layout, const TargetFunction& target, const GaConfig& config) {
  return run_ga(layout, PackedTarget::pack(target), config);
}

RunResult run_ga(const LayoutPtr& layout, const PackedTarget& packed, const GaConfig& config) {
  config.validate();
  double mutation_rate = config.mutation_rate >= 0.0
                             ? config.mutation_rate
                             : 2.0 / double(layout->chromosome_length);
  std::mt19937_64 rng(config.seed);

  std::vector<Chromosome> population;
  population.reserve(config.population_size);
  for (int i = 0; i < config.population_size; ++i)
    population.push_back(random_chromosome(*layout, rng));

  RunResult result;
  int best_final = -1;
  int stall = 0;

  std::vector<FitnessReport> reports(population.size());
  std::vector<int> finals(population.size());

  for (int gen = 1; gen <= config.max_generations; ++gen) {
    result.generations_run = gen;

    // Fitness is pure; order of evaluation does not affect the RNG stream.
    for (std::size_t i = 0; i < population.size(); ++i) {
      reports[i] = evaluate_fitness(decode(layout, population[i]), packed);
      finals[i] = reports[i].final_score;
    }

    std::size_t gen_best = 0;
    for (std::size_t i = 1; i < population.size(); ++i)
      if (finals[i] > finals[gen_best]) gen_best = i;
    result.history.push_back(finals[gen_best]);

    if (result.generations_to_functionality < 0) {
      for (std::size_t i = 0; i < population.size(); ++i)
        if (reports[i].fully_functional) {
          result.generations_to_functionality = gen;
          break;
        }
    }

    if (finals[gen_best] > best_final) {
      best_final = finals[gen_best];
      result.best = population[gen_best];
      result.best_report = reports[gen_best];
      stall = 0;
    } else {
      ++stall;
    }

    if (stall >= config.stall_generations) {
      result.termination =
          result.best_report.fully_functional ? Termination::TargetMet : Termination::Stall;
      return result;
    }
    if (gen == config.max_generations) break;

    // Breed the next generation.
    std::vector<Chromosome> next;
    next.reserve(population.size());
    if (config.elitism > 0) {
      std::vector<std::size_t> order(population.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return finals[a] > finals[b]; });
      for (int e = 0; e < config.elitism; ++e) next.push_back(population[order[e]]);
    }
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    while (next.size() < population.size()) {
      std::size_t pa = roulette_select(finals, rng);
      std::size_t pb = roulette_select(finals, rng);
      Chromosome ca, cb;
      if (coin(rng) < config.crossover_rate) {
        std::tie(ca, cb) = one_point_crossover(population[pa], population[pb], rng);
      } else {
        ca = population[pa];
        cb = population[pb];
      }
      next.push_back(uniform_mutate(ca, mutation_rate, rng));
      if (next.size() < population.size())
        next.push_back(uniform_mutate(cb, mutation_rate, rng));
    }
    population = std::move(next);
  }

  result.termination = Termination::GenerationLimit;
  return result;
}

}  // namespace seqevolve

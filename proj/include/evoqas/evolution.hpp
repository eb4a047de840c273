#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "evoqas/architecture.hpp"
#include "evoqas/model.hpp"
#include "evoqas/rng.hpp"

namespace evoqas {

struct EdParams {
  double gamma = 1.0;
  int n = 1000;
  int num_theta_samples = 100;
  int fisher_samples = 100;  // k

  bool operator==(const EdParams&) const = default;
};

struct EvolutionConfig {
  int population_size = 50;
  int num_parents = 10;
  double sigma = 0.02;
  int num_generations = 1000;
  int n_qubits = 4;
  int num_var_layers = 2;
  EdParams ed;
  OutputMap readout = OutputMap::ParityAllQubits;
  std::uint64_t master_seed = 0;
  bool elitism = true;  // parents survive unchanged with their stored fitness

  void validate() const;

  bool operator==(const EvolutionConfig&) const = default;
};

struct Individual {
  Genotype genotype;
  ArchitectureSpec sampled_arch;
  double fitness = 0.0;
  bool evaluated = false;
  std::uint64_t eval_seed = 0;
};

struct GenerationStats {
  int generation = 0;
  double best = 0.0;
  double mean = 0.0;
  double p25 = 0.0;
  double p75 = 0.0;
  Genotype best_genotype;
  ArchitectureSpec best_arch;
};

struct EvolutionRecord {
  std::vector<GenerationStats> history;  // entry 0 is the initial population
  std::vector<Individual> final_population;
};

// Seed layout, part of the reproducibility contract:
//   eval_seed            = derive_seed(derive_seed(master_seed, generation), slot)
//   architecture stream  = derive_seed(eval_seed, 0)
//   effective-dim seed   = derive_seed(eval_seed, 1)
//   genotype init stream = derive_seed(eval_seed, 2)   (generation 0)
//   mutation stream      = derive_seed(eval_seed, 3)
std::uint64_t slot_seed(std::uint64_t master_seed, int generation, int slot);

// Samples one architecture from the genotype, decodes it at cfg.n_qubits and
// scores it by effective dimension. Deterministic in (genotype, eval_seed);
// failures (and d = 0 circuits) score 0.
Individual evaluate(Individual ind, const EvolutionConfig& cfg);

// Indices of the num_parents fittest individuals, ties broken by lower index.
// Throws std::logic_error if any individual is unevaluated.
std::vector<int> select_parents(std::span<const Individual> population, int num_parents);

// The full loop: evaluate, pick parents, refill with Gaussian-mutated
// offspring (round-robin over parents), repeat. Individuals of a generation
// are evaluated in parallel; the outcome depends only on master_seed.
EvolutionRecord evolve(const EvolutionConfig& cfg);

}  // namespace evoqas

#include "evoqas/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>

#include "evoqas/effective_dimension.hpp"
#include "evoqas/model.hpp"

namespace evoqas {

namespace {

double quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) return 0.0;
  if (sorted.size() == 1) return sorted[0];
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

GenerationStats population_stats(int generation, std::span<const Individual> pop) {
  GenerationStats s;
  s.generation = generation;
  std::size_t best = 0;
  double sum = 0.0;
  std::vector<double> fitness(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    fitness[i] = pop[i].fitness;
    sum += pop[i].fitness;
    if (pop[i].fitness > pop[best].fitness) best = i;
  }
  std::sort(fitness.begin(), fitness.end());
  s.best = pop[best].fitness;
  s.mean = sum / static_cast<double>(pop.size());
  s.p25 = quantile(fitness, 0.25);
  s.p75 = quantile(fitness, 0.75);
  s.best_genotype = pop[best].genotype;
  s.best_arch = pop[best].sampled_arch;
  return s;
}

void evaluate_population(std::vector<Individual>& pop, const EvolutionConfig& cfg) {
  const int count = static_cast<int>(pop.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    if (pop[i].evaluated) continue;  // elitism: stored fitness is never recomputed
    try {
      pop[i] = evaluate(std::move(pop[i]), cfg);
    } catch (...) {
#pragma omp critical(evoqas_evolve_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

void EvolutionConfig::validate() const {
  if (population_size < 1) throw std::invalid_argument("evolution: population_size must be positive");
  if (num_parents < 1 || num_parents > population_size)
    throw std::invalid_argument("evolution: num_parents must be in [1, population_size]");
  if (sigma < 0.0) throw std::invalid_argument("evolution: sigma must be non-negative");
  if (num_generations < 0) throw std::invalid_argument("evolution: negative generation count");
  if (n_qubits < 1 || n_qubits > 12)
    throw std::invalid_argument("evolution: n_qubits must be in [1, 12]");
  if (num_var_layers < 0) throw std::invalid_argument("evolution: negative layer count");
  if (num_var_layers > 0 && n_qubits < 2)
    throw std::invalid_argument("evolution: entangling layers need at least 2 qubits");
  if (ed.num_theta_samples < 1 || ed.fisher_samples < 1)
    throw std::invalid_argument("evolution: effective-dimension budgets must be positive");
  validate_ed_constants(ed.gamma, ed.n);
}

std::uint64_t slot_seed(std::uint64_t master_seed, int generation, int slot) {
  return derive_seed(derive_seed(master_seed, static_cast<std::uint64_t>(generation)),
                     static_cast<std::uint64_t>(slot));
}

Individual evaluate(Individual ind, const EvolutionConfig& cfg) {
  Rng arch_rng(derive_seed(ind.eval_seed, 0));
  ind.sampled_arch = sample_architecture(ind.genotype, arch_rng);
  const CircuitSpec circuit = decode(ind.sampled_arch, cfg.n_qubits);
  const QuantumModel model(circuit, cfg.readout);
  ind.fitness = 0.0;
  if (model.param_count() > 0) {
    try {
      ind.fitness = effective_dimension(model, cfg.ed.gamma, cfg.ed.n, cfg.ed.num_theta_samples,
                                        cfg.ed.fisher_samples, derive_seed(ind.eval_seed, 1))
                        .value;
    } catch (const std::exception&) {
      ind.fitness = 0.0;
    }
  }
  ind.evaluated = true;
  return ind;
}

std::vector<int> select_parents(std::span<const Individual> population, int num_parents) {
  if (num_parents < 1 || num_parents > static_cast<int>(population.size()))
    throw std::invalid_argument("select_parents: num_parents out of range");
  for (const Individual& ind : population)
    if (!ind.evaluated) throw std::logic_error("select_parents: unevaluated individual");

  std::vector<int> order(population.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&population](int a, int b) {
    return population[a].fitness > population[b].fitness;
  });
  order.resize(num_parents);
  return order;
}

EvolutionRecord evolve(const EvolutionConfig& cfg) {
  cfg.validate();
  const int pop_size = cfg.population_size;

  std::vector<Individual> pop(pop_size);
  for (int i = 0; i < pop_size; ++i) {
    pop[i].eval_seed = slot_seed(cfg.master_seed, 0, i);
    Rng init_rng(derive_seed(pop[i].eval_seed, 2));
    pop[i].genotype = init_genotype(cfg.num_var_layers, init_rng);
  }
  evaluate_population(pop, cfg);

  EvolutionRecord record;
  record.history.reserve(cfg.num_generations + 1);
  record.history.push_back(population_stats(0, pop));

  for (int gen = 1; gen <= cfg.num_generations; ++gen) {
    const std::vector<int> parents = select_parents(pop, cfg.num_parents);

    std::vector<Individual> next;
    next.reserve(pop_size);
    if (cfg.elitism)
      for (int idx : parents) next.push_back(pop[idx]);

    const int first_offspring = static_cast<int>(next.size());
    for (int slot = first_offspring; slot < pop_size; ++slot) {
      const Individual& parent = pop[parents[(slot - first_offspring) % parents.size()]];
      Individual child;
      child.eval_seed = slot_seed(cfg.master_seed, gen, slot);
      Rng mut_rng(derive_seed(child.eval_seed, 3));
      child.genotype = mutate(parent.genotype, cfg.sigma, mut_rng);
      next.push_back(std::move(child));
    }

    pop = std::move(next);
    evaluate_population(pop, cfg);
    record.history.push_back(population_stats(gen, pop));
  }

  record.final_population = std::move(pop);
  return record;
}

}  // namespace evoqas

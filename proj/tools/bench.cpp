// Timing harness: the OpenMP paths against single-threaded runs of the same
// kernels, plus a correctness spot-check of the fast amplitude kernels
// against the dense Kronecker reference.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "evoqas/architecture.hpp"
#include "evoqas/effective_dimension.hpp"
#include "evoqas/evolution.hpp"
#include "evoqas/model.hpp"
#include "evoqas/reference.hpp"
#include "evoqas/statevector.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace evoqas;

// captured before any omp_set_num_threads call
int g_hw_threads = 1;

int hw_threads() { return g_hw_threads; }

void set_threads(int t) {
#ifdef _OPENMP
  omp_set_num_threads(t);
#else
  (void)t;
#endif
}

template <class Fn>
double time_seconds(int reps, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / reps;
}

CircuitSpec make_circuit(int n_qubits, int layers, std::uint64_t seed) {
  Rng rng(seed);
  return decode(sample_architecture(init_genotype(layers, rng), rng), n_qubits);
}

void bench_circuit(int n_qubits) {
  const CircuitSpec c = make_circuit(n_qubits, 3, 1);
  Rng rng(2);
  std::vector<double> inputs(c.num_inputs), params(c.num_params);
  for (double& v : inputs) v = rng.normal();
  for (double& v : params) v = rng.uniform(0.0, 6.28);

  const int reps = n_qubits >= 11 ? 50 : 400;
  set_threads(1);
  const double serial = time_seconds(reps, [&] { run_circuit(c, inputs, params); });
  set_threads(hw_threads());
  const double parallel = time_seconds(reps, [&] { run_circuit(c, inputs, params); });
  std::printf("run_circuit %2d qubits  serial %9.3f us   %d threads %9.3f us   speedup %.2fx\n",
              n_qubits, serial * 1e6, hw_threads(), parallel * 1e6, serial / parallel);
}

void bench_effective_dimension() {
  Rng rng(3);
  const QuantumModel model(make_circuit(4, 2, 3));
  set_threads(1);
  const double serial =
      time_seconds(3, [&] { effective_dimension(model, 1.0, 1000, 100, 100, 9); });
  set_threads(hw_threads());
  const double parallel =
      time_seconds(3, [&] { effective_dimension(model, 1.0, 1000, 100, 100, 9); });
  const double a = effective_dimension(model, 1.0, 1000, 100, 100, 9).value;
  set_threads(1);
  const double b = effective_dimension(model, 1.0, 1000, 100, 100, 9).value;
  std::printf("effective_dimension    serial %9.1f ms   %d threads %9.1f ms   speedup %.2fx%s\n",
              serial * 1e3, hw_threads(), parallel * 1e3, serial / parallel,
              a == b ? "" : "   VALUES DIVERGED");
}

void bench_evolution() {
  EvolutionConfig cfg;
  cfg.population_size = 12;
  cfg.num_parents = 4;
  cfg.num_generations = 2;
  cfg.n_qubits = 4;
  cfg.num_var_layers = 2;
  cfg.ed.num_theta_samples = 40;
  cfg.ed.fisher_samples = 40;
  cfg.master_seed = 5;

  set_threads(1);
  const double serial = time_seconds(1, [&] { evolve(cfg); });
  set_threads(hw_threads());
  const double parallel = time_seconds(1, [&] { evolve(cfg); });
  std::printf("evolve (12x2 gens)     serial %9.1f ms   %d threads %9.1f ms   speedup %.2fx\n",
              serial * 1e3, hw_threads(), parallel * 1e3, serial / parallel);
}

double check_against_reference() {
  const CircuitSpec c = make_circuit(6, 2, 7);
  Rng rng(8);
  std::vector<double> inputs(c.num_inputs), params(c.num_params);
  for (double& v : inputs) v = rng.normal();
  for (double& v : params) v = rng.uniform(0.0, 6.28);
  const StateVector fast = run_circuit(c, inputs, params);
  const StateVector slow = reference::run_circuit(c, inputs, params);
  double worst = 0.0;
  for (std::size_t i = 0; i < fast.amplitudes.size(); ++i)
    worst = std::max(worst, std::abs(fast.amplitudes[i] - slow.amplitudes[i]));
  return worst;
}

}  // namespace

int main() {
#ifdef _OPENMP
  g_hw_threads = omp_get_max_threads();
#endif
  std::printf("kernels vs dense Kronecker reference (6 qubits): max |diff| = %.3e\n\n",
              check_against_reference());
  for (int q : {6, 10, 12}) bench_circuit(q);
  std::printf("\n");
  bench_effective_dimension();
  bench_evolution();
  return 0;
}

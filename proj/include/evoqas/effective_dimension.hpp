#pragma once

#include <cstdint>
#include <exception>
#include <span>
#include <vector>

#include "evoqas/fisher.hpp"
#include "evoqas/rng.hpp"

namespace evoqas {

struct EffectiveDimensionResult {
  double gamma = 1.0;
  int n = 0;               // data samples entering kappa
  double kappa = 0.0;      // gamma * n / (2 pi log n)
  double value = 0.0;
  int d = 0;
  int num_theta_samples = 0;
  int fisher_samples = 0;  // k per theta
  std::uint64_t seed = 0;
};

double kappa_for(double gamma, int n);

// Throws std::invalid_argument / std::domain_error unless gamma is in (0,1],
// n > 1 and kappa(gamma, n) > 1.
void validate_ed_constants(double gamma, int n);

// Core estimator over an existing Fisher sample set: trace-normalize over the
// set, then average sqrt(det(id + kappa * Fhat)) in the log domain
// (eigenvalues clamped at 0; max-shifted exponential mean) and return
// 2 * log(avg) / log(kappa). An all-zero sample set gives 0.
double effective_dimension_from_samples(std::span<const FisherSample> samples, double gamma,
                                        int n, int d);

// Monte Carlo effective dimension of a model: theta sampled uniformly from
// the model's domain box, one empirical Fisher per theta, then the estimator
// above over that same sample set.
//
// Determinism: the sample-s stream is Rng(derive_seed(seed, s)), so results
// are bit-identical for a given seed no matter how the loop is scheduled.
template <class Model>
EffectiveDimensionResult effective_dimension(const Model& model, double gamma, int n,
                                             int num_theta_samples, int k, std::uint64_t seed) {
  validate_ed_constants(gamma, n);
  if (num_theta_samples < 1)
    throw std::invalid_argument("effective_dimension: need at least one theta sample");
  if (k < 1) throw std::invalid_argument("effective_dimension: k must be >= 1");

  const int d = model.param_count();
  EffectiveDimensionResult res;
  res.gamma = gamma;
  res.n = n;
  res.kappa = kappa_for(gamma, n);
  res.d = d;
  res.num_theta_samples = num_theta_samples;
  res.fisher_samples = k;
  res.seed = seed;
  if (d == 0) return res;  // no trainable directions

  const auto [lo, hi] = model.theta_domain();
  std::vector<FisherSample> samples(num_theta_samples);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < num_theta_samples; ++s) {
    try {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
      std::vector<double> theta(d);
      for (double& t : theta) t = rng.uniform(lo, hi);
      samples[s] = empirical_fisher(model, theta, k, rng);
    } catch (...) {
#pragma omp critical(evoqas_ed_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  res.value = effective_dimension_from_samples(samples, gamma, n, d);
  return res;
}

}  // namespace evoqas

#include "evoqas/effective_dimension.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace evoqas {

double kappa_for(double gamma, int n) {
  return gamma * static_cast<double>(n) / (2.0 * std::numbers::pi * std::log(static_cast<double>(n)));
}

void validate_ed_constants(double gamma, int n) {
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::invalid_argument("effective dimension: gamma must be in (0, 1]");
  if (n <= 1) throw std::invalid_argument("effective dimension: n must exceed 1");
  if (kappa_for(gamma, n) <= 1.0)
    throw std::domain_error("effective dimension: kappa = gamma*n/(2*pi*log n) must exceed 1");
}

double effective_dimension_from_samples(std::span<const FisherSample> samples, double gamma,
                                        int n, int d) {
  validate_ed_constants(gamma, n);
  if (samples.empty())
    throw std::invalid_argument("effective_dimension_from_samples: no samples");
  if (d == 0) return 0.0;

  double total_trace = 0.0;
  for (const FisherSample& s : samples) total_trace += s.trace;
  if (total_trace <= 0.0) return 0.0;  // zero Fisher carries no capacity

  const double kappa = kappa_for(gamma, n);
  const std::vector<Matrix> normalized = normalize_fisher(samples, d);

  const int count = static_cast<int>(normalized.size());
  std::vector<double> half_logdet(count);
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < count; ++s) {
    double acc = 0.0;
    for (double lambda : symmetric_eigenvalues(normalized[s]))
      acc += std::log1p(kappa * std::max(lambda, 0.0));
    half_logdet[s] = 0.5 * acc;
  }

  // exponential mean with a max shift; the reduction order is fixed so the
  // value does not depend on the thread count
  const double shift = *std::max_element(half_logdet.begin(), half_logdet.end());
  double mean = 0.0;
  for (double v : half_logdet) mean += std::exp(v - shift);
  mean /= static_cast<double>(count);
  const double log_integral = shift + std::log(mean);
  return 2.0 * log_integral / std::log(kappa);
}

}  // namespace evoqas

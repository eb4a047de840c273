#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "evoqas/linalg.hpp"
#include "evoqas/model.hpp"
#include "evoqas/rng.hpp"

namespace evoqas {

// One empirical Fisher estimate at a fixed theta: the average of k outer
// products of score vectors, so symmetric PSD by construction.
struct FisherSample {
  std::vector<double> theta;
  Matrix matrix;
  double trace = 0.0;
};

// How often one data point may be redrawn after a vanishing-probability
// failure before the error propagates.
inline constexpr int kMaxFisherRetries = 64;

// Data points are x ~ normal(0,1)^inputs and y ~ p(.|x;theta) from the model
// itself, which makes the outer-product average an unbiased Fisher estimate.
//
// The Model contract (shared by QuantumModel and MlpModel):
//   param_count(), input_count(), theta_domain(),
//   forward(x, theta) -> {p0, p1},
//   log_prob_gradient(x, y, theta, grad_out).
template <class Model>
FisherSample empirical_fisher(const Model& model, std::span<const double> theta, int k,
                              Rng& rng) {
  if (k < 1) throw std::invalid_argument("empirical_fisher: k must be >= 1");
  const int d = model.param_count();
  if (static_cast<int>(theta.size()) != d)
    throw std::invalid_argument("empirical_fisher: theta length mismatch");

  FisherSample out;
  out.theta.assign(theta.begin(), theta.end());
  out.matrix = Matrix(d);

  std::vector<double> x(model.input_count());
  std::vector<double> grad(d);
  for (int j = 0; j < k; ++j) {
    for (int tries = 0;; ++tries) {
      for (double& xi : x) xi = rng.normal();
      const auto p = model.forward(x, theta);
      const int y = rng.uniform() < p[0] ? 0 : 1;
      try {
        model.log_prob_gradient(x, y, theta, grad);
        break;
      } catch (const vanishing_probability_error&) {
        if (tries + 1 >= kMaxFisherRetries) throw;
      }
    }
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b) out.matrix(a, b) += grad[a] * grad[b];
  }

  const double inv_k = 1.0 / static_cast<double>(k);
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      out.matrix(a, b) *= inv_k;
      out.matrix(b, a) = out.matrix(a, b);
    }
  out.trace = out.matrix.trace();
  return out;
}

// Scales every matrix by d * S / sum(traces) — the Monte Carlo form of the
// trace-normalization integral over the same sample set — so the mean trace
// of the outputs is exactly d. Throws std::domain_error when every trace is
// zero (degenerate model; effective dimension is 0 by convention).
std::vector<Matrix> normalize_fisher(std::span<const FisherSample> samples, int d);

// All eigenvalues of a symmetric matrix, ascending.
std::vector<double> eigenspectrum(const Matrix& matrix);

}  // namespace evoqas

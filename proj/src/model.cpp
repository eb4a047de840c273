#include "evoqas/model.hpp"

#include <bit>
#include <cmath>

#include "evoqas/statevector.hpp"

namespace evoqas {

QuantumModel::QuantumModel(CircuitSpec circuit, OutputMap output)
    : circuit_(std::move(circuit)), output_(output) {
  circuit_.validate();
}

std::array<double, 2> QuantumModel::forward(std::span<const double> x,
                                            std::span<const double> theta) const {
  const StateVector state = run_circuit(circuit_, x, theta);
  double p0 = 0.0, p1 = 0.0;
  if (output_ == OutputMap::Qubit0Marginal) {
    // qubit 0 is the MSB: the first half of the vector is the y = 0 branch
    const int half = state.dimension() / 2;
    for (int i = 0; i < half; ++i) p0 += std::norm(state.amplitudes[i]);
    for (int i = half; i < state.dimension(); ++i) p1 += std::norm(state.amplitudes[i]);
  } else {
    for (int b = 0; b < state.dimension(); ++b) {
      const double prob = std::norm(state.amplitudes[b]);
      if (std::popcount(static_cast<unsigned>(b)) % 2 == 0)
        p0 += prob;
      else
        p1 += prob;
    }
  }
  return {p0, p1};
}

void QuantumModel::log_prob_gradient(std::span<const double> x, int y,
                                     std::span<const double> theta,
                                     std::span<double> grad) const {
  const int d = param_count();
  if (y != 0 && y != 1) throw std::invalid_argument("log_prob_gradient: y must be 0 or 1");
  if (static_cast<int>(theta.size()) != d || static_cast<int>(grad.size()) != d)
    throw std::invalid_argument("log_prob_gradient: dimension mismatch");

  const double p = forward(x, theta)[y];
  if (p <= kMinProbability)
    throw vanishing_probability_error("log_prob_gradient: vanishing class probability");

  constexpr double shift = std::numbers::pi / 2.0;
  std::vector<double> shifted(theta.begin(), theta.end());
  for (int j = 0; j < d; ++j) {
    const double saved = shifted[j];
    shifted[j] = saved + shift;
    const double plus = forward(x, shifted)[y];
    shifted[j] = saved - shift;
    const double minus = forward(x, shifted)[y];
    shifted[j] = saved;
    const double diff = plus - minus;
    grad[j] = std::abs(diff) < kShiftNoiseFloor ? 0.0 : diff / (2.0 * p);
  }
}

}  // namespace evoqas

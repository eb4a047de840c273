#pragma once

#include <array>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "evoqas/circuit.hpp"

namespace evoqas {

// Raised when p(y|x;theta) is too small for the score 1/p * dp to be usable.
// Fisher estimation treats it as "resample this data point".
struct vanishing_probability_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Conditional probabilities below this are treated as vanishing.
inline constexpr double kMinProbability = 1e-12;

// Shifted-probability differences at simulator roundoff level are exact
// zeros. Without this floor, a circuit whose parameters only ever change
// phases (all-RZ variational layers) produces ~1e-15 numerators that the
// Fisher trace normalization then amplifies into a full-scale fake spectrum.
inline constexpr double kShiftNoiseFloor = 1e-12;

// Two-class readout. ParityAllQubits (p(y) = total probability of basis
// states with even/odd bit parity) is the default: it is the readout that
// keeps Fisher mass spread across every parameter direction. Qubit0Marginal
// is the local alternative; it concentrates the spectrum in few directions.
enum class OutputMap { ParityAllQubits, Qubit0Marginal };

// Two-class probabilistic readout of a circuit. Gradients of log p come from
// the parameter-shift rule, which is exact for the half-angle rotation gates.
class QuantumModel {
 public:
  explicit QuantumModel(CircuitSpec circuit, OutputMap output = OutputMap::ParityAllQubits);

  int param_count() const { return circuit_.num_params; }
  int input_count() const { return circuit_.num_inputs; }
  const CircuitSpec& circuit() const { return circuit_; }

  // Theta lives on the 2*pi torus; this is the box the Fisher/effective
  // dimension machinery samples from.
  std::pair<double, double> theta_domain() const { return {0.0, 2.0 * std::numbers::pi}; }

  // (p(y=0|x;theta), p(y=1|x;theta)); sums to 1 up to simulator roundoff.
  std::array<double, 2> forward(std::span<const double> x, std::span<const double> theta) const;

  // grad[j] = [p_y(theta + pi/2 e_j) - p_y(theta - pi/2 e_j)] / (2 p_y(theta)).
  // Throws vanishing_probability_error when p_y(theta) <= kMinProbability.
  void log_prob_gradient(std::span<const double> x, int y, std::span<const double> theta,
                         std::span<double> grad) const;

  std::vector<double> log_prob_gradient(std::span<const double> x, int y,
                                        std::span<const double> theta) const {
    std::vector<double> grad(param_count());
    log_prob_gradient(x, y, theta, grad);
    return grad;
  }

 private:
  CircuitSpec circuit_;
  OutputMap output_;
};

}  // namespace evoqas

#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "evoqas/circuit.hpp"

namespace evoqas {

// Pure n-qubit state, dense amplitudes. Qubit 0 is the most significant bit
// of the basis-state index, so amplitudes[0..2^(n-1)) is the qubit-0 = |0>
// half of the vector.
struct StateVector {
  int n_qubits = 1;
  std::vector<std::complex<double>> amplitudes;

  static StateVector zero_state(int n_qubits);

  int dimension() const { return 1 << n_qubits; }
  double norm_squared() const;

  bool operator==(const StateVector&) const = default;
};

// Applies one gate and returns the new state; the input is not modified.
// For rotations the angle must be resolvable: either passed explicitly or
// carried by a Constant angle source (but not both). H/CNOT reject any angle.
StateVector apply_gate(const StateVector& state, const GateOp& gate,
                       std::optional<double> angle = std::nullopt);

// |0...0> pushed through the whole gate list, with InputSlot/ParamSlot angles
// resolved from the supplied vectors.
StateVector run_circuit(const CircuitSpec& circuit, std::span<const double> inputs,
                        std::span<const double> params);

// Computational-basis probabilities |amplitude_b|^2.
std::vector<double> measurement_probabilities(const StateVector& state);

}  // namespace evoqas

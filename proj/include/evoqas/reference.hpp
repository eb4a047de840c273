#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "evoqas/circuit.hpp"
#include "evoqas/statevector.hpp"

namespace evoqas::reference {

// Serial reference simulator: builds each gate's full 2^n x 2^n unitary from
// Kronecker products and applies it by dense matrix-vector product. Slow and
// memory-hungry on purpose — it exists so the bit-twiddling kernels have an
// independently coded implementation to be checked against.

using UnitaryMatrix = std::vector<std::complex<double>>;  // row-major, dim x dim

UnitaryMatrix gate_unitary(const GateOp& gate, std::optional<double> angle, int n_qubits);

StateVector apply_gate(const StateVector& state, const GateOp& gate,
                       std::optional<double> angle = std::nullopt);

StateVector run_circuit(const CircuitSpec& circuit, std::span<const double> inputs,
                        std::span<const double> params);

}  // namespace evoqas::reference

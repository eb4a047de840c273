#include "evoqas/statevector.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace evoqas {

namespace {

using cplx = std::complex<double>;

// Amplitude loops go parallel from this state size. Below it (the 4-7 qubit
// regime of the search experiments) the fork/join cost dwarfs the work, and
// the coarse parallelism lives in the Fisher/population loops instead.
constexpr std::ptrdiff_t kParallelDim = 1 << 11;

// qubit 0 is the MSB of the basis index
std::size_t qubit_mask(int n_qubits, int qubit) {
  return std::size_t{1} << (n_qubits - 1 - qubit);
}

// The loops stay out of the OpenMP runtime entirely below the size threshold;
// entering a (serialized) parallel region per gate costs more than the whole
// small-state update.
void apply_single_qubit(std::vector<cplx>& amp, int n_qubits, int qubit,
                        const std::array<cplx, 4>& u) {
  const std::ptrdiff_t dim = static_cast<std::ptrdiff_t>(amp.size());
  const std::size_t mask = qubit_mask(n_qubits, qubit);
  const auto body = [&](std::ptrdiff_t i) {
    if (i & mask) return;
    const cplx a0 = amp[i];
    const cplx a1 = amp[i | mask];
    amp[i] = u[0] * a0 + u[1] * a1;
    amp[i | mask] = u[2] * a0 + u[3] * a1;
  };
  if (dim >= kParallelDim) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < dim; ++i) body(i);
  } else {
    for (std::ptrdiff_t i = 0; i < dim; ++i) body(i);
  }
}

void apply_cnot(std::vector<cplx>& amp, int n_qubits, int control, int target) {
  const std::ptrdiff_t dim = static_cast<std::ptrdiff_t>(amp.size());
  const std::size_t mc = qubit_mask(n_qubits, control);
  const std::size_t mt = qubit_mask(n_qubits, target);
  const auto body = [&](std::ptrdiff_t i) {
    if ((i & mc) && !(i & mt)) std::swap(amp[i], amp[i | mt]);
  };
  if (dim >= kParallelDim) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < dim; ++i) body(i);
  } else {
    for (std::ptrdiff_t i = 0; i < dim; ++i) body(i);
  }
}

std::array<cplx, 4> rotation_matrix(GateKind kind, double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  switch (kind) {
    case GateKind::RX: return {cplx(c, 0), cplx(0, -s), cplx(0, -s), cplx(c, 0)};
    case GateKind::RY: return {cplx(c, 0), cplx(-s, 0), cplx(s, 0), cplx(c, 0)};
    case GateKind::RZ: return {cplx(c, -s), cplx(0, 0), cplx(0, 0), cplx(c, s)};
    default: throw std::logic_error("rotation_matrix: not a rotation");
  }
}

void apply_resolved(std::vector<cplx>& amp, int n_qubits, const GateOp& gate,
                    double angle) {
  switch (gate.kind) {
    case GateKind::H: {
      const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
      apply_single_qubit(amp, n_qubits, gate.target,
                         {cplx(inv_sqrt2, 0), cplx(inv_sqrt2, 0),
                          cplx(inv_sqrt2, 0), cplx(-inv_sqrt2, 0)});
      break;
    }
    case GateKind::CNOT:
      apply_cnot(amp, n_qubits, gate.control, gate.target);
      break;
    default:
      apply_single_qubit(amp, n_qubits, gate.target, rotation_matrix(gate.kind, angle));
  }
}

void check_gate_indices(const GateOp& gate, int n_qubits) {
  if (gate.target < 0 || gate.target >= n_qubits)
    throw std::out_of_range("apply_gate: target out of range");
  if (gate.kind == GateKind::CNOT) {
    if (gate.control < 0 || gate.control >= n_qubits)
      throw std::out_of_range("apply_gate: control out of range");
    if (gate.control == gate.target)
      throw std::invalid_argument("apply_gate: control equals target");
  }
}

}  // namespace

StateVector StateVector::zero_state(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 12)
    throw std::invalid_argument("StateVector: n_qubits must be in [1, 12]");
  StateVector s;
  s.n_qubits = n_qubits;
  s.amplitudes.assign(std::size_t{1} << n_qubits, cplx(0, 0));
  s.amplitudes[0] = cplx(1, 0);
  return s;
}

double StateVector::norm_squared() const {
  double n = 0.0;
  for (const cplx& a : amplitudes) n += std::norm(a);
  return n;
}

StateVector apply_gate(const StateVector& state, const GateOp& gate,
                       std::optional<double> angle) {
  check_gate_indices(gate, state.n_qubits);

  double resolved = 0.0;
  if (gate.is_rotation()) {
    const bool has_constant = gate.angle && gate.angle->kind == AngleKind::Constant;
    if (angle && has_constant)
      throw std::invalid_argument("apply_gate: superfluous angle for a constant rotation");
    if (angle)
      resolved = *angle;
    else if (has_constant)
      resolved = gate.angle->value;
    else
      throw std::invalid_argument("apply_gate: missing angle for a rotation");
  } else if (angle) {
    throw std::invalid_argument("apply_gate: angle supplied for a non-rotation gate");
  }

  StateVector out = state;
  apply_resolved(out.amplitudes, out.n_qubits, gate, resolved);
  return out;
}

StateVector run_circuit(const CircuitSpec& circuit, std::span<const double> inputs,
                        std::span<const double> params) {
  if (static_cast<int>(inputs.size()) != circuit.num_inputs)
    throw std::invalid_argument("run_circuit: input vector length mismatch");
  if (static_cast<int>(params.size()) != circuit.num_params)
    throw std::invalid_argument("run_circuit: param vector length mismatch");

  StateVector state = StateVector::zero_state(circuit.n_qubits);
  for (const GateOp& gate : circuit.gates) {
    check_gate_indices(gate, state.n_qubits);
    double angle = 0.0;
    if (gate.is_rotation()) {
      if (!gate.angle) throw std::invalid_argument("run_circuit: rotation without angle source");
      const int slot = gate.angle->slot;
      switch (gate.angle->kind) {
        case AngleKind::Constant:
          angle = gate.angle->value;
          break;
        case AngleKind::InputSlot:
          if (slot < 0 || slot >= static_cast<int>(inputs.size()))
            throw std::out_of_range("run_circuit: input slot out of range");
          angle = inputs[slot];
          break;
        case AngleKind::ParamSlot:
          if (slot < 0 || slot >= static_cast<int>(params.size()))
            throw std::out_of_range("run_circuit: param slot out of range");
          angle = params[slot];
          break;
      }
    }
    apply_resolved(state.amplitudes, state.n_qubits, gate, angle);
  }
  return state;
}

std::vector<double> measurement_probabilities(const StateVector& state) {
  std::vector<double> probs(state.amplitudes.size());
  for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = std::norm(state.amplitudes[i]);
  return probs;
}

}  // namespace evoqas

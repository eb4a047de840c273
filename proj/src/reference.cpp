#include "evoqas/reference.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace evoqas::reference {

namespace {

using cplx = std::complex<double>;
using Small = std::array<cplx, 4>;  // 2x2, row-major

Small identity2() { return {cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(1, 0)}; }

Small single_qubit_matrix(GateKind kind, double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  const double h = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case GateKind::H: return {cplx(h, 0), cplx(h, 0), cplx(h, 0), cplx(-h, 0)};
    case GateKind::RX: return {cplx(c, 0), cplx(0, -s), cplx(0, -s), cplx(c, 0)};
    case GateKind::RY: return {cplx(c, 0), cplx(-s, 0), cplx(s, 0), cplx(c, 0)};
    case GateKind::RZ: return {cplx(c, -s), cplx(0, 0), cplx(0, 0), cplx(c, s)};
    default: throw std::logic_error("single_qubit_matrix: not a single-qubit gate");
  }
}

// Kronecker product over per-qubit 2x2 factors, qubit 0 leftmost (MSB).
UnitaryMatrix kron_chain(const std::vector<Small>& factors) {
  UnitaryMatrix acc{cplx(1, 0)};
  std::size_t dim = 1;
  for (const Small& f : factors) {
    UnitaryMatrix next(dim * 2 * dim * 2);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            next[(i * 2 + a) * dim * 2 + (j * 2 + b)] =
                acc[i * dim + j] * f[static_cast<std::size_t>(a) * 2 + b];
    acc = std::move(next);
    dim *= 2;
  }
  return acc;
}

void add_into(UnitaryMatrix& dst, const UnitaryMatrix& src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
}

}  // namespace

UnitaryMatrix gate_unitary(const GateOp& gate, std::optional<double> angle, int n_qubits) {
  if (gate.target < 0 || gate.target >= n_qubits)
    throw std::out_of_range("reference::gate_unitary: target out of range");

  if (gate.kind == GateKind::CNOT) {
    if (gate.control < 0 || gate.control >= n_qubits || gate.control == gate.target)
      throw std::invalid_argument("reference::gate_unitary: bad CNOT wiring");
    // |0><0|_c (x) I_t + |1><1|_c (x) X_t
    const Small proj0{cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(0, 0)};
    const Small proj1{cplx(0, 0), cplx(0, 0), cplx(0, 0), cplx(1, 0)};
    const Small pauli_x{cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0)};
    std::vector<Small> keep(n_qubits, identity2());
    keep[gate.control] = proj0;
    std::vector<Small> flip(n_qubits, identity2());
    flip[gate.control] = proj1;
    flip[gate.target] = pauli_x;
    UnitaryMatrix u = kron_chain(keep);
    add_into(u, kron_chain(flip));
    return u;
  }

  double resolved = 0.0;
  if (gate.is_rotation()) {
    if (angle)
      resolved = *angle;
    else if (gate.angle && gate.angle->kind == AngleKind::Constant)
      resolved = gate.angle->value;
    else
      throw std::invalid_argument("reference::gate_unitary: missing rotation angle");
  }
  std::vector<Small> factors(n_qubits, identity2());
  factors[gate.target] = single_qubit_matrix(gate.kind, resolved);
  return kron_chain(factors);
}

StateVector apply_gate(const StateVector& state, const GateOp& gate,
                       std::optional<double> angle) {
  const UnitaryMatrix u = gate_unitary(gate, angle, state.n_qubits);
  const std::size_t dim = state.amplitudes.size();
  StateVector out = state;
  for (std::size_t i = 0; i < dim; ++i) {
    cplx acc(0, 0);
    for (std::size_t j = 0; j < dim; ++j) acc += u[i * dim + j] * state.amplitudes[j];
    out.amplitudes[i] = acc;
  }
  return out;
}

StateVector run_circuit(const CircuitSpec& circuit, std::span<const double> inputs,
                        std::span<const double> params) {
  if (static_cast<int>(inputs.size()) != circuit.num_inputs ||
      static_cast<int>(params.size()) != circuit.num_params)
    throw std::invalid_argument("reference::run_circuit: vector length mismatch");

  StateVector state = StateVector::zero_state(circuit.n_qubits);
  for (const GateOp& gate : circuit.gates) {
    std::optional<double> angle;
    if (gate.is_rotation()) {
      switch (gate.angle->kind) {
        case AngleKind::Constant: angle = gate.angle->value; break;
        case AngleKind::InputSlot: angle = inputs[gate.angle->slot]; break;
        case AngleKind::ParamSlot: angle = params[gate.angle->slot]; break;
      }
    }
    state = reference::apply_gate(state, gate, angle);
  }
  return state;
}

}  // namespace evoqas::reference

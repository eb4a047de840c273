#include "evoqas/circuit.hpp"

#include <charconv>
#include <stdexcept>
#include <string>
#include <vector>

namespace evoqas {

namespace {

std::string shortest_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

const char* gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::CNOT: return "CNOT";
  }
  return "?";
}

void CircuitSpec::validate() const {
  if (n_qubits < 1 || n_qubits > 12)
    throw std::invalid_argument("CircuitSpec: n_qubits must be in [1, 12]");
  if (num_inputs < 0 || num_params < 0)
    throw std::invalid_argument("CircuitSpec: negative slot count");

  std::vector<int> param_uses(num_params, 0);
  for (const GateOp& g : gates) {
    if (g.target < 0 || g.target >= n_qubits)
      throw std::invalid_argument("CircuitSpec: gate target out of range");
    if (g.kind == GateKind::CNOT) {
      if (g.control < 0 || g.control >= n_qubits)
        throw std::invalid_argument("CircuitSpec: CNOT control out of range");
      if (g.control == g.target)
        throw std::invalid_argument("CircuitSpec: CNOT control equals target");
      if (g.angle.has_value())
        throw std::invalid_argument("CircuitSpec: CNOT carries an angle source");
    } else {
      if (g.control != -1)
        throw std::invalid_argument("CircuitSpec: control on a non-CNOT gate");
      if (g.is_rotation() != g.angle.has_value())
        throw std::invalid_argument("CircuitSpec: angle source present iff gate is a rotation");
    }
    if (g.angle) {
      if (g.angle->kind == AngleKind::InputSlot &&
          (g.angle->slot < 0 || g.angle->slot >= num_inputs))
        throw std::invalid_argument("CircuitSpec: input slot out of range");
      if (g.angle->kind == AngleKind::ParamSlot) {
        if (g.angle->slot < 0 || g.angle->slot >= num_params)
          throw std::invalid_argument("CircuitSpec: param slot out of range");
        ++param_uses[g.angle->slot];
      }
    }
  }
  for (int uses : param_uses)
    if (uses != 1)
      throw std::invalid_argument("CircuitSpec: each param slot must be used exactly once");
}

std::string CircuitSpec::to_text() const {
  std::string out;
  for (const GateOp& g : gates) {
    out += gate_kind_name(g.kind);
    out += ' ';
    out += std::to_string(g.target);
    if (g.kind == GateKind::CNOT) {
      out += ' ';
      out += std::to_string(g.control);
    }
    if (g.angle) {
      out += ' ';
      switch (g.angle->kind) {
        case AngleKind::InputSlot: out += "in" + std::to_string(g.angle->slot); break;
        case AngleKind::ParamSlot: out += "p" + std::to_string(g.angle->slot); break;
        case AngleKind::Constant: out += "const:" + shortest_double(g.angle->value); break;
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace evoqas

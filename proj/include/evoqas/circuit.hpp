#pragma once

#include <optional>
#include <string>
#include <vector>

namespace evoqas {

enum class GateKind { H, RX, RY, RZ, CNOT };

enum class AngleKind { Constant, InputSlot, ParamSlot };

// Where a rotation gets its angle: a literal value, a component of the input
// vector, or a component of the trainable parameter vector.
struct AngleSource {
  AngleKind kind = AngleKind::Constant;
  int slot = 0;      // InputSlot / ParamSlot
  double value = 0;  // Constant

  static AngleSource constant(double radians) { return {AngleKind::Constant, 0, radians}; }
  static AngleSource input(int slot) { return {AngleKind::InputSlot, slot, 0.0}; }
  static AngleSource param(int slot) { return {AngleKind::ParamSlot, slot, 0.0}; }

  bool operator==(const AngleSource&) const = default;
};

struct GateOp {
  GateKind kind = GateKind::H;
  int target = 0;
  int control = -1;                 // CNOT only
  std::optional<AngleSource> angle; // rotations only

  static GateOp h(int qubit) { return {GateKind::H, qubit, -1, std::nullopt}; }
  static GateOp rx(int qubit, AngleSource a) { return {GateKind::RX, qubit, -1, a}; }
  static GateOp ry(int qubit, AngleSource a) { return {GateKind::RY, qubit, -1, a}; }
  static GateOp rz(int qubit, AngleSource a) { return {GateKind::RZ, qubit, -1, a}; }
  static GateOp cnot(int control, int target) { return {GateKind::CNOT, target, control, std::nullopt}; }
  static GateOp rotation(GateKind kind, int qubit, AngleSource a) { return {kind, qubit, -1, a}; }

  bool is_rotation() const {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
  }

  bool operator==(const GateOp&) const = default;
};

// A concrete gate list with input and parameter slots. Qubit 0 is the most
// significant bit of the basis-state index throughout the project.
struct CircuitSpec {
  int n_qubits = 1;
  std::vector<GateOp> gates;
  int num_inputs = 0;
  int num_params = 0;

  // Throws std::invalid_argument on any violated invariant: qubit indices in
  // range (1..12 qubits supported), control rules, slot ranges, and each
  // ParamSlot index used exactly once.
  void validate() const;

  // One gate per line: `KIND target [control] [angle]`, with angles rendered
  // as `in<i>`, `p<i>` or `const:<value>`.
  std::string to_text() const;

  bool operator==(const CircuitSpec&) const = default;
};

const char* gate_kind_name(GateKind kind);

}  // namespace evoqas

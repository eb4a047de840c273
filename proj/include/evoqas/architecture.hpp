#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evoqas/circuit.hpp"
#include "evoqas/rng.hpp"

namespace evoqas {

enum class HChoice { WithH = 0, WithoutH = 1 };
enum class RotationAxis { RX = 0, RY = 1, RZ = 2 };
// Chain = CNOT(i, i+1) down the line; Ring = Chain plus the wrap-around
// CNOT(n-1, 0). Kept behind this enum so the entangling gate family can be
// swapped in one place.
enum class Entangler { Chain = 0, Ring = 1 };

struct VarLayerLogits {
  std::array<double, 2> entangle{};  // Chain, Ring
  std::array<double, 3> rotation{};  // RX, RY, RZ

  bool operator==(const VarLayerLogits&) const = default;
};

// Real-valued circuit representation: one logit block per architecture
// choice. Softmax sampling turns each block into a categorical draw.
struct Genotype {
  std::array<double, 2> encoding_h{};        // WithH, WithoutH
  std::array<double, 3> encoding_rotation{}; // RX, RY, RZ
  std::vector<VarLayerLogits> var_layers;

  int num_var_layers() const { return static_cast<int>(var_layers.size()); }
  int logit_count() const { return 5 + 5 * num_var_layers(); }

  bool operator==(const Genotype&) const = default;
};

// One concrete draw: the one-hot side of the representation.
struct ArchitectureSpec {
  struct Layer {
    Entangler entangler = Entangler::Chain;
    RotationAxis rotation = RotationAxis::RX;

    bool operator==(const Layer&) const = default;
  };

  HChoice h_layer = HChoice::WithH;
  RotationAxis encoding_rot = RotationAxis::RX;
  std::vector<Layer> layers;

  bool operator==(const ArchitectureSpec&) const = default;
};

// All logits i.i.d. normal(0, 1).
Genotype init_genotype(int num_var_layers, Rng& rng);

// g + sigma * eps with eps ~ normal(0, I); the input is untouched.
Genotype mutate(const Genotype& g, double sigma, Rng& rng);

// Each choice drawn independently from categorical(softmax(block)).
ArchitectureSpec sample_architecture(const Genotype& g, Rng& rng);

// Deterministic readout: highest logit per block, lowest index on ties.
ArchitectureSpec argmax_architecture(const Genotype& g);

// Gate order: optional H on every qubit; encoding rotations feeding InputSlot
// i on qubit i; then per variational layer the entangler followed by
// rotations on ParamSlot layer*n_qubits + i.
CircuitSpec decode(const ArchitectureSpec& a, int n_qubits);

// 6 * 6^num_var_layers distinct configurations.
std::uint64_t enumerate_search_space(int num_var_layers);

// Numerically stable softmax, exposed for the sampling tests.
std::vector<double> softmax(std::span<const double> logits);

// JSON persistence: {"encoding_layer": [x1, x2], "variational_layer":
// [[y1, y2], ...]}. Genotypes round-trip bit-exactly; architectures use the
// one-hot form of the same layout.
std::string genotype_to_json(const Genotype& g);
Genotype genotype_from_json(std::string_view text);
std::string architecture_to_json(const ArchitectureSpec& a);
ArchitectureSpec architecture_from_json(std::string_view text);

}  // namespace evoqas

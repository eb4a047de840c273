#include "evoqas/architecture.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace evoqas {

namespace {

template <std::size_t N>
int sample_block(const std::array<double, N>& logits, Rng& rng) {
  const auto probs = softmax(std::span<const double>(logits.data(), logits.size()));
  return rng.categorical(probs);
}

template <std::size_t N>
int argmax_block(const std::array<double, N>& logits) {
  return static_cast<int>(std::max_element(logits.begin(), logits.end()) - logits.begin());
}

GateKind rotation_gate(RotationAxis axis) {
  switch (axis) {
    case RotationAxis::RX: return GateKind::RX;
    case RotationAxis::RY: return GateKind::RY;
    case RotationAxis::RZ: return GateKind::RZ;
  }
  throw std::logic_error("rotation_gate: bad axis");
}

nlohmann::json blocks_to_json(const Genotype& g) {
  nlohmann::json j;
  j["encoding_layer"] = {g.encoding_h, g.encoding_rotation};
  auto& layers = j["variational_layer"] = nlohmann::json::array();
  for (const VarLayerLogits& l : g.var_layers) layers.push_back({l.entangle, l.rotation});
  return j;
}

template <std::size_t N>
std::array<double, N> array_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != N)
    throw std::invalid_argument("genotype json: bad logit block size");
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = j[i].get<double>();
  return out;
}

}  // namespace

std::vector<double> softmax(std::span<const double> logits) {
  if (logits.empty()) throw std::invalid_argument("softmax: empty logits");
  const double m = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - m);
    sum += out[i];
  }
  for (double& p : out) p /= sum;
  return out;
}

Genotype init_genotype(int num_var_layers, Rng& rng) {
  if (num_var_layers < 0)
    throw std::invalid_argument("init_genotype: negative layer count");
  Genotype g;
  for (double& v : g.encoding_h) v = rng.normal();
  for (double& v : g.encoding_rotation) v = rng.normal();
  g.var_layers.resize(num_var_layers);
  for (VarLayerLogits& l : g.var_layers) {
    for (double& v : l.entangle) v = rng.normal();
    for (double& v : l.rotation) v = rng.normal();
  }
  return g;
}

Genotype mutate(const Genotype& g, double sigma, Rng& rng) {
  if (sigma < 0.0) throw std::invalid_argument("mutate: negative sigma");
  Genotype out = g;
  for (double& v : out.encoding_h) v += sigma * rng.normal();
  for (double& v : out.encoding_rotation) v += sigma * rng.normal();
  for (VarLayerLogits& l : out.var_layers) {
    for (double& v : l.entangle) v += sigma * rng.normal();
    for (double& v : l.rotation) v += sigma * rng.normal();
  }
  return out;
}

ArchitectureSpec sample_architecture(const Genotype& g, Rng& rng) {
  ArchitectureSpec a;
  a.h_layer = static_cast<HChoice>(sample_block(g.encoding_h, rng));
  a.encoding_rot = static_cast<RotationAxis>(sample_block(g.encoding_rotation, rng));
  a.layers.reserve(g.var_layers.size());
  for (const VarLayerLogits& l : g.var_layers)
    a.layers.push_back({static_cast<Entangler>(sample_block(l.entangle, rng)),
                        static_cast<RotationAxis>(sample_block(l.rotation, rng))});
  return a;
}

ArchitectureSpec argmax_architecture(const Genotype& g) {
  ArchitectureSpec a;
  a.h_layer = static_cast<HChoice>(argmax_block(g.encoding_h));
  a.encoding_rot = static_cast<RotationAxis>(argmax_block(g.encoding_rotation));
  a.layers.reserve(g.var_layers.size());
  for (const VarLayerLogits& l : g.var_layers)
    a.layers.push_back({static_cast<Entangler>(argmax_block(l.entangle)),
                        static_cast<RotationAxis>(argmax_block(l.rotation))});
  return a;
}

CircuitSpec decode(const ArchitectureSpec& a, int n_qubits) {
  if (n_qubits < 1 || n_qubits > 12)
    throw std::invalid_argument("decode: n_qubits must be in [1, 12]");
  if (!a.layers.empty() && n_qubits < 2)
    throw std::invalid_argument("decode: entangling layers need at least 2 qubits");

  CircuitSpec c;
  c.n_qubits = n_qubits;
  c.num_inputs = n_qubits;
  c.num_params = n_qubits * static_cast<int>(a.layers.size());

  if (a.h_layer == HChoice::WithH)
    for (int q = 0; q < n_qubits; ++q) c.gates.push_back(GateOp::h(q));
  for (int q = 0; q < n_qubits; ++q)
    c.gates.push_back(GateOp::rotation(rotation_gate(a.encoding_rot), q, AngleSource::input(q)));

  for (std::size_t j = 0; j < a.layers.size(); ++j) {
    const ArchitectureSpec::Layer& layer = a.layers[j];
    for (int q = 0; q + 1 < n_qubits; ++q) c.gates.push_back(GateOp::cnot(q, q + 1));
    if (layer.entangler == Entangler::Ring)
      c.gates.push_back(GateOp::cnot(n_qubits - 1, 0));
    for (int q = 0; q < n_qubits; ++q)
      c.gates.push_back(GateOp::rotation(rotation_gate(layer.rotation), q,
                                         AngleSource::param(static_cast<int>(j) * n_qubits + q)));
  }
  c.validate();
  return c;
}

std::uint64_t enumerate_search_space(int num_var_layers) {
  if (num_var_layers < 0)
    throw std::invalid_argument("enumerate_search_space: negative layer count");
  if (num_var_layers > 23)
    throw std::overflow_error("enumerate_search_space: count exceeds 64 bits");
  std::uint64_t total = 6;
  for (int i = 0; i < num_var_layers; ++i) total *= 6;
  return total;
}

std::string genotype_to_json(const Genotype& g) { return blocks_to_json(g).dump(); }

Genotype genotype_from_json(std::string_view text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const auto& enc = j.at("encoding_layer");
  if (!enc.is_array() || enc.size() != 2)
    throw std::invalid_argument("genotype json: encoding_layer must hold two blocks");
  Genotype g;
  g.encoding_h = array_from_json<2>(enc[0]);
  g.encoding_rotation = array_from_json<3>(enc[1]);
  for (const auto& layer : j.at("variational_layer")) {
    if (!layer.is_array() || layer.size() != 2)
      throw std::invalid_argument("genotype json: variational layer must hold two blocks");
    g.var_layers.push_back({array_from_json<2>(layer[0]), array_from_json<3>(layer[1])});
  }
  return g;
}

std::string architecture_to_json(const ArchitectureSpec& a) {
  auto one_hot = [](int index, int size) {
    std::vector<int> v(size, 0);
    v[index] = 1;
    return v;
  };
  nlohmann::json j;
  j["encoding_layer"] = {one_hot(static_cast<int>(a.h_layer), 2),
                         one_hot(static_cast<int>(a.encoding_rot), 3)};
  auto& layers = j["variational_layer"] = nlohmann::json::array();
  for (const ArchitectureSpec::Layer& l : a.layers)
    layers.push_back({one_hot(static_cast<int>(l.entangler), 2),
                      one_hot(static_cast<int>(l.rotation), 3)});
  return j.dump();
}

ArchitectureSpec architecture_from_json(std::string_view text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  auto hot_index = [](const nlohmann::json& block, int size) {
    if (!block.is_array() || static_cast<int>(block.size()) != size)
      throw std::invalid_argument("architecture json: bad one-hot block size");
    int index = -1;
    for (int i = 0; i < size; ++i) {
      const int v = block[i].get<int>();
      if (v == 1 && index == -1)
        index = i;
      else if (v != 0)
        throw std::invalid_argument("architecture json: block is not one-hot");
    }
    if (index == -1) throw std::invalid_argument("architecture json: block is not one-hot");
    return index;
  };
  const auto& enc = j.at("encoding_layer");
  ArchitectureSpec a;
  a.h_layer = static_cast<HChoice>(hot_index(enc.at(0), 2));
  a.encoding_rot = static_cast<RotationAxis>(hot_index(enc.at(1), 3));
  for (const auto& layer : j.at("variational_layer"))
    a.layers.push_back({static_cast<Entangler>(hot_index(layer.at(0), 2)),
                        static_cast<RotationAxis>(hot_index(layer.at(1), 3))});
  return a;
}

}  // namespace evoqas

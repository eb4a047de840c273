#include "evoqas/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evoqas {

namespace {

struct ForwardTrace {
  // post-activation output of every layer, starting with the input itself
  std::vector<std::vector<double>> activations;
  // pre-activation values per non-input layer
  std::vector<std::vector<double>> pre;
  std::array<double, 2> probs{};
};

std::array<double, 2> softmax2(double z0, double z1) {
  const double m = std::max(z0, z1);
  const double e0 = std::exp(z0 - m);
  const double e1 = std::exp(z1 - m);
  return {e0 / (e0 + e1), e1 / (e0 + e1)};
}

ForwardTrace run_forward(const MlpSpec& m, std::span<const double> x) {
  if (static_cast<int>(x.size()) != m.input_count())
    throw std::invalid_argument("mlp_forward: input length mismatch");

  ForwardTrace t;
  t.activations.emplace_back(x.begin(), x.end());
  const int layers = static_cast<int>(m.layer_sizes.size()) - 1;
  std::size_t offset = 0;
  for (int l = 0; l < layers; ++l) {
    const int in = m.layer_sizes[l];
    const int out = m.layer_sizes[l + 1];
    const std::span<const double> w(m.params.data() + offset, static_cast<std::size_t>(out) * in);
    const std::span<const double> b(m.params.data() + offset + static_cast<std::size_t>(out) * in,
                                    out);
    offset += static_cast<std::size_t>(out) * in + out;

    std::vector<double> z(out);
    const std::vector<double>& prev = t.activations.back();
    for (int r = 0; r < out; ++r) {
      double acc = b[r];
      for (int c = 0; c < in; ++c) acc += w[static_cast<std::size_t>(r) * in + c] * prev[c];
      z[r] = acc;
    }
    t.pre.push_back(z);
    if (l + 1 < layers && m.activation == Activation::ReLU)
      for (double& v : z) v = std::max(v, 0.0);
    t.activations.push_back(std::move(z));
  }
  const std::vector<double>& logits = t.activations.back();
  t.probs = softmax2(logits[0], logits[1]);
  return t;
}

}  // namespace

int MlpSpec::param_count_for(std::span<const int> layer_sizes) {
  int total = 0;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l)
    total += layer_sizes[l] * layer_sizes[l + 1] + layer_sizes[l + 1];
  return total;
}

void MlpSpec::validate() const {
  if (layer_sizes.size() < 2) throw std::invalid_argument("MlpSpec: need at least two layers");
  if (layer_sizes.back() != 2) throw std::invalid_argument("MlpSpec: output layer size must be 2");
  for (int s : layer_sizes)
    if (s < 1) throw std::invalid_argument("MlpSpec: layer sizes must be positive");
  if (static_cast<int>(params.size()) != param_count())
    throw std::invalid_argument("MlpSpec: parameter vector length mismatch");
}

std::array<double, 2> mlp_forward(const MlpSpec& m, std::span<const double> x) {
  m.validate();
  return run_forward(m, x).probs;
}

void mlp_log_prob_gradient(const MlpSpec& m, std::span<const double> x, int y,
                           std::span<double> grad) {
  m.validate();
  if (y != 0 && y != 1) throw std::invalid_argument("mlp_log_prob_gradient: y must be 0 or 1");
  if (static_cast<int>(grad.size()) != m.param_count())
    throw std::invalid_argument("mlp_log_prob_gradient: gradient length mismatch");

  const ForwardTrace t = run_forward(m, x);
  const int layers = static_cast<int>(m.layer_sizes.size()) - 1;

  // d log p_y / d logits = onehot(y) - p
  std::vector<double> delta{(y == 0 ? 1.0 : 0.0) - t.probs[0],
                            (y == 1 ? 1.0 : 0.0) - t.probs[1]};

  std::vector<std::size_t> offsets(layers);
  std::size_t offset = 0;
  for (int l = 0; l < layers; ++l) {
    offsets[l] = offset;
    offset += static_cast<std::size_t>(m.layer_sizes[l]) * m.layer_sizes[l + 1] +
              m.layer_sizes[l + 1];
  }

  for (int l = layers - 1; l >= 0; --l) {
    const int in = m.layer_sizes[l];
    const int out = m.layer_sizes[l + 1];
    const std::vector<double>& prev = t.activations[l];
    double* wg = grad.data() + offsets[l];
    double* bg = wg + static_cast<std::size_t>(out) * in;
    for (int r = 0; r < out; ++r) {
      for (int c = 0; c < in; ++c) wg[static_cast<std::size_t>(r) * in + c] = delta[r] * prev[c];
      bg[r] = delta[r];
    }
    if (l == 0) break;

    const std::span<const double> w(m.params.data() + offsets[l],
                                    static_cast<std::size_t>(out) * in);
    std::vector<double> next(in, 0.0);
    for (int c = 0; c < in; ++c) {
      double acc = 0.0;
      for (int r = 0; r < out; ++r) acc += w[static_cast<std::size_t>(r) * in + c] * delta[r];
      if (m.activation == Activation::ReLU && t.pre[l - 1][c] <= 0.0) acc = 0.0;
      next[c] = acc;
    }
    delta = std::move(next);
  }
}

std::vector<int> mlp_match_param_count(int target_d, int n_inputs) {
  if (n_inputs < 1) throw std::invalid_argument("mlp_match_param_count: need inputs");
  if (target_d < n_inputs + 2)
    throw std::invalid_argument("mlp_match_param_count: target too small for any hidden width");

  // params(h) = h * (n_inputs + 3) + 2, strictly increasing in h
  int best_h = 1;
  int best_dist = std::abs((n_inputs + 3) + 2 - target_d);
  for (int h = 2;; ++h) {
    const int count = h * (n_inputs + 3) + 2;
    const int dist = std::abs(count - target_d);
    if (dist < best_dist) {
      best_h = h;
      best_dist = dist;
    }
    if (count >= target_d) break;
  }
  return {n_inputs, best_h, 2};
}

MlpModel::MlpModel(std::vector<int> layer_sizes, Activation activation)
    : layer_sizes_(std::move(layer_sizes)), activation_(activation) {
  MlpSpec probe{layer_sizes_, activation_, std::vector<double>(param_count(), 0.0)};
  probe.validate();
}

MlpSpec MlpModel::with_params(std::span<const double> theta) const {
  if (static_cast<int>(theta.size()) != param_count())
    throw std::invalid_argument("MlpModel: theta length mismatch");
  return {layer_sizes_, activation_, std::vector<double>(theta.begin(), theta.end())};
}

std::array<double, 2> MlpModel::forward(std::span<const double> x,
                                        std::span<const double> theta) const {
  return run_forward(with_params(theta), x).probs;
}

void MlpModel::log_prob_gradient(std::span<const double> x, int y, std::span<const double> theta,
                                 std::span<double> grad) const {
  mlp_log_prob_gradient(with_params(theta), x, y, grad);
}

}  // namespace evoqas

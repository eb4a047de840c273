#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

namespace evoqas {

enum class Activation { ReLU, Identity };

// Feed-forward net ending in a 2-way softmax. Parameters are stored flat,
// layer by layer: weight matrix row-major (out x in), then biases. The ReLU
// subgradient at 0 is 0.
struct MlpSpec {
  std::vector<int> layer_sizes;  // input, hidden..., 2
  Activation activation = Activation::ReLU;
  std::vector<double> params;

  int param_count() const { return param_count_for(layer_sizes); }
  int input_count() const { return layer_sizes.front(); }

  static int param_count_for(std::span<const int> layer_sizes);

  // Throws std::invalid_argument on bad shapes (output size must be 2,
  // params length must match the layer sizes).
  void validate() const;
};

// Class probabilities from the stored parameters.
std::array<double, 2> mlp_forward(const MlpSpec& m, std::span<const double> x);

// Exact backprop gradient of log p(y|x) with respect to the flattened
// parameters, in storage order.
void mlp_log_prob_gradient(const MlpSpec& m, std::span<const double> x, int y,
                           std::span<double> grad);

// Layer sizes {n_inputs, h, 2} with the hidden width h >= 1 whose parameter
// count is closest to target_d (smaller h on ties). Throws when
// target_d < n_inputs + 2.
std::vector<int> mlp_match_param_count(int target_d, int n_inputs);

// Adapter giving the MLP the same model surface the Fisher and effective
// dimension routines use for quantum circuits; theta is the flattened
// parameter vector, sampled from the [-1, 1]^d box.
class MlpModel {
 public:
  MlpModel(std::vector<int> layer_sizes, Activation activation);

  int param_count() const { return MlpSpec::param_count_for(layer_sizes_); }
  int input_count() const { return layer_sizes_.front(); }
  std::pair<double, double> theta_domain() const { return {-1.0, 1.0}; }

  std::array<double, 2> forward(std::span<const double> x, std::span<const double> theta) const;
  void log_prob_gradient(std::span<const double> x, int y, std::span<const double> theta,
                         std::span<double> grad) const;

 private:
  MlpSpec with_params(std::span<const double> theta) const;

  std::vector<int> layer_sizes_;
  Activation activation_;
};

}  // namespace evoqas

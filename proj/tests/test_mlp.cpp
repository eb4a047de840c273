#include <doctest.h>

#include <cmath>

#include "evoqas/mlp.hpp"
#include "evoqas/rng.hpp"
#include "oracles.hpp"

using namespace evoqas;

namespace {

MlpSpec random_spec(std::vector<int> sizes, Activation act, std::uint64_t seed) {
  MlpSpec m{std::move(sizes), act, {}};
  m.params.resize(m.param_count());
  Rng rng(seed);
  for (double& v : m.params) v = rng.uniform(-1.0, 1.0);
  return m;
}

// independent dense forward: explicit matrix products, no shared code
std::array<double, 2> forward_oracle(const MlpSpec& m, std::span<const double> x) {
  std::vector<double> v(x.begin(), x.end());
  std::size_t off = 0;
  for (std::size_t l = 0; l + 1 < m.layer_sizes.size(); ++l) {
    const int in = m.layer_sizes[l], out = m.layer_sizes[l + 1];
    std::vector<double> next(out);
    for (int r = 0; r < out; ++r) {
      double acc = m.params[off + static_cast<std::size_t>(out) * in + r];  // bias
      for (int c = 0; c < in; ++c) acc += m.params[off + static_cast<std::size_t>(r) * in + c] * v[c];
      next[r] = acc;
    }
    off += static_cast<std::size_t>(out) * in + out;
    if (l + 2 < m.layer_sizes.size() && m.activation == Activation::ReLU)
      for (double& z : next) z = std::max(z, 0.0);
    v = std::move(next);
  }
  const double e0 = std::exp(v[0]), e1 = std::exp(v[1]);
  return {e0 / (e0 + e1), e1 / (e0 + e1)};
}

}  // namespace

TEST_CASE("all-zero parameters give a fair coin") {
  MlpSpec m{{4, 3, 2}, Activation::ReLU, {}};
  m.params.assign(m.param_count(), 0.0);
  const auto p = mlp_forward(m, std::vector<double>{0.3, -0.2, 1.0, 0.5});
  CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("identity activation is linear in the first-layer weights") {
  MlpSpec m{{2, 2, 2}, Activation::Identity, {}};
  m.params.assign(m.param_count(), 0.0);
  // first layer w = [[1, 0], [0, 1]], second layer picks unit 0 into logit 0
  m.params[0] = 1.0;
  m.params[3] = 1.0;
  m.params[6] = 1.0;  // second-layer weight (0,0)
  const std::vector<double> x{0.4, -0.7};

  auto logit_gap = [&](double scale) {
    MlpSpec scaled = m;
    for (int i = 0; i < 4; ++i) scaled.params[i] *= scale;
    const auto p = mlp_forward(scaled, x);
    return std::log(p[0] / p[1]);
  };
  CHECK(logit_gap(2.0) == doctest::Approx(2.0 * logit_gap(1.0)).epsilon(1e-12));
}

TEST_CASE("forward matches a hand-rolled dense oracle") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    for (Activation act : {Activation::ReLU, Activation::Identity}) {
      const MlpSpec m = random_spec({4, 6, 2}, act, seed);
      Rng rng(seed + 50);
      std::vector<double> x(4);
      for (double& v : x) v = rng.normal();
      const auto got = mlp_forward(m, x);
      const auto want = forward_oracle(m, x);
      CHECK(std::abs(got[0] - want[0]) < 1e-12);
      CHECK(std::abs(got[1] - want[1]) < 1e-12);
    }
  }
}

TEST_CASE("backprop gradient matches finite differences on a 4-16-2 ReLU net") {
  const MlpSpec m = random_spec({4, 16, 2}, Activation::ReLU, 7);
  Rng rng(8);
  std::vector<double> x(4);
  for (double& v : x) v = rng.normal();

  for (int y = 0; y < 2; ++y) {
    std::vector<double> grad(m.param_count());
    mlp_log_prob_gradient(m, x, y, grad);

    MlpSpec shifted = m;
    for (int j = 0; j < m.param_count(); ++j) {
      const double saved = shifted.params[j];
      const double h = 1e-6;
      shifted.params[j] = saved + h;
      const double plus = std::log(mlp_forward(shifted, x)[y]);
      shifted.params[j] = saved - h;
      const double minus = std::log(mlp_forward(shifted, x)[y]);
      shifted.params[j] = saved;
      CHECK(std::abs(grad[j] - (plus - minus) / (2.0 * h)) < 1e-6);
    }
  }
}

TEST_CASE("gradient at zero parameters: output bias of the observed class is 1/2") {
  MlpSpec m{{4, 2, 2}, Activation::Identity, {}};
  m.params.assign(m.param_count(), 0.0);
  const std::vector<double> x{1.0, -1.0, 0.5, 2.0};
  std::vector<double> grad(m.param_count());
  for (int y = 0; y < 2; ++y) {
    mlp_log_prob_gradient(m, x, y, grad);
    const int bias_index = m.param_count() - 2 + y;
    CHECK(grad[bias_index] == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("score identity holds for the mlp") {
  const MlpSpec m = random_spec({3, 5, 2}, Activation::ReLU, 9);
  Rng rng(10);
  std::vector<double> x(3);
  for (double& v : x) v = rng.normal();
  const auto p = mlp_forward(m, x);
  std::vector<double> g0(m.param_count()), g1(m.param_count());
  mlp_log_prob_gradient(m, x, 0, g0);
  mlp_log_prob_gradient(m, x, 1, g1);
  for (int j = 0; j < m.param_count(); ++j)
    CHECK(std::abs(p[0] * g0[j] + p[1] * g1[j]) < 1e-8);
}

TEST_CASE("mlp_match_param_count picks the closest single hidden layer") {
  CHECK(mlp_match_param_count(8, 4) == std::vector<int>{4, 1, 2});   // 9 params, closest
  CHECK(mlp_match_param_count(16, 4) == std::vector<int>{4, 2, 2});  // exactly 16
  CHECK(MlpSpec::param_count_for(std::vector<int>{4, 2, 2}) == 16);

  int last = 0;
  for (int h = 1; h <= 6; ++h) {
    const int count = MlpSpec::param_count_for(std::vector<int>{4, h, 2});
    CHECK(count > last);
    last = count;
  }
  CHECK_THROWS_AS(mlp_match_param_count(5, 4), std::invalid_argument);
}

TEST_CASE("the mlp adapter plugs into the shared model surface") {
  const MlpModel model({4, 2, 2}, Activation::Identity);
  CHECK(model.param_count() == 16);
  CHECK(model.input_count() == 4);
  CHECK(model.theta_domain() == std::pair<double, double>{-1.0, 1.0});

  Rng rng(11);
  std::vector<double> theta(model.param_count());
  for (double& v : theta) v = rng.uniform(-1.0, 1.0);
  const std::vector<double> x{0.1, 0.2, 0.3, 0.4};
  const auto p = model.forward(x, theta);
  CHECK(p[0] + p[1] == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<double> grad(model.param_count());
  model.log_prob_gradient(x, 0, theta, grad);  // same path as mlp_log_prob_gradient
  std::vector<double> direct(model.param_count());
  mlp_log_prob_gradient(MlpSpec{{4, 2, 2}, Activation::Identity, theta}, x, 0, direct);
  CHECK(grad == direct);
}

#pragma once

#include <cstdint>
#include <exception>
#include <string>
#include <vector>

#include "evoqas/effective_dimension.hpp"
#include "evoqas/fisher.hpp"
#include "evoqas/rng.hpp"

namespace evoqas {

struct EdSweepRow {
  int n = 0;
  double effective_dim = 0.0;
  double normalized = 0.0;  // effective_dim / d
  bool ok = true;           // false when kappa <= 1 for this n (row skipped)
};

// One effective dimension per dataset size, all sharing the same seed so the
// theta and Fisher draws are common across n and only kappa moves.
template <class Model>
std::vector<EdSweepRow> ed_sweep(const Model& model, std::span<const int> n_list, double gamma,
                                 int num_theta_samples, int k, std::uint64_t seed) {
  std::vector<EdSweepRow> rows;
  rows.reserve(n_list.size());
  const int d = model.param_count();
  for (int n : n_list) {
    EdSweepRow row;
    row.n = n;
    if (n <= 1 || kappa_for(gamma, n) <= 1.0) {
      row.ok = false;
    } else {
      const auto res = effective_dimension(model, gamma, n, num_theta_samples, k, seed);
      row.effective_dim = res.value;
      row.normalized = d > 0 ? res.value / static_cast<double>(d) : 0.0;
    }
    rows.push_back(row);
  }
  return rows;
}

struct SpectrumResult {
  std::string model_id;
  int size = 0;  // qubit count for circuits, input size for classical nets
  int d = 0;
  // eigenvalues of the trace-normalized Fisher samples, grouped by sample and
  // ascending within each group
  std::vector<double> eigenvalues;
  double frac_below = 0.0;  // fraction of eigenvalues below threshold * lambda_max
};

double fraction_below(std::span<const double> eigenvalues, double threshold);

inline constexpr double kSpectrumThreshold = 1e-2;

// All Fisher eigenvalues of a model across sampled theta. The samples share
// the per-index stream derivation with effective_dimension, so a spectrum at
// the same seed sees the same Fisher draws.
template <class Model>
SpectrumResult fisher_spectrum(std::string model_id, int size, const Model& model,
                               int num_theta_samples, int k, std::uint64_t seed) {
  SpectrumResult out;
  out.model_id = std::move(model_id);
  out.size = size;
  out.d = model.param_count();
  if (out.d == 0) return out;

  const auto [lo, hi] = model.theta_domain();
  std::vector<FisherSample> samples(num_theta_samples);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < num_theta_samples; ++s) {
    try {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
      std::vector<double> theta(out.d);
      for (double& t : theta) t = rng.uniform(lo, hi);
      samples[s] = empirical_fisher(model, theta, k, rng);
    } catch (...) {
#pragma omp critical(evoqas_spectrum_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  double total_trace = 0.0;
  for (const FisherSample& s : samples) total_trace += s.trace;

  std::vector<std::vector<double>> spectra(num_theta_samples);
  if (total_trace > 0.0) {
    const std::vector<Matrix> normalized = normalize_fisher(samples, out.d);
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < num_theta_samples; ++s) spectra[s] = eigenspectrum(normalized[s]);
  } else {
    for (auto& sp : spectra) sp.assign(out.d, 0.0);  // degenerate model
  }

  out.eigenvalues.reserve(static_cast<std::size_t>(num_theta_samples) * out.d);
  for (const auto& sp : spectra)
    out.eigenvalues.insert(out.eigenvalues.end(), sp.begin(), sp.end());
  out.frac_below = fraction_below(out.eigenvalues, kSpectrumThreshold);
  return out;
}

}  // namespace evoqas

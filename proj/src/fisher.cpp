#include "evoqas/fisher.hpp"

namespace evoqas {

std::vector<Matrix> normalize_fisher(std::span<const FisherSample> samples, int d) {
  if (samples.empty()) throw std::invalid_argument("normalize_fisher: no samples");
  if (d < 1) throw std::invalid_argument("normalize_fisher: d must be >= 1");

  double total_trace = 0.0;
  for (const FisherSample& s : samples) {
    if (s.matrix.size() != d)
      throw std::invalid_argument("normalize_fisher: sample dimension mismatch");
    total_trace += s.trace;
  }
  if (total_trace <= 0.0)
    throw std::domain_error("normalize_fisher: all Fisher traces are zero");

  const double factor = static_cast<double>(d) * static_cast<double>(samples.size()) / total_trace;
  std::vector<Matrix> out;
  out.reserve(samples.size());
  for (const FisherSample& s : samples) out.push_back(s.matrix.scaled(factor));
  return out;
}

std::vector<double> eigenspectrum(const Matrix& matrix) {
  return symmetric_eigenvalues(matrix);
}

}  // namespace evoqas

#include "evoqas/analysis.hpp"

#include <algorithm>

namespace evoqas {

double fraction_below(std::span<const double> eigenvalues, double threshold) {
  if (eigenvalues.empty()) return 0.0;
  const double lambda_max = *std::max_element(eigenvalues.begin(), eigenvalues.end());
  const double cut = threshold * lambda_max;
  std::size_t below = 0;
  for (double v : eigenvalues)
    if (v < cut) ++below;
  return static_cast<double>(below) / static_cast<double>(eigenvalues.size());
}

}  // namespace evoqas

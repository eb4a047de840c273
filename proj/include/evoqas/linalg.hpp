#pragma once

#include <span>
#include <vector>

namespace evoqas {

// Dense square matrix, row-major. Sized for the Fisher matrices this project
// produces (d up to a few dozen), not for general linear algebra.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

  int size() const { return n_; }
  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  std::span<const double> data() const { return a_; }
  std::span<double> data() { return a_; }

  double trace() const;
  double max_abs_asymmetry() const;
  double frobenius_norm() const;
  void scale(double c);
  Matrix scaled(double c) const;

  static Matrix identity(int n);

  bool operator==(const Matrix&) const = default;

 private:
  int n_ = 0;
  std::vector<double> a_;
};

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k is the eigenvector of values[k]
};

// Cyclic Jacobi eigendecomposition of a real symmetric matrix.
// Throws std::invalid_argument if the input asymmetry exceeds `sym_tol`.
SymmetricEigen jacobi_eigen(const Matrix& m, double sym_tol = 1e-10);

// Eigenvalues only, ascending.
std::vector<double> symmetric_eigenvalues(const Matrix& m, double sym_tol = 1e-10);

}  // namespace evoqas

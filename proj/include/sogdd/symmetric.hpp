#pragma once

#include <span>
#include <vector>

namespace sogdd {

/// Dense n x n matrix intended to hold symmetric data (row-major storage).
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(int n = 0) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}
  SymmetricMatrix(int n, std::vector<double> rowmajor);

  static SymmetricMatrix identity(int n);
  static SymmetricMatrix diagonal(std::span<const double> values);

  int size() const noexcept { return n_; }
  double operator()(int r, int c) const noexcept { return a_[idx(r, c)]; }
  double& operator()(int r, int c) noexcept { return a_[idx(r, c)]; }

  double trace() const noexcept;
  double frobenius_norm() const noexcept;
  /// max |a_ij - a_ji| <= tol * max(1e-300, max |a_ij|)
  bool is_symmetric(double relative_tol) const noexcept;

 private:
  std::size_t idx(int r, int c) const noexcept {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(c);
  }
  int n_;
  std::vector<double> a_;
};

/// Eigenvalues (ascending) of a symmetric matrix by cyclic Jacobi rotations,
/// iterated until the off-diagonal Frobenius norm falls below
/// 1e-12 times the matrix norm.
std::vector<double> jacobi_eigenvalues(const SymmetricMatrix& m);

/// Determinant from an unpivoted LDL^T factorisation. A non-positive pivot
/// (the matrix is singular to working precision) yields 0.
double ldlt_determinant(const SymmetricMatrix& m);

}  // namespace sogdd

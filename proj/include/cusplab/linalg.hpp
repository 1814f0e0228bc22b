#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cusplab/real.hpp"

namespace cusplab {

/// Small dense row-major matrix over Real. Sizes here are at most about
/// 8x8, so every algorithm is the plain textbook one.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(int rows, int cols);

  static RealMatrix identity(int n);
  static RealMatrix diagonal(std::span<const Real> d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Real& operator()(int i, int j) { return data_[index(i, j)]; }
  const Real& operator()(int i, int j) const { return data_[index(i, j)]; }

  RealMatrix transpose() const;
  std::vector<Real> column(int j) const;

  friend RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);
  friend std::vector<Real> operator*(const RealMatrix& a, std::span<const Real> v);
  friend bool operator==(const RealMatrix& a, const RealMatrix& b) = default;

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * cols_ + j; }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Real> data_;
};

std::vector<Real> to_real(const IntVector& v);

Real dot(std::span<const Real> a, std::span<const Real> b);
Real squared_norm(std::span<const Real> a);

/// v^T M v.
Real quadratic_value(const RealMatrix& m, std::span<const Real> v);
Real quadratic_value(const RealMatrix& m, const IntVector& v);

/// Lower-triangular L with M = L L^T. Throws NumericalBreakdown if a pivot is
/// not strictly positive.
RealMatrix cholesky_lower(const RealMatrix& m);

/// Determinant by LU with partial pivoting.
Real determinant(const RealMatrix& m);

/// Inverse by Gauss-Jordan with partial pivoting. Throws NumericalBreakdown
/// when a pivot vanishes at working precision.
RealMatrix inverse(const RealMatrix& m);

/// Eigenvalues of a symmetric matrix (cyclic Jacobi), ascending.
std::vector<Real> symmetric_eigenvalues(const RealMatrix& m);

/// Solves L x = b for lower-triangular L.
std::vector<Real> solve_lower(const RealMatrix& l, std::span<const Real> b);

}  // namespace cusplab

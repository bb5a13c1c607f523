#pragma once

#include <cstddef>
#include <vector>

namespace rkcontract {

/// Dense row-major matrix of doubles. Sized for the small stage-count
/// matrices of this library; no attempt at BLAS-style performance.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols, 0.0) {}

  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  double& operator()(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  /// Max absolute row sum.
  double norm_inf() const;
  /// Max |a_ij - a_ji| over all pairs; 0 for a perfectly symmetric matrix.
  double asymmetry() const;

  std::vector<std::vector<double>> to_rows() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> e_;
};

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// ascending. The rotation update keeps tiny eigenvalues accurate in
/// absolute terms, which the contractivity certificates rely on near
/// the PSD boundary. Deterministic for a fixed input.
std::vector<double> symmetric_eigenvalues(const Matrix& m);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Matrix& m);

// Small helpers on coordinate vectors (std::vector<double>).
double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);   // squared Euclidean norm
double norm(const std::vector<double>& a);
std::vector<double> add(const std::vector<double>& a, const std::vector<double>& b);
std::vector<double> sub(const std::vector<double>& a, const std::vector<double>& b);
std::vector<double> scale(const std::vector<double>& a, double s);
/// a + s*b
std::vector<double> axpy(const std::vector<double>& a, double s, const std::vector<double>& b);

}  // namespace rkcontract

#pragma once

#include <string>
#include <vector>

#include "rkcontract/linalg.hpp"

namespace rkcontract {

/// Absolute tolerance on |sum(b) - 1| accepted at construction.
inline constexpr double kConsistencyTol = 1e-12;

/// Coefficients a_ij and weights b_j of an s-stage Runge-Kutta method.
/// Immutable after construction; construction validates consistency
/// (weights sum to one) and detects explicitness (strictly lower
/// triangular a). Implicit tableaux are accepted: the contractivity
/// certificate does not require explicitness, only the integrator does.
class ButcherTableau {
 public:
  ButcherTableau(Matrix a, std::vector<double> b);

  int stages() const { return s_; }
  const Matrix& a() const { return a_; }
  const std::vector<double>& b() const { return b_; }
  double a(int i, int j) const { return a_(i, j); }
  double b(int i) const { return b_[i]; }
  bool is_explicit() const { return explicit_; }
  bool all_weights_positive() const;
  bool all_weights_nonnegative() const;

  static ButcherTableau euler();
  /// Two-stage second-order scheme y1 = y0 + h f(y0 + (h/2) f(y0)).
  static ButcherTableau runge();
  /// Two-stage first-order scheme, b = {1/2, 1/2}, a21 = 1/2.
  static ButcherTableau two_stage_averaged();

 private:
  int s_;
  Matrix a_;
  std::vector<double> b_;
  bool explicit_;
};

/// Validating constructor taking plain nested vectors.
ButcherTableau build_tableau(const std::vector<std::vector<double>>& a,
                             const std::vector<double>& b);

/// Explicit first-order scheme with a_ij = b_j for i > j; one step equals
/// s consecutive Euler substeps of sizes b_1 h, ..., b_s h. Weights must be
/// nonnegative and sum to one.
ButcherTableau euler_chain_tableau(const std::vector<double>& b);

/// Algebraic stability matrix m_ij = b_i a_ij + b_j a_ji - b_i b_j.
Matrix m_matrix(const ButcherTableau& t);

/// The step-size dependent certificate matrix together with its parameters.
struct ContractivityMatrix {
  Matrix entries;
  double h;
  double L;
};

/// Certificate matrix with entries (2 h b_i / L) delta_ij + h^2 m_ij.
/// Requires h > 0 and L > 0.
ContractivityMatrix mbar_matrix(const ButcherTableau& t, double h, double L);

// JSON document {"a": [[...]], "b": [...]} with row-major a. Coefficients
// may be JSON numbers, decimal strings ("0.125") or fraction strings
// ("1/3") so that rational inputs survive exactly or to nearest double.
ButcherTableau tableau_from_json(const std::string& text);
std::string tableau_to_json(const ButcherTableau& t);
ButcherTableau load_tableau_file(const std::string& path);

}  // namespace rkcontract

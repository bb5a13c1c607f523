#pragma once

#include <utility>
#include <vector>

#include "rkcontract/linalg.hpp"
#include "rkcontract/tableau.hpp"

namespace rkcontract {

struct PsdVerdict {
  bool is_psd;
  double min_eigenvalue;
  double tolerance_used;
};

/// Positive semidefiniteness of a symmetric matrix, decided from the
/// smallest Jacobi eigenvalue: is_psd iff min_eigenvalue >= -tol.
/// The overload without tol uses 1e-10 * max(1, ||M||_inf). Inputs with
/// asymmetry beyond 1e-12 * max(1, ||M||_inf) are rejected.
PsdVerdict check_psd(const Matrix& m, double tol);
PsdVerdict check_psd(const Matrix& m);

enum class IntervalKind { Empty, Finite, Unbounded };

/// Step-size interval (0, h_max] on which the certificate matrix is PSD.
/// `detached_certified_h` lists sample step sizes beyond the interval that
/// also certify; nonempty only when the certified set is disconnected,
/// which the interval search reports but does not merge.
struct ContractivityInterval {
  IntervalKind kind = IntervalKind::Empty;
  double h_max = 0.0;  // meaningful for Finite
  double L = 0.0;
  std::vector<double> detached_certified_h;
  std::vector<std::pair<double, double>> min_eig_samples;  // (h, min eig)

  bool empty() const { return kind == IntervalKind::Empty; }
  bool unbounded() const { return kind == IntervalKind::Unbounded; }
};

/// Largest h_max <= 10*(2s/L) such that the certificate matrix stays PSD
/// (within a relative eigenvalue tolerance) on a refinement-verified grid
/// of (0, h_max]. The boundary is located by bisection between grid sign
/// changes of the smallest eigenvalue. Returns the unbounded marker when
/// the cap and ten larger samples all certify.
ContractivityInterval contractivity_interval(const ButcherTableau& t, double L);

struct EulerOptimalityReport {
  double stage_bound;          // 2s/L
  bool has_certified_h;
  double largest_certified_h;  // 0 when none
  bool within_bound;           // largest certified h <= 2s/L + tol
  bool boundary_psd;           // certificate matrix PSD at h = 2s/L
  bool equal_weight_euler_chain;  // b_i = 1/s and a_ij = b_j (i > j)
  double max_weight_deviation;    // max |b_i - 1/s|
  double max_coeff_deviation;     // max |a_ij - b_j| over i > j
};

/// Checks the optimality bound for explicit consistent schemes with
/// positive weights: any certified step size satisfies h <= 2s/L, and a
/// scheme certified at exactly 2s/L must be the equal-weight chain of
/// Euler substeps. Throws PreconditionError when a weight is <= 0 or the
/// scheme is implicit.
EulerOptimalityReport verify_euler_optimality(const ButcherTableau& t, double L);

/// Residual of the one-step distance identity
///   ||x~1-x1||^2 = ||x~0-x0||^2 + 2h sum_i b_i <k~i-ki, X~i-Xi>
///                  - h^2 sum_ij m_ij <k~i-ki, k~j-kj>
/// with stage points reconstructed from the slopes. Exact algebra, so the
/// residual is pure floating-point noise; used as a cross-check.
double pairwise_contraction_identity_residual(
    const ButcherTableau& t, double h,
    const std::vector<std::vector<double>>& slopes,
    const std::vector<std::vector<double>>& slopes_tilde,
    const std::vector<double>& x0, const std::vector<double>& x0_tilde);

}  // namespace rkcontract

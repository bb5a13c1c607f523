#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rkcontract/linalg.hpp"
#include "rkcontract/tableau.hpp"

namespace rkcontract {

/// Evaluatable gradient map x -> grad V(x) with an optionally declared
/// Lipschitz bound. The evaluator must be deterministic and safe for
/// concurrent read-only use.
struct GradientField {
  std::function<std::vector<double>(const std::vector<double>&)> eval;
  int dim = 0;
  std::optional<double> lipschitz_bound;
};

/// One explicit RK step together with its stage data.
struct StepRecord {
  std::vector<double> x0;
  std::vector<double> x1;
  std::vector<std::vector<double>> stage_points;
  std::vector<std::vector<double>> slopes;  // k_j = -grad V(X_j)
  double h = 0.0;
};

/// One step of an explicit tableau on the flow x' = -grad V(x).
/// Implicit tableaux are rejected with UnsupportedError.
StepRecord rk_step(const ButcherTableau& t, const GradientField& f,
                   const std::vector<double>& x0, double h);

/// Squared distance ratio ||x~1 - x1||^2 / ||x~0 - x0||^2 after one step
/// from each of two initial points. Requires x0 != x~0.
double contraction_ratio(const ButcherTableau& t, const GradientField& f,
                         const std::vector<double>& x0,
                         const std::vector<double>& x0_tilde, double h);

/// Gradient field of the quadratic potential V(x) = <Qx, x>/2 for a
/// symmetric PSD matrix Q; the declared Lipschitz bound is ||Q||'s given
/// upper estimate `L`.
GradientField quadratic_gradient_field(const Matrix& q, double L);

}  // namespace rkcontract

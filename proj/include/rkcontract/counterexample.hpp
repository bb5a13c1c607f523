#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rkcontract/linalg.hpp"

namespace rkcontract {

/// A candidate one-step configuration for the two-stage second-order
/// scheme: two initial points, the four gradient slopes the feedback loop
/// would deliver, and the positions they induce through
///   xh = x0 + (h/2) k0,   x1 = x0 + h kh   (and the tilde analogues).
/// Dimension is free; the closed-form instance lives in the plane.
struct Configuration {
  std::vector<double> x0, x0t;
  std::vector<double> xh, xht;
  std::vector<double> x1, x1t;
  std::vector<double> k0, k0t, kh, kht;
  double L = 0.0;
  double h = 0.0;

  int dim() const { return static_cast<int>(x0.size()); }
};

/// Derives all positions from (x0, x0t, slopes) and packs a Configuration.
Configuration configuration_from_slopes(double L, double h,
                                        const std::vector<double>& x0,
                                        const std::vector<double>& x0t,
                                        const std::vector<double>& k0,
                                        const std::vector<double>& k0t,
                                        const std::vector<double>& kh,
                                        const std::vector<double>& kht);

/// The explicit planar configuration that violates contractivity:
///   k0  = [0, -3/h],            k0t = [-L/2, -3/h + L/2],
///   kh  = [0, -3/h + L],        kht = [L^3 h^2/64, -3/h + L - L^2 h/8],
/// with x0 = 0 and x0t = [1, 0].
Configuration paper_configuration(double L, double h);

/// All points and slopes multiplied by lambda > 0; the constraint slacks
/// scale by lambda^2 and the dilation quotient is unchanged.
Configuration scaled_configuration(const Configuration& c, double lambda);

/// Slack of each of the six smoothness/convexity constraints
///   (1/L) ||dk||^2 <= -<dk, dx>
/// taken over the six pairs of gradient values; slack = RHS - LHS.
struct ConstraintReport {
  std::array<double, 6> slack;
  bool all_satisfied;  // every slack >= -1e-12
};

ConstraintReport check_constraints(const Configuration& c);

/// Squared-distance growth ||x1t - x1||^2 / ||x0t - x0||^2.
double dilation(const Configuration& c);

struct DilationSearchResult {
  Configuration best;
  double ratio = 1.0;
  std::array<double, 6> slacks{};
  int starts = 0;
  int winner = -1;  // index of the start that produced the best value
};

/// Multi-start constrained maximization of the dilation quotient over the
/// four slopes, with x0 = 0 and x0t = e1 fixed. Augmented Lagrangian with
/// penalty doubling around an L-BFGS inner loop; only iterates satisfying
/// all six constraints in exact arithmetic are eligible as results, so the
/// returned ratio is always attained by a feasible configuration. For
/// d >= 2 the closed-form planar configuration is included as a warm
/// start. `max_threads` caps the parallel starts (0 = hardware).
DilationSearchResult maximize_dilation(double L, double h, int d, uint64_t seed,
                                       int starts = 20, int max_threads = 0);

/// The two-vector reduction: maximize ||d0 + h Dh||^2 over (D0, Dh) in the
/// plane subject to (1/L)||D0||^2 <= -<D0, d0> and
/// (1/L)||Dh||^2 <= -<Dh, dh>, dh = d0 + (h/2) D0, d0 = e1. Both
/// constraints are active at the optimum; the solution is canonicalized to
/// the branch with D0_y >= 0 (the reflected branch attains the same value).
struct ReducedMaximization {
  std::array<double, 2> delta0, deltah;           // numerical maximizer
  std::array<double, 2> delta0_leading, deltah_leading;  // small-h closed forms
  double objective = 0.0;   // ||d0 + h Dh||^2 at the maximizer
  double slack0 = 0.0, slackh = 0.0;
};

ReducedMaximization reduced_maximization(double L, double h);

/// Least-squares fit of ratio - 1 = c * (L h)^3 over an h-grid; used to
/// extract the cubic growth coefficient from maximization sweeps.
double fit_cubic_coefficient(double L, const std::vector<double>& h_values,
                             const std::vector<double>& ratios);

}  // namespace rkcontract

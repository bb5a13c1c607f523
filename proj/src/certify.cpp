#include "rkcontract/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rkcontract/errors.hpp"

namespace rkcontract {

namespace {

constexpr double kPsdTolFactor = 1e-10;
constexpr double kAsymmetryTol = 1e-12;
constexpr double kCapFactor = 10.0;     // H_CAP = 10 * (2s/L)
constexpr int kGridPoints = 256;        // pre-scan resolution
constexpr double kGridSpan = 1e-4;      // smallest grid h as fraction of H_CAP
constexpr int kBisectIters = 60;
constexpr int kRefinePoints = 512;
constexpr int kUnboundedSamples = 10;

// Interval certification uses a tolerance relative to the matrix scale
// with no absolute floor: the certificate entries vanish like h as h -> 0
// and an absolute floor would falsely certify schemes whose smallest
// eigenvalue is negative but o(1) there (the two-stage second-order
// scheme is the canonical case).
bool certified(const ButcherTableau& t, double h, double L, double* min_eig_out = nullptr) {
  const ContractivityMatrix mb = mbar_matrix(t, h, L);
  const double tol = kPsdTolFactor * mb.entries.norm_inf();
  const double lo = min_eigenvalue(mb.entries);
  if (min_eig_out) *min_eig_out = lo;
  return lo >= -tol;
}

}  // namespace

PsdVerdict check_psd(const Matrix& m, double tol) {
  if (!m.square()) throw ShapeError("check_psd requires a square matrix");
  if (m.asymmetry() > kAsymmetryTol * std::max(1.0, m.norm_inf()))
    throw ShapeError("check_psd requires a symmetric matrix");
  const double lo = min_eigenvalue(m);
  return PsdVerdict{lo >= -tol, lo, tol};
}

PsdVerdict check_psd(const Matrix& m) {
  return check_psd(m, kPsdTolFactor * std::max(1.0, m.norm_inf()));
}

ContractivityInterval contractivity_interval(const ButcherTableau& t, double L) {
  if (!(L > 0.0)) throw DomainError("contractivity_interval requires L > 0");
  ContractivityInterval out;
  out.L = L;

  const double h_cap = kCapFactor * (2.0 * t.stages() / L);
  const double h_lo = h_cap * kGridSpan;
  const double ratio = std::pow(h_cap / h_lo, 1.0 / (kGridPoints - 1));

  std::vector<double> grid(kGridPoints);
  std::vector<char> ok(kGridPoints);
  grid[0] = h_lo;
  for (int i = 1; i < kGridPoints; ++i) grid[i] = grid[i - 1] * ratio;
  grid.back() = h_cap;

  for (int i = 0; i < kGridPoints; ++i) {
    double eig;
    ok[i] = certified(t, grid[i], L, &eig) ? 1 : 0;
    out.min_eig_samples.emplace_back(grid[i], eig);
  }

  int first_bad = 0;
  while (first_bad < kGridPoints && ok[first_bad]) ++first_bad;

  if (first_bad == kGridPoints) {
    // Certified through the cap; probe beyond it before declaring the
    // certificate unconditional.
    std::mt19937_64 rng(0x524bc0ffeeULL);
    std::uniform_real_distribution<double> mult(1.0, 10.0);
    bool all_beyond = true;
    for (int i = 0; i < kUnboundedSamples && all_beyond; ++i)
      all_beyond = certified(t, h_cap * mult(rng), L);
    if (all_beyond) {
      out.kind = IntervalKind::Unbounded;
      return out;
    }
    out.kind = IntervalKind::Finite;
    out.h_max = h_cap;
    return out;
  }

  // Any certified samples beyond the first failure are reported, not merged:
  // the certified set is not known to be an interval in general.
  for (int i = first_bad + 1; i < kGridPoints; ++i)
    if (ok[i]) out.detached_certified_h.push_back(grid[i]);

  if (first_bad == 0) {
    out.kind = IntervalKind::Empty;
    return out;
  }

  auto bisect_boundary = [&](double lo, double hi) {
    for (int i = 0; i < kBisectIters; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (certified(t, mid, L))
        lo = mid;
      else
        hi = mid;
    }
    return lo;
  };

  double h_max = bisect_boundary(grid[first_bad - 1], grid[first_bad]);

  // Refinement pass: verify a denser grid of (0, h_max]; on any failure
  // move the boundary down and re-verify.
  for (int round = 0; round < 4; ++round) {
    bool clean = true;
    double prev = h_lo;
    const double rr = std::pow(h_max / h_lo, 1.0 / (kRefinePoints - 1));
    double hh = h_lo;
    for (int i = 0; i < kRefinePoints; ++i, hh *= rr) {
      const double h = std::min(hh, h_max);
      if (!certified(t, h, L)) {
        h_max = bisect_boundary(prev, h);
        clean = false;
        break;
      }
      prev = h;
    }
    if (clean) break;
  }

  out.kind = IntervalKind::Finite;
  out.h_max = h_max;
  return out;
}

EulerOptimalityReport verify_euler_optimality(const ButcherTableau& t, double L) {
  if (!(L > 0.0)) throw DomainError("verify_euler_optimality requires L > 0");
  if (!t.is_explicit())
    throw PreconditionError("optimality bound applies to explicit schemes only");
  if (!t.all_weights_positive())
    throw PreconditionError("optimality bound assumes strictly positive weights");

  const int s = t.stages();
  EulerOptimalityReport rep{};
  rep.stage_bound = 2.0 * s / L;

  const ContractivityInterval iv = contractivity_interval(t, L);
  rep.has_certified_h = !iv.empty();
  rep.largest_certified_h = iv.unbounded() ? std::numeric_limits<double>::infinity()
                            : iv.empty()   ? 0.0
                                           : iv.h_max;
  const double tol = 1e-8 * std::max(1.0, rep.stage_bound);
  rep.within_bound = !rep.has_certified_h || rep.largest_certified_h <= rep.stage_bound + tol;

  const ContractivityMatrix at_bound = mbar_matrix(t, rep.stage_bound, L);
  const double psd_tol = 1e-9 * std::max(1.0, at_bound.entries.norm_inf());
  rep.boundary_psd = check_psd(at_bound.entries, psd_tol).is_psd;

  rep.max_weight_deviation = 0.0;
  rep.max_coeff_deviation = 0.0;
  for (int i = 0; i < s; ++i) {
    rep.max_weight_deviation =
        std::max(rep.max_weight_deviation, std::abs(t.b(i) - 1.0 / s));
    for (int j = 0; j < i; ++j)
      rep.max_coeff_deviation =
          std::max(rep.max_coeff_deviation, std::abs(t.a(i, j) - t.b(j)));
  }
  rep.equal_weight_euler_chain =
      rep.max_weight_deviation <= 1e-8 && rep.max_coeff_deviation <= 1e-8;
  return rep;
}

double pairwise_contraction_identity_residual(
    const ButcherTableau& t, double h,
    const std::vector<std::vector<double>>& slopes,
    const std::vector<std::vector<double>>& slopes_tilde,
    const std::vector<double>& x0, const std::vector<double>& x0_tilde) {
  const int s = t.stages();
  if (static_cast<int>(slopes.size()) != s || static_cast<int>(slopes_tilde.size()) != s)
    throw ShapeError("slope count must match stage count");
  const size_t d = x0.size();
  if (x0_tilde.size() != d) throw ShapeError("initial points must share a dimension");
  for (int i = 0; i < s; ++i)
    if (slopes[i].size() != d || slopes_tilde[i].size() != d)
      throw ShapeError("slope dimension mismatch");

  auto reconstruct = [&](const std::vector<std::vector<double>>& k,
                         const std::vector<double>& x) {
    std::vector<std::vector<double>> stage_points(s, x);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j)
        if (t.a(i, j) != 0.0)
          stage_points[i] = axpy(stage_points[i], h * t.a(i, j), k[j]);
    std::vector<double> x1 = x;
    for (int j = 0; j < s; ++j) x1 = axpy(x1, h * t.b(j), k[j]);
    return std::make_pair(stage_points, x1);
  };

  const auto [X, x1] = reconstruct(slopes, x0);
  const auto [Xt, x1t] = reconstruct(slopes_tilde, x0_tilde);

  const Matrix m = m_matrix(t);
  double coupling = 0.0;
  for (int i = 0; i < s; ++i)
    coupling += t.b(i) * dot(sub(slopes_tilde[i], slopes[i]), sub(Xt[i], X[i]));
  double quad = 0.0;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      quad += m(i, j) * dot(sub(slopes_tilde[i], slopes[i]), sub(slopes_tilde[j], slopes[j]));

  const double lhs = norm2(sub(x1t, x1));
  const double rhs = norm2(sub(x0_tilde, x0)) + 2.0 * h * coupling - h * h * quad;
  return std::abs(lhs - rhs);
}

}  // namespace rkcontract

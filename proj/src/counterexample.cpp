#include "rkcontract/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "rkcontract/errors.hpp"

namespace rkcontract {

namespace {

constexpr double kSlackTol = 1e-12;

std::vector<double> e1_of_dim(int d) {
  std::vector<double> e(d, 0.0);
  e[0] = 1.0;
  return e;
}

}  // namespace

Configuration configuration_from_slopes(double L, double h,
                                        const std::vector<double>& x0,
                                        const std::vector<double>& x0t,
                                        const std::vector<double>& k0,
                                        const std::vector<double>& k0t,
                                        const std::vector<double>& kh,
                                        const std::vector<double>& kht) {
  if (!(L > 0.0) || !(h > 0.0)) throw DomainError("configuration requires L, h > 0");
  const size_t d = x0.size();
  for (const auto* v : {&x0t, &k0, &k0t, &kh, &kht})
    if (v->size() != d) throw ShapeError("configuration vectors must share a dimension");
  Configuration c;
  c.L = L;
  c.h = h;
  c.x0 = x0;
  c.x0t = x0t;
  c.k0 = k0;
  c.k0t = k0t;
  c.kh = kh;
  c.kht = kht;
  c.xh = axpy(x0, 0.5 * h, k0);
  c.xht = axpy(x0t, 0.5 * h, k0t);
  c.x1 = axpy(x0, h, kh);
  c.x1t = axpy(x0t, h, kht);
  return c;
}

Configuration paper_configuration(double L, double h) {
  if (!(L > 0.0) || !(h > 0.0)) throw DomainError("paper_configuration requires L, h > 0");
  const std::vector<double> x0 = {0.0, 0.0};
  const std::vector<double> x0t = {1.0, 0.0};
  const std::vector<double> k0 = {0.0, -3.0 / h};
  const std::vector<double> k0t = {-L / 2.0, -3.0 / h + L / 2.0};
  const std::vector<double> kh = {0.0, -3.0 / h + L};
  const std::vector<double> kht = {L * L * L * h * h / 64.0,
                                   -3.0 / h + L - L * L * h / 8.0};
  return configuration_from_slopes(L, h, x0, x0t, k0, k0t, kh, kht);
}

Configuration scaled_configuration(const Configuration& c, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("scaling factor must be positive");
  Configuration s = c;
  for (auto* v : {&s.x0, &s.x0t, &s.xh, &s.xht, &s.x1, &s.x1t, &s.k0, &s.k0t, &s.kh, &s.kht})
    *v = scale(*v, lambda);
  return s;
}

ConstraintReport check_constraints(const Configuration& c) {
  auto slack = [&](const std::vector<double>& ka, const std::vector<double>& kb,
                   const std::vector<double>& xa, const std::vector<double>& xb) {
    const std::vector<double> dk = sub(ka, kb);
    const std::vector<double> dx = sub(xa, xb);
    return -dot(dk, dx) - norm2(dk) / c.L;
  };
  ConstraintReport rep{};
  rep.slack[0] = slack(c.k0t, c.k0, c.x0t, c.x0);
  rep.slack[1] = slack(c.kht, c.kh, c.xht, c.xh);
  rep.slack[2] = slack(c.kh, c.k0, c.xh, c.x0);
  rep.slack[3] = slack(c.kht, c.k0t, c.xht, c.x0t);
  rep.slack[4] = slack(c.kht, c.k0, c.xht, c.x0);
  rep.slack[5] = slack(c.kh, c.k0t, c.xh, c.x0t);
  rep.all_satisfied = true;
  for (double s : rep.slack)
    if (s < -kSlackTol) rep.all_satisfied = false;
  return rep;
}

double dilation(const Configuration& c) {
  const double d0 = norm2(sub(c.x0t, c.x0));
  if (d0 == 0.0) throw DomainError("dilation requires distinct initial points");
  return norm2(sub(c.x1t, c.x1)) / d0;
}

namespace {

// ---------------------------------------------------------------------------
// Constrained maximization of the dilation quotient.
//
// Variables are the four slopes packed as v = [k0, k0t, kh, kht] (4d reals)
// with x0 = 0 and x0t = e1 fixed. The objective and the six constraints are
// smooth quadratics, so gradients are assembled analytically.
// ---------------------------------------------------------------------------

struct SearchProblem {
  double L, h;
  int d;

  int n() const { return 4 * d; }

  // slope views into the packed vector
  static constexpr int K0 = 0, K0T = 1, KH = 2, KHT = 3;
  const double* blk(const std::vector<double>& v, int which) const {
    return v.data() + which * d;
  }

  double objective(const std::vector<double>& v) const {
    // ||e1 + h (kht - kh)||^2
    const double* kh = blk(v, KH);
    const double* kht = blk(v, KHT);
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
      const double r = (i == 0 ? 1.0 : 0.0) + h * (kht[i] - kh[i]);
      s += r * r;
    }
    return s;
  }

  void objective_gradient(const std::vector<double>& v, std::vector<double>& g) const {
    const double* kh = blk(v, KH);
    const double* kht = blk(v, KHT);
    for (int i = 0; i < d; ++i) {
      const double r = (i == 0 ? 1.0 : 0.0) + h * (kht[i] - kh[i]);
      g[KHT * d + i] += 2.0 * h * r;
      g[KH * d + i] -= 2.0 * h * r;
    }
  }

  // Constraint value g_c(v) = ||dk||^2/L + <dk, dx> (feasible iff <= 0)
  // for each of the six gradient pairs.
  std::array<double, 6> constraints(const std::vector<double>& v) const {
    const double* k0 = blk(v, K0);
    const double* k0t = blk(v, K0T);
    const double* kh = blk(v, KH);
    const double* kht = blk(v, KHT);
    std::array<double, 6> g{};
    for (int i = 0; i < d; ++i) {
      const double e = i == 0 ? 1.0 : 0.0;
      const double dx1 = e;                                // x0t - x0
      const double dx2 = e + 0.5 * h * (k0t[i] - k0[i]);   // xht - xh
      const double dx3 = 0.5 * h * k0[i];                  // xh - x0
      const double dx4 = 0.5 * h * k0t[i];                 // xht - x0t
      const double dx5 = e + 0.5 * h * k0t[i];             // xht - x0
      const double dx6 = 0.5 * h * k0[i] - e;              // xh - x0t
      const double dk1 = k0t[i] - k0[i];
      const double dk2 = kht[i] - kh[i];
      const double dk3 = kh[i] - k0[i];
      const double dk4 = kht[i] - k0t[i];
      const double dk5 = kht[i] - k0[i];
      const double dk6 = kh[i] - k0t[i];
      g[0] += dk1 * dk1 / L + dk1 * dx1;
      g[1] += dk2 * dk2 / L + dk2 * dx2;
      g[2] += dk3 * dk3 / L + dk3 * dx3;
      g[3] += dk4 * dk4 / L + dk4 * dx4;
      g[4] += dk5 * dk5 / L + dk5 * dx5;
      g[5] += dk6 * dk6 / L + dk6 * dx6;
    }
    return g;
  }

  // Adds w_c * grad(g_c) for each constraint c into g.
  void add_constraint_gradients(const std::vector<double>& v,
                                const std::array<double, 6>& w,
                                std::vector<double>& g) const {
    const double* k0 = blk(v, K0);
    const double* k0t = blk(v, K0T);
    const double* kh = blk(v, KH);
    const double* kht = blk(v, KHT);
    for (int i = 0; i < d; ++i) {
      const double e = i == 0 ? 1.0 : 0.0;
      const double dk1 = k0t[i] - k0[i];
      const double dk2 = kht[i] - kh[i];
      const double dk3 = kh[i] - k0[i];
      const double dk4 = kht[i] - k0t[i];
      const double dk5 = kht[i] - k0[i];
      const double dk6 = kh[i] - k0t[i];
      const double dx1 = e;
      const double dx2 = e + 0.5 * h * dk1;
      const double dx3 = 0.5 * h * k0[i];
      const double dx4 = 0.5 * h * k0t[i];
      const double dx5 = e + 0.5 * h * k0t[i];
      const double dx6 = 0.5 * h * k0[i] - e;

      // constraint 1: dk = k0t - k0, dx constant
      g[K0T * d + i] += w[0] * (2.0 * dk1 / L + dx1);
      g[K0 * d + i] -= w[0] * (2.0 * dk1 / L + dx1);
      // constraint 2: dk = kht - kh, dx depends on k0t, k0
      g[KHT * d + i] += w[1] * (2.0 * dk2 / L + dx2);
      g[KH * d + i] -= w[1] * (2.0 * dk2 / L + dx2);
      g[K0T * d + i] += w[1] * 0.5 * h * dk2;
      g[K0 * d + i] -= w[1] * 0.5 * h * dk2;
      // constraint 3: dk = kh - k0, dx = (h/2) k0
      g[KH * d + i] += w[2] * (2.0 * dk3 / L + dx3);
      g[K0 * d + i] += w[2] * (-(2.0 * dk3 / L + dx3) + 0.5 * h * dk3);
      // constraint 4: dk = kht - k0t, dx = (h/2) k0t
      g[KHT * d + i] += w[3] * (2.0 * dk4 / L + dx4);
      g[K0T * d + i] += w[3] * (-(2.0 * dk4 / L + dx4) + 0.5 * h * dk4);
      // constraint 5: dk = kht - k0, dx = e1 + (h/2) k0t
      g[KHT * d + i] += w[4] * (2.0 * dk5 / L + dx5);
      g[K0 * d + i] -= w[4] * (2.0 * dk5 / L + dx5);
      g[K0T * d + i] += w[4] * 0.5 * h * dk5;
      // constraint 6: dk = kh - k0t, dx = (h/2) k0 - e1
      g[KH * d + i] += w[5] * (2.0 * dk6 / L + dx6);
      g[K0T * d + i] -= w[5] * (2.0 * dk6 / L + dx6);
      g[K0 * d + i] += w[5] * 0.5 * h * dk6;
    }
  }

  Configuration unpack(const std::vector<double>& v) const {
    auto take = [&](int which) {
      return std::vector<double>(v.begin() + which * d, v.begin() + (which + 1) * d);
    };
    return configuration_from_slopes(L, h, std::vector<double>(d, 0.0), e1_of_dim(d),
                                     take(K0), take(K0T), take(KH), take(KHT));
  }
};

// Minimal L-BFGS with Armijo backtracking. `eval` fills the gradient and
// returns the value; `observe` sees every accepted iterate.
void lbfgs_minimize(const std::function<double(const std::vector<double>&, std::vector<double>&)>& eval,
                    std::vector<double>& x, int max_iters, double gtol,
                    const std::function<void(const std::vector<double>&)>& observe) {
  const int n = static_cast<int>(x.size());
  const int mem = 10;
  std::vector<std::vector<double>> s_hist, y_hist;
  std::vector<double> rho_hist;

  std::vector<double> g(n, 0.0), g_new(n, 0.0);
  double f = eval(x, g);
  observe(x);

  for (int iter = 0; iter < max_iters; ++iter) {
    double gmax = 0.0;
    for (double v : g) gmax = std::max(gmax, std::abs(v));
    if (gmax <= gtol * std::max(1.0, std::abs(f))) break;

    // two-loop recursion
    std::vector<double> q = g;
    const int m = static_cast<int>(s_hist.size());
    std::vector<double> alpha(m);
    for (int i = m - 1; i >= 0; --i) {
      alpha[i] = rho_hist[i] * dot(s_hist[i], q);
      q = axpy(q, -alpha[i], y_hist[i]);
    }
    if (m > 0) {
      const double gamma = dot(s_hist[m - 1], y_hist[m - 1]) / norm2(y_hist[m - 1]);
      q = scale(q, gamma);
    }
    for (int i = 0; i < m; ++i) {
      const double beta = rho_hist[i] * dot(y_hist[i], q);
      q = axpy(q, alpha[i] - beta, s_hist[i]);
    }
    std::vector<double> dir = scale(q, -1.0);
    double slope = dot(g, dir);
    if (!(slope < 0.0)) {  // not a descent direction, fall back
      dir = scale(g, -1.0);
      slope = -norm2(g);
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      if (slope == 0.0) break;
    }

    double t = 1.0;
    std::vector<double> x_new;
    double f_new = f;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      x_new = axpy(x, t, dir);
      f_new = eval(x_new, g_new);
      if (f_new <= f + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;

    const std::vector<double> s_vec = sub(x_new, x);
    const std::vector<double> y_vec = sub(g_new, g);
    const double sy = dot(s_vec, y_vec);
    if (sy > 1e-30) {
      s_hist.push_back(s_vec);
      y_hist.push_back(y_vec);
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > mem) {
        s_hist.erase(s_hist.begin());
        y_hist.erase(y_hist.begin());
        rho_hist.erase(rho_hist.begin());
      }
    }
    const double f_prev = f;
    x = std::move(x_new);
    g = g_new;
    f = f_new;
    observe(x);
    if (std::abs(f_prev - f) <= 1e-17 * std::max(1.0, std::abs(f))) break;
  }
}

struct StartOutcome {
  bool has_feasible = false;
  double ratio = -1.0;
  std::vector<double> v;
};

StartOutcome run_one_start(const SearchProblem& prob, std::vector<double> v) {
  StartOutcome best;
  auto consider = [&](const std::vector<double>& cand) {
    const auto g = prob.constraints(cand);
    for (double gc : g)
      if (gc > 0.0) return;  // strict feasibility, no tolerance
    const double val = prob.objective(cand);
    if (!best.has_feasible || val > best.ratio) {
      best.has_feasible = true;
      best.ratio = val;
      best.v = cand;
    }
  };

  std::array<double, 6> lambda{};
  double rho = 10.0;
  double prev_viol = std::numeric_limits<double>::infinity();

  for (int outer = 0; outer < 40; ++outer) {
    auto eval = [&](const std::vector<double>& x, std::vector<double>& grad) {
      std::fill(grad.begin(), grad.end(), 0.0);
      double val = -prob.objective(x);
      prob.objective_gradient(x, grad);
      for (double& gv : grad) gv = -gv;
      const auto gc = prob.constraints(x);
      std::array<double, 6> w{};
      for (int c = 0; c < 6; ++c) {
        const double m = std::max(0.0, lambda[c] + rho * gc[c]);
        val += (m * m - lambda[c] * lambda[c]) / (2.0 * rho);
        w[c] = m;
      }
      prob.add_constraint_gradients(x, w, grad);
      return val;
    };
    lbfgs_minimize(eval, v, 300, 1e-13, consider);

    const auto gc = prob.constraints(v);
    double viol = 0.0;
    for (int c = 0; c < 6; ++c) {
      lambda[c] = std::max(0.0, lambda[c] + rho * gc[c]);
      viol = std::max(viol, gc[c]);
    }
    if (viol <= 0.0 && outer >= 2) break;
    if (viol > 0.25 * prev_viol) rho = std::min(rho * 2.0, 1e14);
    prev_viol = std::max(viol, 0.0);
  }
  return best;
}

}  // namespace

DilationSearchResult maximize_dilation(double L, double h, int d, uint64_t seed,
                                       int starts, int max_threads) {
  if (d < 1) throw DomainError("maximize_dilation requires d >= 1");
  if (!(L > 0.0) || !(h > 0.0)) throw DomainError("maximize_dilation requires L, h > 0");
  const SearchProblem prob{L, h, d};

  // Deterministic start list: resting slopes, the closed-form planar
  // configuration when it fits, then `starts` Gaussian draws at the 1/h
  // slope scale.
  std::vector<std::vector<double>> inits;
  inits.emplace_back(prob.n(), 0.0);
  if (d >= 2) {
    const Configuration pc = paper_configuration(L, h);
    std::vector<double> v(prob.n(), 0.0);
    auto put = [&](int which, const std::vector<double>& k) {
      v[which * d + 0] = k[0];
      v[which * d + 1] = k[1];
    };
    put(SearchProblem::K0, pc.k0);
    put(SearchProblem::K0T, pc.k0t);
    put(SearchProblem::KH, pc.kh);
    put(SearchProblem::KHT, pc.kht);
    inits.push_back(std::move(v));
  }
  for (int i = 0; i < starts; ++i) {
    std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (i + 1)));
    std::normal_distribution<double> gauss(0.0, 1.0 / h);
    std::vector<double> v(prob.n());
    for (double& x : v) x = gauss(rng);
    inits.push_back(std::move(v));
  }

  const int tasks = static_cast<int>(inits.size());
  int threads = max_threads > 0 ? max_threads
                                : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, tasks));

  std::vector<StartOutcome> outcomes(tasks);
  {
    std::vector<std::future<void>> futs;
    for (int w = 0; w < threads; ++w) {
      futs.push_back(std::async(std::launch::async, [&, w]() {
        for (int i = w; i < tasks; i += threads)
          outcomes[i] = run_one_start(prob, inits[i]);
      }));
    }
    for (auto& f : futs) f.get();
  }

  DilationSearchResult res;
  res.starts = tasks;
  for (int i = 0; i < tasks; ++i) {
    if (outcomes[i].has_feasible &&
        (res.winner < 0 || outcomes[i].ratio > res.ratio)) {
      res.winner = i;
      res.ratio = outcomes[i].ratio;
    }
  }
  if (res.winner < 0) {
    // The zero start is always feasible, so this is unreachable; keep the
    // resting configuration as a safe fallback.
    res.best = prob.unpack(std::vector<double>(prob.n(), 0.0));
    res.ratio = 1.0;
    res.winner = 0;
  } else {
    res.best = prob.unpack(outcomes[res.winner].v);
  }
  res.slacks = check_constraints(res.best).slack;
  return res;
}

ReducedMaximization reduced_maximization(double L, double h) {
  if (!(L > 0.0) || !(h > 0.0)) throw DomainError("reduced_maximization requires L, h > 0");
  if (L * h > 1.0)
    throw DomainError("reduced_maximization is meaningful for L*h <= 1");

  // With the first constraint active, D0 lies on the circle centered at
  // -(L/2) e1 of radius L/2 (the objective is convex in D0, so the max is
  // attained on the boundary). For fixed D0 the optimal Dh has a closed
  // form, leaving a one-dimensional maximization over the circle angle.
  auto eval = [&](double theta, std::array<double, 2>* d0_out = nullptr,
                  std::array<double, 2>* dh_out = nullptr) {
    const double d0x = -(L / 2.0) + (L / 2.0) * std::cos(theta);
    const double d0y = (L / 2.0) * std::sin(theta);
    const double dhx = 1.0 + 0.5 * h * d0x;
    const double dhy = 0.5 * h * d0y;
    const double dh_norm = std::hypot(dhx, dhy);
    const double vx = 1.0 - 0.5 * h * L * dhx;
    const double vy = -0.5 * h * L * dhy;
    const double v_norm = std::hypot(vx, vy);
    const double obj_norm = v_norm + 0.5 * h * L * dh_norm;
    if (d0_out) {
      (*d0_out) = {d0x, d0y};
      const double ux = vx / v_norm, uy = vy / v_norm;
      (*dh_out) = {-(L / 2.0) * dhx + (L / 2.0) * dh_norm * ux,
                   -(L / 2.0) * dhy + (L / 2.0) * dh_norm * uy};
    }
    return obj_norm * obj_norm;
  };

  const int scan = 4096;
  double best_theta = 0.0, best_val = -1.0;
  for (int i = 0; i < scan; ++i) {
    const double th = 2.0 * std::numbers::pi * i / scan;
    const double v = eval(th);
    if (v > best_val) {
      best_val = v;
      best_theta = th;
    }
  }
  double lo = best_theta - 2.0 * std::numbers::pi / scan;
  double hi = best_theta + 2.0 * std::numbers::pi / scan;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo);
  double dpt = lo + gr * (hi - lo);
  double fc = eval(c), fd = eval(dpt);
  for (int i = 0; i < 200; ++i) {
    if (fc > fd) {
      hi = dpt;
      dpt = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = eval(c);
    } else {
      lo = c;
      c = dpt;
      fc = fd;
      dpt = lo + gr * (hi - lo);
      fd = eval(dpt);
    }
  }
  best_theta = 0.5 * (lo + hi);

  ReducedMaximization out;
  std::array<double, 2> d0{}, dh{};
  out.objective = eval(best_theta, &d0, &dh);
  // Reflection across the first axis gives the second solution; report the
  // branch with positive second component of D0.
  if (d0[1] < 0.0) {
    d0[1] = -d0[1];
    dh[1] = -dh[1];
  }
  out.delta0 = d0;
  out.deltah = dh;
  out.delta0_leading = {-L / 2.0, L / 2.0};
  out.deltah_leading = {L * L * L * h * h / 64.0, -L * L * h / 8.0};

  const double dhx = 1.0 + 0.5 * h * d0[0];
  const double dhy = 0.5 * h * d0[1];
  out.slack0 = -(d0[0] * 1.0 + d0[1] * 0.0) - (d0[0] * d0[0] + d0[1] * d0[1]) / L;
  out.slackh = -(dh[0] * dhx + dh[1] * dhy) - (dh[0] * dh[0] + dh[1] * dh[1]) / L;
  return out;
}

double fit_cubic_coefficient(double L, const std::vector<double>& h_values,
                             const std::vector<double>& ratios) {
  if (h_values.size() != ratios.size() || h_values.empty())
    throw ShapeError("fit_cubic_coefficient needs matching nonempty samples");
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < h_values.size(); ++i) {
    const double x = std::pow(L * h_values[i], 3);
    sxx += x * x;
    sxy += x * (ratios[i] - 1.0);
  }
  if (sxx == 0.0) throw DomainError("degenerate step-size grid");
  return sxy / sxx;
}

}  // namespace rkcontract

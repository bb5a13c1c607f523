#include "rkcontract/integrate.hpp"

#include "rkcontract/errors.hpp"

namespace rkcontract {

StepRecord rk_step(const ButcherTableau& t, const GradientField& f,
                   const std::vector<double>& x0, double h) {
  if (!t.is_explicit())
    throw UnsupportedError("rk_step integrates explicit tableaux only");
  if (!(h > 0.0)) throw DomainError("rk_step requires h > 0");
  if (f.dim != static_cast<int>(x0.size()))
    throw ShapeError("initial point dimension does not match the field");

  const int s = t.stages();
  StepRecord rec;
  rec.x0 = x0;
  rec.h = h;
  rec.stage_points.resize(s);
  rec.slopes.resize(s);
  for (int i = 0; i < s; ++i) {
    std::vector<double> xi = x0;
    for (int j = 0; j < i; ++j)
      if (t.a(i, j) != 0.0) xi = axpy(xi, h * t.a(i, j), rec.slopes[j]);
    rec.stage_points[i] = xi;
    rec.slopes[i] = scale(f.eval(xi), -1.0);
    if (rec.slopes[i].size() != x0.size())
      throw ShapeError("gradient evaluator returned a wrong dimension");
  }
  rec.x1 = x0;
  for (int j = 0; j < s; ++j) rec.x1 = axpy(rec.x1, h * t.b(j), rec.slopes[j]);
  return rec;
}

double contraction_ratio(const ButcherTableau& t, const GradientField& f,
                         const std::vector<double>& x0,
                         const std::vector<double>& x0_tilde, double h) {
  const double dist0 = norm2(sub(x0_tilde, x0));
  if (dist0 == 0.0)
    throw DomainError("contraction_ratio requires distinct initial points");
  const StepRecord a = rk_step(t, f, x0, h);
  const StepRecord b = rk_step(t, f, x0_tilde, h);
  return norm2(sub(b.x1, a.x1)) / dist0;
}

GradientField quadratic_gradient_field(const Matrix& q, double L) {
  if (!q.square()) throw ShapeError("quadratic field needs a square matrix");
  const int d = q.rows();
  GradientField f;
  f.dim = d;
  f.lipschitz_bound = L;
  f.eval = [q, d](const std::vector<double>& x) {
    std::vector<double> g(d, 0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g[i] += q(i, j) * x[j];
    return g;
  };
  return f;
}

}  // namespace rkcontract

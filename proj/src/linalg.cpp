#include "rkcontract/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "rkcontract/errors.hpp"

namespace rkcontract {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r > 0 ? static_cast<int>(rows[0].size()) : 0;
  Matrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      throw ShapeError("ragged row in matrix literal");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

double Matrix::norm_inf() const {
  double best = 0.0;
  for (int i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (int j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double Matrix::asymmetry() const {
  double worst = 0.0;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
  return worst;
}

std::vector<std::vector<double>> Matrix::to_rows() const {
  std::vector<std::vector<double>> out(rows_, std::vector<double>(cols_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

std::vector<double> symmetric_eigenvalues(const Matrix& m) {
  if (!m.square()) throw ShapeError("eigenvalues of a non-square matrix");
  const int n = m.rows();
  Matrix a = m;
  std::vector<double> d(n), b(n), z(n, 0.0);
  for (int i = 0; i < n; ++i) d[i] = b[i] = a(i, i);

  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double sm = 0.0;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) sm += std::abs(a(p, q));
    if (sm == 0.0) break;

    const double tresh = sweep < 3 ? 0.2 * sm / (n * n) : 0.0;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double g = 100.0 * std::abs(a(p, q));
        if (sweep > 3 && std::abs(d[p]) + g == std::abs(d[p]) &&
            std::abs(d[q]) + g == std::abs(d[q])) {
          a(p, q) = 0.0;
        } else if (std::abs(a(p, q)) > tresh) {
          double h = d[q] - d[p];
          double t;
          if (std::abs(h) + g == std::abs(h)) {
            t = a(p, q) / h;
          } else {
            const double theta = 0.5 * h / a(p, q);
            t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
            if (theta < 0.0) t = -t;
          }
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          const double tau = s / (1.0 + c);
          h = t * a(p, q);
          z[p] -= h;
          z[q] += h;
          d[p] -= h;
          d[q] += h;
          a(p, q) = 0.0;
          auto rotate = [&](int i, int j, int k, int l) {
            const double gij = a(i, j);
            const double gkl = a(k, l);
            a(i, j) = gij - s * (gkl + gij * tau);
            a(k, l) = gkl + s * (gij - gkl * tau);
          };
          for (int j = 0; j < p; ++j) rotate(j, p, j, q);
          for (int j = p + 1; j < q; ++j) rotate(p, j, j, q);
          for (int j = q + 1; j < n; ++j) rotate(p, j, q, j);
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      b[i] += z[i];
      d[i] = b[i];
      z[i] = 0.0;
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

double min_eigenvalue(const Matrix& m) { return symmetric_eigenvalues(m).front(); }

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ShapeError("dot: dimension mismatch");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return dot(a, a); }

double norm(const std::vector<double>& a) { return std::sqrt(norm2(a)); }

std::vector<double> add(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ShapeError("add: dimension mismatch");
  std::vector<double> r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

std::vector<double> sub(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ShapeError("sub: dimension mismatch");
  std::vector<double> r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

std::vector<double> scale(const std::vector<double>& a, double s) {
  std::vector<double> r(a);
  for (double& v : r) v *= s;
  return r;
}

std::vector<double> axpy(const std::vector<double>& a, double s, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ShapeError("axpy: dimension mismatch");
  std::vector<double> r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += s * b[i];
  return r;
}

}  // namespace rkcontract

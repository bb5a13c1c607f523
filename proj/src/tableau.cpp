#include "rkcontract/tableau.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rkcontract/errors.hpp"

namespace rkcontract {

ButcherTableau::ButcherTableau(Matrix a, std::vector<double> b)
    : s_(static_cast<int>(b.size())), a_(std::move(a)), b_(std::move(b)) {
  if (!a_.square()) throw ShapeError("tableau coefficient matrix must be square");
  if (a_.rows() != s_)
    throw ShapeError("tableau weight vector length must match coefficient matrix size");
  if (s_ <= 0) throw ShapeError("tableau needs at least one stage");
  double sum = 0.0;
  for (double w : b_) sum += w;
  if (std::abs(sum - 1.0) > kConsistencyTol)
    throw ConsistencyError("tableau weights must sum to 1 (got " + std::to_string(sum) + ")");
  explicit_ = true;
  for (int i = 0; i < s_ && explicit_; ++i)
    for (int j = i; j < s_; ++j)
      if (a_(i, j) != 0.0) {
        explicit_ = false;
        break;
      }
}

bool ButcherTableau::all_weights_positive() const {
  for (double w : b_)
    if (!(w > 0.0)) return false;
  return true;
}

bool ButcherTableau::all_weights_nonnegative() const {
  for (double w : b_)
    if (w < 0.0) return false;
  return true;
}

ButcherTableau ButcherTableau::euler() { return build_tableau({{0.0}}, {1.0}); }

ButcherTableau ButcherTableau::runge() {
  return build_tableau({{0.0, 0.0}, {0.5, 0.0}}, {0.0, 1.0});
}

ButcherTableau ButcherTableau::two_stage_averaged() {
  return build_tableau({{0.0, 0.0}, {0.5, 0.0}}, {0.5, 0.5});
}

ButcherTableau build_tableau(const std::vector<std::vector<double>>& a,
                             const std::vector<double>& b) {
  return ButcherTableau(Matrix::from_rows(a), b);
}

ButcherTableau euler_chain_tableau(const std::vector<double>& b) {
  const int s = static_cast<int>(b.size());
  for (double w : b)
    if (w < 0.0) throw DomainError("euler chain weights must be nonnegative");
  Matrix a(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < i; ++j) a(i, j) = b[j];
  return ButcherTableau(std::move(a), b);
}

Matrix m_matrix(const ButcherTableau& t) {
  const int s = t.stages();
  Matrix m(s, s);
  for (int i = 0; i < s; ++i) {
    for (int j = i; j < s; ++j) {
      const double v = t.b(i) * t.a(i, j) + t.b(j) * t.a(j, i) - t.b(i) * t.b(j);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

ContractivityMatrix mbar_matrix(const ButcherTableau& t, double h, double L) {
  if (!(h > 0.0)) throw DomainError("mbar_matrix requires h > 0");
  if (!(L > 0.0)) throw DomainError("mbar_matrix requires L > 0");
  const int s = t.stages();
  Matrix mb = m_matrix(t);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      mb(i, j) *= h * h;
      if (i == j) mb(i, j) += 2.0 * h * t.b(i) / L;
    }
  return ContractivityMatrix{std::move(mb), h, L};
}

namespace {

double coefficient_from_json(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    char* end = nullptr;
    if (slash != std::string::npos) {
      const std::string num = s.substr(0, slash);
      const std::string den = s.substr(slash + 1);
      const double p = std::strtod(num.c_str(), &end);
      if (end == num.c_str()) throw DomainError("bad fraction numerator: " + s);
      const double q = std::strtod(den.c_str(), &end);
      if (end == den.c_str() || q == 0.0) throw DomainError("bad fraction: " + s);
      return p / q;
    }
    const double x = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
      throw DomainError("bad numeric string in tableau: " + s);
    return x;
  }
  throw DomainError("tableau coefficients must be numbers or numeric strings");
}

}  // namespace

ButcherTableau tableau_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("malformed tableau JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("a") || !doc.contains("b"))
    throw DomainError("tableau JSON must be an object with fields \"a\" and \"b\"");
  std::vector<std::vector<double>> a;
  for (const auto& row : doc["a"]) {
    std::vector<double> r;
    for (const auto& v : row) r.push_back(coefficient_from_json(v));
    a.push_back(std::move(r));
  }
  std::vector<double> b;
  for (const auto& v : doc["b"]) b.push_back(coefficient_from_json(v));
  return build_tableau(a, b);
}

std::string tableau_to_json(const ButcherTableau& t) {
  nlohmann::json doc;
  doc["a"] = t.a().to_rows();
  doc["b"] = t.b();
  return doc.dump();
}

ButcherTableau load_tableau_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open tableau file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return tableau_from_json(buf.str());
}

}  // namespace rkcontract

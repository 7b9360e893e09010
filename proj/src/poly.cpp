#include "edgestab/poly.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "edgestab/error.hpp"

namespace edgestab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case ErrorCode::BoundOrderViolation: return "BoundOrderViolation";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSingleColumnFamily: return "NotSingleColumnFamily";
    case ErrorCode::NotTwoCellFamily: return "NotTwoCellFamily";
    case ErrorCode::IndeterminateRouthRow: return "IndeterminateRouthRow";
    case ErrorCode::DegreeDrop: return "DegreeDrop";
    case ErrorCode::RegionNotHurwitz: return "RegionNotHurwitz";
    case ErrorCode::ValidationFailure: return "ValidationFailure";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::SizeLimit: return "SizeLimit";
  }
  return "Unknown";
}

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) { normalize(); }

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

Polynomial Polynomial::monomial(double c, int degree) {
  std::vector<double> v(static_cast<std::size_t>(degree) + 1, 0.0);
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::normalize() {
  if (coeffs_.empty()) {
    coeffs_.push_back(0.0);
    return;
  }
  const double floor = kTrimRelative * max_abs_coeff();
  while (coeffs_.size() > 1 && std::abs(coeffs_.back()) <= floor) {
    if (coeffs_.back() != 0.0) truncated_ = true;
    coeffs_.pop_back();
  }
  if (coeffs_.size() == 1 && std::abs(coeffs_[0]) <= floor) {
    if (coeffs_[0] != 0.0) truncated_ = true;
    coeffs_[0] = 0.0;
  }
}

double Polynomial::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Complex Polynomial::operator()(Complex z) const noexcept {
  Complex acc = coeffs_.back();
  for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * z + coeffs_[i];
  return acc;
}

double Polynomial::operator()(double x) const noexcept {
  double acc = coeffs_.back();
  for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() == 1) return Polynomial();
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return Polynomial(std::move(d));
}

std::string Polynomial::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ", ";
    os << coeffs_[i];
  }
  os << ']';
  return os.str();
}

Polynomial add(const Polynomial& p, const Polynomial& q) {
  std::vector<double> r(std::max(p.coeffs().size(), q.coeffs().size()), 0.0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = p[i] + q[i];
  return Polynomial(std::move(r));
}

Polynomial sub(const Polynomial& p, const Polynomial& q) {
  std::vector<double> r(std::max(p.coeffs().size(), q.coeffs().size()), 0.0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = p[i] - q[i];
  return Polynomial(std::move(r));
}

Polynomial scale(double c, const Polynomial& p) {
  std::vector<double> r = p.coeffs();
  for (double& x : r) x *= c;
  return Polynomial(std::move(r));
}

Polynomial mul(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) return Polynomial();
  const auto& a = p.coeffs();
  const auto& b = q.coeffs();
  std::vector<double> r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return Polynomial(std::move(r));
}

Complex eval(const Polynomial& p, Complex z) noexcept { return p(z); }

Polynomial lerp(const Polynomial& p0, const Polynomial& p1, double lambda) {
  std::vector<double> r(std::max(p0.coeffs().size(), p1.coeffs().size()), 0.0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = lambda * p1[i] + (1.0 - lambda) * p0[i];
  return Polynomial(std::move(r));
}

double scaled_residual(const Polynomial& p, Complex z) noexcept {
  const double az = std::abs(z);
  double scale = 0.0;
  double pw = 1.0;
  for (double c : p.coeffs()) {
    scale += std::abs(c) * pw;
    pw *= az;
  }
  if (scale == 0.0) return 0.0;
  return std::abs(p(z)) / scale;
}

std::vector<Complex> roots(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "roots of the zero polynomial");
  const int n = p.degree();
  if (n == 0) return {};
  const auto& c = p.coeffs();
  const double lead = c.back();
  if (n == 1) return {Complex(-c[0] / lead, 0.0)};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<std::size_t>(i)] / lead;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  const auto& ev = solver.eigenvalues();

  const Polynomial dp = p.derivative();
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Complex z = ev(i);
    // one residual-driven Newton correction; kept only if it helps
    const Complex d = dp(z);
    if (std::abs(d) > 0.0) {
      const Complex z1 = z - p(z) / d;
      if (std::isfinite(z1.real()) && std::isfinite(z1.imag()) &&
          scaled_residual(p, z1) < scaled_residual(p, z))
        z = z1;
    }
    out.push_back(z);
  }
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

double cauchy_root_bound(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroLeadingCoefficient, "zero polynomial has no leading coefficient");
  const auto& c = p.coeffs();
  const double lead = std::abs(c.back());
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) m = std::max(m, std::abs(c[i]));
  return 1.0 + m / lead;
}

}  // namespace edgestab

#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace edgestab {

using Complex = std::complex<double>;

/// Dense real polynomial, coefficients in ascending degree (coeffs()[i] multiplies s^i).
///
/// Construction normalizes: trailing coefficients with |c| <= 1e-12 * max|c_i| are
/// dropped and truncated() reports whether that happened. The zero polynomial is the
/// single coefficient 0.
class Polynomial {
 public:
  static constexpr double kTrimRelative = 1e-12;

  Polynomial() : coeffs_{0.0} {}
  Polynomial(std::initializer_list<double> coeffs);
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial constant(double c) { return Polynomial(std::vector<double>{c}); }
  static Polynomial monomial(double c, int degree);

  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  double operator[](std::size_t i) const noexcept {
    return i < coeffs_.size() ? coeffs_[i] : 0.0;
  }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  double leading() const noexcept { return coeffs_.back(); }
  bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
  bool truncated() const noexcept { return truncated_; }
  double max_abs_coeff() const noexcept;

  /// Horner evaluation.
  Complex operator()(Complex z) const noexcept;
  double operator()(double x) const noexcept;

  Polynomial derivative() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const;

 private:
  void normalize();

  std::vector<double> coeffs_;
  bool truncated_ = false;
};

Polynomial add(const Polynomial& p, const Polynomial& q);
Polynomial sub(const Polynomial& p, const Polynomial& q);
Polynomial scale(double c, const Polynomial& p);
Polynomial mul(const Polynomial& p, const Polynomial& q);
Complex eval(const Polynomial& p, Complex z) noexcept;

inline Polynomial operator+(const Polynomial& p, const Polynomial& q) { return add(p, q); }
inline Polynomial operator-(const Polynomial& p, const Polynomial& q) { return sub(p, q); }
inline Polynomial operator*(const Polynomial& p, const Polynomial& q) { return mul(p, q); }
inline Polynomial operator*(double c, const Polynomial& p) { return scale(c, p); }

/// lambda * p1 + (1 - lambda) * p0
Polynomial lerp(const Polynomial& p0, const Polynomial& p1, double lambda);

/// All complex roots with multiplicity (companion eigenvalues, then one Newton
/// correction per root when it lowers the residual). Degree-0 input has no roots.
/// Throws ZeroPolynomial for the zero polynomial.
std::vector<Complex> roots(const Polynomial& p);

/// |p(z)| divided by sum_i |c_i| |z|^i; the scale-free residual used to judge roots.
double scaled_residual(const Polynomial& p, Complex z) noexcept;

/// 1 + max_{i<deg} |c_i| / |c_deg|. Throws ZeroLeadingCoefficient for the zero polynomial.
double cauchy_root_bound(const Polynomial& p);

}  // namespace edgestab

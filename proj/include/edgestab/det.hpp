#pragma once

#include <span>
#include <vector>

#include "edgestab/edges.hpp"
#include "edgestab/family.hpp"

namespace edgestab {

/// Determinant by Laplace expansion memoized over column subsets (O(2^n n) ring operations).
Polynomial det_matrix(const PolyMatrix& m);

/// D(s, lambda) = sum over subsets S of {0..k-1} of c_S(s) * prod_{j in S} lambda_j.
/// terms()[mask] is c_S for the subset encoded by mask.
class ParametricDeterminant {
 public:
  ParametricDeterminant() : k_(0), terms_{Polynomial()} { pack(); }
  ParametricDeterminant(int k, std::vector<Polynomial> terms);

  int k() const noexcept { return k_; }
  const std::vector<Polynomial>& terms() const noexcept { return terms_; }
  int degree() const noexcept { return powers_ - 1; }

  Polynomial at(std::span<const double> lambda) const;
  Complex evaluate(Complex s, std::span<const double> lambda) const;

  /// c_S(s) for every subset S, written to re/im (size 2^k).
  void evaluate_terms(Complex s, std::span<double> re, std::span<double> im) const;

  /// Coefficients by power: packed()[l * 2^k + mask].
  const std::vector<double>& packed() const noexcept { return packed_; }

 private:
  void pack();

  int k_;
  std::vector<Polynomial> terms_;
  std::vector<double> packed_;
  int powers_ = 1;
};

/// Expands each pattern cell as p0 + lambda_j (p1 - p0) and collects the 2^k subset terms.
ParametricDeterminant det_parametric(const EdgeConfiguration& cfg);

struct Interval {
  double lo;
  double hi;
};

/// Exact range of every coefficient of D over lambda in [0,1]^k, by scanning the 2^k
/// box vertices. Index l is the s^l coefficient.
std::vector<Interval> coefficient_box(const ParametricDeterminant& pd);

/// Values sum_{S subset of v} x_S for every v (subset-sum transform, in place).
void subset_sums(std::span<double> x);

}  // namespace edgestab

#include "edgestab/det.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>

#include "edgestab/error.hpp"
#include "edgestab/simd.hpp"

namespace edgestab {

Polynomial det_matrix(const PolyMatrix& m) {
  const int n = m.n;
  if (n <= 0) throw Error(ErrorCode::DimensionMismatch, "empty matrix");
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<Polynomial> minor(std::size_t{1} << n);
  minor[0] = Polynomial::constant(1.0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    // rows n - |mask| .. n-1 against the columns in mask
    const int row = n - std::popcount(mask);
    std::vector<double> acc{0.0};
    int position = 0;
    for (int c = 0; c < n; ++c) {
      if (!(mask & (std::uint32_t{1} << c))) continue;
      const Polynomial& a = m(row, c);
      const Polynomial& rest = minor[mask & ~(std::uint32_t{1} << c)];
      if (!a.is_zero() && !rest.is_zero()) {
        const Polynomial t = mul(a, rest);
        if (acc.size() < t.coeffs().size()) acc.resize(t.coeffs().size(), 0.0);
        const double sign = (position % 2 == 0) ? 1.0 : -1.0;
        for (std::size_t l = 0; l < t.coeffs().size(); ++l) acc[l] += sign * t.coeffs()[l];
      }
      ++position;
    }
    minor[mask] = Polynomial(std::move(acc));
  }
  return minor[full];
}

ParametricDeterminant::ParametricDeterminant(int k, std::vector<Polynomial> terms)
    : k_(k), terms_(std::move(terms)) {
  if (terms_.size() != (std::size_t{1} << k_))
    throw Error(ErrorCode::DimensionMismatch, "parametric determinant needs 2^k terms");
  pack();
}

void ParametricDeterminant::pack() {
  powers_ = 1;
  for (const auto& t : terms_) powers_ = std::max(powers_, t.degree() + 1);
  const std::size_t count = terms_.size();
  packed_.assign(static_cast<std::size_t>(powers_) * count, 0.0);
  for (std::size_t mask = 0; mask < count; ++mask)
    for (std::size_t l = 0; l < terms_[mask].coeffs().size(); ++l)
      packed_[l * count + mask] = terms_[mask].coeffs()[l];
}

namespace {

double weight(std::size_t mask, std::span<const double> lambda) {
  double w = 1.0;
  for (std::size_t j = 0; j < lambda.size(); ++j)
    if (mask & (std::size_t{1} << j)) w *= lambda[j];
  return w;
}

}  // namespace

Polynomial ParametricDeterminant::at(std::span<const double> lambda) const {
  if (lambda.size() != static_cast<std::size_t>(k_))
    throw Error(ErrorCode::DimensionMismatch, "lambda length differs from k");
  std::vector<double> acc(static_cast<std::size_t>(powers_), 0.0);
  for (std::size_t mask = 0; mask < terms_.size(); ++mask) {
    const double w = weight(mask, lambda);
    if (w == 0.0) continue;
    for (std::size_t l = 0; l < terms_[mask].coeffs().size(); ++l) acc[l] += w * terms_[mask].coeffs()[l];
  }
  return Polynomial(std::move(acc));
}

Complex ParametricDeterminant::evaluate(Complex s, std::span<const double> lambda) const {
  if (lambda.size() != static_cast<std::size_t>(k_))
    throw Error(ErrorCode::DimensionMismatch, "lambda length differs from k");
  Complex acc = 0.0;
  for (std::size_t mask = 0; mask < terms_.size(); ++mask) {
    const double w = weight(mask, lambda);
    if (w != 0.0) acc += w * terms_[mask](s);
  }
  return acc;
}

void ParametricDeterminant::evaluate_terms(Complex s, std::span<double> re, std::span<double> im) const {
  simd::horner_many(packed_, terms_.size(), s, re, im);
}

ParametricDeterminant det_parametric(const EdgeConfiguration& cfg) {
  const int n = cfg.n;
  const int k = cfg.k();
  std::vector<Polynomial> delta;
  for (int j : cfg.param_columns) {
    const auto& e = cfg.edges[static_cast<std::size_t>(j)];
    delta.push_back(sub(e.p1, e.p0));
  }
  std::vector<Polynomial> terms(std::size_t{1} << k);
  for (std::size_t mask = 0; mask < terms.size(); ++mask) {
    PolyMatrix m = cfg.cells;
    for (int p = 0; p < k; ++p) {
      if (!(mask & (std::size_t{1} << p))) continue;
      const int j = cfg.param_columns[static_cast<std::size_t>(p)];
      const int pattern_row = cfg.sigma[static_cast<std::size_t>(j)];
      for (int i = 0; i < n; ++i) m(i, j) = i == pattern_row ? delta[static_cast<std::size_t>(p)] : Polynomial();
    }
    terms[mask] = det_matrix(m);
  }
  return ParametricDeterminant(k, std::move(terms));
}

void subset_sums(std::span<double> x) {
  const std::size_t count = x.size();
  for (std::size_t bit = 1; bit < count; bit <<= 1)
    for (std::size_t mask = 0; mask < count; ++mask)
      if (mask & bit) x[mask] += x[mask ^ bit];
}

std::vector<Interval> coefficient_box(const ParametricDeterminant& pd) {
  const std::size_t count = pd.terms().size();
  const int powers = pd.degree() + 1;
  std::vector<Interval> box(static_cast<std::size_t>(powers));
  std::vector<double> row(count);
  for (int l = 0; l < powers; ++l) {
    std::copy_n(pd.packed().begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(l) * count), count, row.begin());
    subset_sums(row);
    const auto [lo, hi] = std::minmax_element(row.begin(), row.end());
    box[static_cast<std::size_t>(l)] = {*lo, *hi};
  }
  return box;
}

}  // namespace edgestab

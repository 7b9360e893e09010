#pragma once

// Independent reference computations and random generators shared by the unit tests and
// the acceptance runner. Nothing here calls into the determinant or stability engines.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "edgestab/family.hpp"
#include "edgestab/poly.hpp"
#include "edgestab/region.hpp"

namespace testsupport {

using edgestab::Complex;
using edgestab::Polynomial;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  int integer(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  std::uint64_t next() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

inline Polynomial random_poly(Rng& rng, int degree, double lo, double hi) {
  std::vector<double> c(static_cast<std::size_t>(degree + 1));
  for (auto& x : c) x = rng.uniform(lo, hi);
  return Polynomial(c);
}

// Monic-scaled product of factors with roots strictly in Re s < -min_decay.
inline Polynomial random_hurwitz(Rng& rng, int degree, double min_decay = 0.2) {
  Polynomial p{1.0};
  int d = 0;
  while (d < degree) {
    if (degree - d >= 2 && rng.uniform(0, 1) < 0.5) {
      const double a = rng.uniform(min_decay, 2.0);
      const double b = rng.uniform(0.0, 2.0);
      p = p * Polynomial{a * a + b * b, 2 * a, 1.0};
      d += 2;
    } else {
      p = p * Polynomial{rng.uniform(min_decay, 2.0), 1.0};
      d += 1;
    }
  }
  return edgestab::scale(rng.uniform(0.5, 2.0), p);
}

// Exact integer polynomial arithmetic for the determinant oracle.
using IntPoly = std::vector<std::int64_t>;

inline IntPoly int_trim(IntPoly p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
  if (p.empty()) p.push_back(0);
  return p;
}

inline IntPoly int_add(const IntPoly& a, const IntPoly& b, std::int64_t sign = 1) {
  IntPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += sign * b[i];
  return int_trim(r);
}

inline IntPoly int_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return int_trim(r);
}

// Cofactor expansion along the first row, recursively. O(n!) but exact.
inline IntPoly int_det(const std::vector<std::vector<IntPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  IntPoly acc{0};
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<IntPoly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<IntPoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    acc = int_add(acc, int_mul(m[0][c], int_det(minor)), c % 2 == 0 ? 1 : -1);
  }
  return acc;
}

inline Polynomial to_poly(const IntPoly& p) {
  return Polynomial(std::vector<double>(p.begin(), p.end()));
}

// Smallest signed root margin of p; -inf when p is identically zero, +inf for a nonzero constant.
inline double root_margin(const Polynomial& p, const edgestab::Region& r) {
  if (p.is_zero()) return -std::numeric_limits<double>::infinity();
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& z : edgestab::roots(p)) worst = std::min(worst, edgestab::contains(r, z).margin);
  return worst;
}

// Dense lambda-grid check of a segment: smallest root margin over `points` equally spaced members.
inline double segment_grid_margin(const Polynomial& p0, const Polynomial& p1, const edgestab::Region& r,
                                  int points = 1001) {
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < points; ++i) {
    const double lam = static_cast<double>(i) / (points - 1);
    worst = std::min(worst, root_margin(edgestab::lerp(p0, p1, lam), r));
  }
  return worst;
}

// Classical Kharitonov test on a 1x1 interval entry, from the four polynomials built here
// directly from the bounds (upper-bound pattern by index mod 4).
inline double kharitonov_margin(const std::vector<double>& lo, const std::vector<double>& hi) {
  static constexpr bool pattern[4][4] = {
      {false, false, true, true}, {false, true, true, false}, {true, false, false, true}, {true, true, false, false}};
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& row : pattern) {
    std::vector<double> c(lo.size());
    for (std::size_t l = 0; l < lo.size(); ++l) c[l] = row[l % 4] ? hi[l] : lo[l];
    worst = std::min(worst, root_margin(Polynomial(c), edgestab::Region::hurwitz()));
  }
  return worst;
}

inline edgestab::MatrixFamily polytope_family(int n, const std::vector<std::vector<Polynomial>>& cells,
                                              edgestab::Region r = edgestab::Region::hurwitz()) {
  edgestab::MatrixFamily fam;
  fam.n = n;
  fam.region = r;
  for (const auto& v : cells) fam.entries.emplace_back(edgestab::PolytopeEntry{v});
  return fam;
}

// Random n x n polytope family, m vertices per cell, coefficients in [lo, hi].
inline edgestab::MatrixFamily random_polytope_family(Rng& rng, int n, int m, int degree, double lo, double hi) {
  std::vector<std::vector<Polynomial>> cells;
  for (int c = 0; c < n * n; ++c) {
    std::vector<Polynomial> v;
    for (int i = 0; i < m; ++i) v.push_back(random_poly(rng, rng.integer(0, degree), lo, hi));
    cells.push_back(std::move(v));
  }
  return polytope_family(n, cells);
}

// Family biased towards stability: diagonal cells of exactly `degree` with coefficients in
// [1, 5], off-diagonal cells of lower degree in [-spread, spread], so every member's
// determinant has degree n * degree. All coefficients stay in [-5, 5] for spread <= 5.
inline edgestab::MatrixFamily random_dominant_family(Rng& rng, int n, int m, int degree, double spread) {
  std::vector<std::vector<Polynomial>> cells;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      std::vector<Polynomial> v;
      for (int i = 0; i < m; ++i) {
        if (r == c) {
          std::vector<double> co(static_cast<std::size_t>(degree + 1));
          for (auto& x : co) x = rng.uniform(1.0, 5.0);
          v.push_back(Polynomial(co));
        } else {
          v.push_back(random_poly(rng, rng.integer(0, degree - 1), -spread, spread));
        }
      }
      cells.push_back(std::move(v));
    }
  return polytope_family(n, cells);
}

inline double rel_diff(const Polynomial& a, const Polynomial& b) {
  const double s = std::max({1.0, a.max_abs_coeff(), b.max_abs_coeff()});
  double d = 0.0;
  const std::size_t len = std::max(a.coeffs().size(), b.coeffs().size());
  for (std::size_t i = 0; i < len; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d / s;
}

}  // namespace testsupport

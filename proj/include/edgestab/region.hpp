#pragma once

#include <string>

#include "edgestab/poly.hpp"

namespace edgestab {

class ParametricDeterminant;

/// Open stability region: Hurwitz half-plane Re s < 0, shifted half-plane Re s < sigma,
/// or the open disk |s - center| < radius.
struct Region {
  enum class Kind { HurwitzHalfPlane, ShiftedHalfPlane, Disk };

  Kind kind = Kind::HurwitzHalfPlane;
  double sigma = 0.0;
  Complex center{0.0, 0.0};
  double radius = 1.0;

  static Region hurwitz() { return {}; }
  static Region shifted(double sigma) { return {Kind::ShiftedHalfPlane, sigma, {}, 1.0}; }
  static Region disk(Complex center, double radius);

  bool is_half_plane() const noexcept { return kind != Kind::Disk; }
  std::string describe() const;

  friend bool operator==(const Region&, const Region&) = default;
};

struct Containment {
  bool inside;
  double margin;  // signed distance to the boundary, negative outside
};

Containment contains(const Region& r, Complex z) noexcept;

struct BoundaryPoint {
  double theta;
  Complex s;
  Complex ds;  // derivative of s with respect to theta
};

/// Half-planes: s = sigma + i*theta. Disk: s = center + radius * exp(i*theta).
BoundaryPoint boundary(const Region& r, double theta) noexcept;

struct SweepRange {
  double lo;
  double hi;
};

/// Boundary parameter interval that must be swept for every member of the family
/// {D(s, lambda) : lambda in [0,1]^k}. Throws DegreeDrop when the leading-coefficient
/// range comes within degree_eps (relative) of zero.
SweepRange sweep_range(const Region& r, const ParametricDeterminant& pd, double degree_eps = 1e-9);

/// Same as above for a single polynomial (k = 0).
SweepRange sweep_range(const Region& r, const Polynomial& p);

}  // namespace edgestab

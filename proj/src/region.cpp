#include "edgestab/region.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "edgestab/det.hpp"
#include "edgestab/error.hpp"

namespace edgestab {

Region Region::disk(Complex center, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::ValidationFailure, "disk radius must be positive");
  return {Kind::Disk, 0.0, center, radius};
}

std::string Region::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::HurwitzHalfPlane: os << "hurwitz"; break;
    case Kind::ShiftedHalfPlane: os << "shifted(" << sigma << ")"; break;
    case Kind::Disk: os << "disk(" << center.real() << "," << center.imag() << ";" << radius << ")"; break;
  }
  return os.str();
}

Containment contains(const Region& r, Complex z) noexcept {
  double margin = 0.0;
  switch (r.kind) {
    case Region::Kind::HurwitzHalfPlane: margin = -z.real(); break;
    case Region::Kind::ShiftedHalfPlane: margin = r.sigma - z.real(); break;
    case Region::Kind::Disk: margin = r.radius - std::abs(z - r.center); break;
  }
  return {margin > 0.0, margin};
}

BoundaryPoint boundary(const Region& r, double theta) noexcept {
  switch (r.kind) {
    case Region::Kind::HurwitzHalfPlane: return {theta, Complex(0.0, theta), Complex(0.0, 1.0)};
    case Region::Kind::ShiftedHalfPlane: return {theta, Complex(r.sigma, theta), Complex(0.0, 1.0)};
    case Region::Kind::Disk: {
      const Complex e = std::polar(1.0, theta);
      return {theta, r.center + r.radius * e, Complex(0.0, r.radius) * e};
    }
  }
  return {theta, Complex(0.0, theta), Complex(0.0, 1.0)};
}

SweepRange sweep_range(const Region& r, const ParametricDeterminant& pd, double degree_eps) {
  const auto box = coefficient_box(pd);
  double cmax = 0.0;
  for (const auto& iv : box) cmax = std::max({cmax, std::abs(iv.lo), std::abs(iv.hi)});
  if (cmax == 0.0) throw Error(ErrorCode::DegreeDrop, "determinant vanishes identically");
  const auto& lead = box.back();
  const double floor = degree_eps * cmax;
  if (lead.lo <= floor && lead.hi >= -floor)
    throw Error(ErrorCode::DegreeDrop, "leading-coefficient range [" + std::to_string(lead.lo) +
                                           ", " + std::to_string(lead.hi) + "] reaches zero");
  if (r.kind == Region::Kind::Disk) return {0.0, 2.0 * std::numbers::pi};
  const double lead_min = std::min(std::abs(lead.lo), std::abs(lead.hi));
  double num = 0.0;
  for (std::size_t i = 0; i + 1 < box.size(); ++i)
    num = std::max({num, std::abs(box[i].lo), std::abs(box[i].hi)});
  return {0.0, 1.0 + num / lead_min};
}

SweepRange sweep_range(const Region& r, const Polynomial& p) {
  if (r.kind == Region::Kind::Disk) return {0.0, 2.0 * std::numbers::pi};
  return {0.0, cauchy_root_bound(p)};
}

}  // namespace edgestab

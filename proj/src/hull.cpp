#include "edgestab/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace edgestab {

namespace {

double cross(Complex o, Complex a, Complex b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

}  // namespace

double origin_segment_distance(Complex a, Complex b) noexcept {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(a);
  double t = -(a.real() * d.real() + a.imag() * d.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(a + t * d);
}

std::vector<Complex> convex_hull(std::span<const Complex> points) {
  std::vector<Complex> p(points.begin(), points.end());
  std::sort(p.begin(), p.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return p;

  std::vector<Complex> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return h;
}

double origin_hull_distance(std::span<const Complex> points) {
  if (points.empty()) return std::numeric_limits<double>::infinity();
  const std::vector<Complex> h = convex_hull(points);
  if (h.size() == 1) return std::abs(h[0]);
  if (h.size() == 2) return origin_segment_distance(h[0], h[1]);

  bool inside = true;
  double dmin = std::numeric_limits<double>::infinity();
  const Complex origin(0.0, 0.0);
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Complex a = h[i];
    const Complex b = h[(i + 1) % h.size()];
    if (cross(a, b, origin) < 0) inside = false;
    dmin = std::min(dmin, origin_segment_distance(a, b));
  }
  return inside ? -dmin : dmin;
}

}  // namespace edgestab

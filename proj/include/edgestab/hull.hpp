#pragma once

#include <span>
#include <vector>

#include "edgestab/poly.hpp"

namespace edgestab {

/// Convex hull of points in the complex plane, counter-clockwise, collinear points dropped.
/// Fewer than three returned vertices means the hull is a point or a segment.
std::vector<Complex> convex_hull(std::span<const Complex> points);

/// Signed distance from the origin to conv(points): positive when the origin lies outside
/// the hull, zero on its boundary, negative (minus the distance to the boundary) inside.
double origin_hull_distance(std::span<const Complex> points);

/// Distance from the origin to the segment [a, b].
double origin_segment_distance(Complex a, Complex b) noexcept;

}  // namespace edgestab

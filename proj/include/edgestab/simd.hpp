#pragma once

// Batched complex Horner kernels. Each kernel has a scalar reference version and,
// on x86-64, an AVX2+FMA version; the dispatcher picks one at runtime.

#include <cstddef>
#include <span>
#include <string_view>

#include "edgestab/poly.hpp"

namespace edgestab::simd {

enum class Level { Scalar, Avx2 };

std::string_view to_string(Level level);
bool supported(Level level);
Level active_level();
// Pins the dispatcher to a level (tests, benchmarking). Unsupported levels fall back to Scalar.
void force_level(Level level);
void reset_level();

// Evaluate `count` polynomials at one point. Coefficients are stored by power:
// coeffs[l * count + i] is the s^l coefficient of polynomial i, l in [0, powers).
void horner_many(std::span<const double> coeffs, std::size_t count, Complex s,
                 std::span<double> out_re, std::span<double> out_im);

// Evaluate one polynomial (ascending coefficients) at many points.
void horner_points(std::span<const double> coeffs, std::span<const double> z_re,
                   std::span<const double> z_im, std::span<double> out_re,
                   std::span<double> out_im);

namespace scalar {
void horner_many(std::span<const double> coeffs, std::size_t count, Complex s,
                 std::span<double> out_re, std::span<double> out_im);
void horner_points(std::span<const double> coeffs, std::span<const double> z_re,
                   std::span<const double> z_im, std::span<double> out_re,
                   std::span<double> out_im);
}  // namespace scalar

namespace avx2 {
void horner_many(std::span<const double> coeffs, std::size_t count, Complex s,
                 std::span<double> out_re, std::span<double> out_im);
void horner_points(std::span<const double> coeffs, std::span<const double> z_re,
                   std::span<const double> z_im, std::span<double> out_re,
                   std::span<double> out_im);
}  // namespace avx2

}  // namespace edgestab::simd
